//! Seeded randomized property suites. Each returns the number of cases it
//! checked, or a description of the first failure.
#![allow(dead_code)]

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use repring::banach::{check_mult_bound, max_or_empty, inner, norm_l1, norm_l2_sq, norm_max, sup_norm_estimate};
use repring::cyclo::Cyclotomic;
use repring::gamma::{core_dim_sequence, endotrivial_test, gamma_pf, Endotriviality};
use repring::homs::{cyclic_ring, psi, s_hat};
use repring::ideals::{core, ideal_closure, x_max, x_proj, Closure, RepIdeal};
use repring::species::SpeciesTable;
use repring::{BasisId, Element, RingSpec};

use super::finite_rings;

pub const CASES: usize = 500;
pub const SEED: u64 = 0x5eed;

/// A finite ring with its two standard ideals and cached species.
pub struct Fixture {
    pub ring: RingSpec,
    pub ids: Vec<BasisId>,
    /// The smaller of the two ideals used: the empty ideal for ordinary
    /// rings, the projectives otherwise.
    pub small: RepIdeal,
    /// The larger one: the projectives for ordinary rings, the maximal
    /// ideal otherwise.
    pub large: RepIdeal,
    /// The maximal ideal, or the empty one for ordinary rings.
    pub max: RepIdeal,
    pub species: SpeciesTable,
}

pub fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        finite_rings()
            .into_iter()
            .map(|ring| {
                let max = max_or_empty(&ring).unwrap();
                let (small, large) = match x_max(&ring) {
                    Ok(m) => (x_proj(&ring), m),
                    Err(_) => (RepIdeal::empty(&ring), x_proj(&ring)),
                };
                Fixture {
                    ids: ring.basis_ids().unwrap(),
                    small,
                    large,
                    max,
                    species: SpeciesTable::new(&ring).unwrap(),
                    ring,
                }
            })
            .collect()
    })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A non-negative element with one to three terms and coefficients 1..=2.
fn nonneg(r: &mut ChaCha8Rng, ids: &[BasisId]) -> Element {
    let mut x = Element::zero();
    for _ in 0..r.gen_range(1..=3) {
        x.add_term(ids[r.gen_range(0..ids.len())], BigInt::from(r.gen_range(1..=2)));
    }
    x
}

/// A signed element with up to four terms and coefficients in -3..=3.
fn signed(r: &mut ChaCha8Rng, ids: &[BasisId]) -> Element {
    let mut x = Element::zero();
    for _ in 0..r.gen_range(1..=4) {
        x.add_term(ids[r.gen_range(0..ids.len())], BigInt::from(r.gen_range(-3..=3)));
    }
    x
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-8 * a.abs().max(b.abs()).max(1.0)
}

fn le(a: f64, b: f64) -> bool {
    a <= b + 1e-8 * a.abs().max(b.abs()).max(1.0)
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn gamma(f: &Fixture, x: &Element, ideal: &RepIdeal) -> f64 {
    if core(x, ideal).is_zero() {
        return 0.0;
    }
    f.species.gamma(x, ideal).map_or(0.0, |g| g.value)
}

fn dim(f: &Fixture, x: &Element) -> f64 {
    num_traits::ToPrimitive::to_f64(&f.ring.dim(x).unwrap()).unwrap()
}

/// The twelve listed properties of the gamma invariant, on the projective
/// and maximal ideals of every finite built-in ring.
pub fn gamma_properties(cases: usize, seed: u64) -> Result<usize, String> {
    let fx = fixtures();
    let mut r = rng(seed);
    let sqrt2 = 2f64.sqrt();
    for case in 0..cases {
        let f = &fx[case % fx.len()];
        let ring = &f.ring;
        let use_large = r.gen_bool(0.5);
        let ideal = if use_large { &f.large } else { &f.small };
        let x = nonneg(&mut r, &f.ids);
        let y = nonneg(&mut r, &f.ids);
        let ctx = format!("case {case} in {} mod {}: x = {}, y = {}", ring.name(), ideal.name(), ring.format_int(&x), ring.format_int(&y));
        let gx = gamma(f, &x, ideal);
        let gy = gamma(f, &y, ideal);

        // (i) running minimum of c_n^(1/n) is non-increasing and bounded below by gamma
        let c = core_dim_sequence(ring, &x, ideal, 16).map_err(|e| format!("{ctx}: {e}"))?;
        let mut best = f64::INFINITY;
        for (n, v) in c.iter().enumerate().skip(1) {
            let root = num_traits::ToPrimitive::to_f64(v).unwrap().powf(1.0 / n as f64);
            best = best.min(root);
            ensure!(le(gx, best), "{ctx}: (i) gamma {gx} above c_{n}^(1/{n}) = {root}");
        }
        // (ii)
        ensure!(gx >= 0.0 && le(gx, dim(f, &x)), "{ctx}: (ii) gamma {gx} outside [0, dim]");
        // (iii) at finite N, both directions
        let mut power = ring.one::<BigInt>();
        let mut core_full = true;
        for _ in 0..8 {
            power = ring.multiply(&power, &x).unwrap();
            core_full &= core(&power, ideal) == power;
        }
        ensure!(close(gx, dim(f, &x)) == core_full, "{ctx}: (iii) gamma {gx} = dim is {} but core(x^n) = x^n is {core_full}", close(gx, dim(f, &x)));
        // (iv)
        let in_ideal = core(&x, ideal).is_zero();
        ensure!((gx == 0.0) == in_ideal, "{ctx}: (iv) gamma {gx} vs membership {in_ideal}");
        ensure!(in_ideal || le(1.0, gx), "{ctx}: (iv) gamma {gx} < 1");
        // (v), (vi)
        let endo = endotrivial_test(ring, &x, ideal).map_err(|e| format!("{ctx}: {e}"))?;
        if gx >= 1.0 - 1e-9 && gx < sqrt2 - 1e-9 {
            ensure!(endo == Endotriviality::Endotrivial, "{ctx}: (v) gamma {gx} < sqrt 2 but {endo:?}");
        }
        if endo == Endotriviality::GammaGeSqrt2 {
            ensure!(le(sqrt2, gx), "{ctx}: (v) not endotrivial but gamma {gx} < sqrt 2");
            if close(gx, sqrt2) {
                let xxs = ring.multiply(&ring.multiply(&x, &ring.star(&x).unwrap()).unwrap(), &x).unwrap();
                let diff = xxs.sub(&x.scale(&BigInt::from(2)));
                ensure!(core(&diff, ideal).is_zero(), "{ctx}: (vi) x x* x != 2x");
            }
        }
        // (vii)
        let gs = gamma(f, &ring.star(&x).unwrap(), ideal);
        ensure!(close(gs, gx), "{ctx}: (vii) gamma(x*) = {gs} vs {gx}");
        // (viii)
        let gsum = gamma(f, &x.add(&y), ideal);
        ensure!(le(gx.max(gy), gsum) && le(gsum, gx + gy), "{ctx}: (viii) {gx}, {gy}, {gsum}");
        // (ix)
        let (a, b) = (r.gen_range(0..=3i64), r.gen_range(0..=3i64));
        let affine = ring.one::<BigInt>().scale(&BigInt::from(a)).add(&x.scale(&BigInt::from(b)));
        let ga = gamma(f, &affine, ideal);
        ensure!(close(ga, a as f64 + b as f64 * gx), "{ctx}: (ix) gamma({a}+{b}x) = {ga}, gamma(x) = {gx}");
        // (x)
        let gp = gamma(f, &ring.multiply(&x, &y).unwrap(), ideal);
        ensure!(le(gp, gx * gy), "{ctx}: (x) gamma(xy) = {gp} > {gx} * {gy}");
        // (xi)
        for m in 1..=3u32 {
            let gm = gamma(f, &ring.pow(&x, m).unwrap(), ideal);
            ensure!(close(gm, gx.powi(m as i32)), "{ctx}: (xi) gamma(x^{m}) = {gm} vs {gx}^{m}");
        }
        // (xii)
        let (gs, gl) = (gamma(f, &x, &f.small), gamma(f, &x, &f.large));
        ensure!(le(gl, gs), "{ctx}: (xii) gamma mod {} = {gl} > gamma mod {} = {gs}", f.large.name(), f.small.name());
        // the Perron-Frobenius computation agrees with the species formula
        if case % 7 == 0 && !core(&x, &f.max).is_zero() {
            let gx = gamma(f, &x, &f.max);
            let pf = gamma_pf(ring, &x).map_err(|e| format!("{ctx}: pf {e}"))?;
            ensure!(close(pf.value, gx), "{ctx}: PF {} vs species {gx}", pf.value);
        }
    }
    Ok(cases)
}

/// Core projections, ideal sandwiching and the absence of positive
/// nilpotents modulo an ideal.
pub fn core_ideal_properties(cases: usize, seed: u64) -> Result<usize, String> {
    let fx = fixtures();
    let mut r = rng(seed);
    for case in 0..cases {
        let f = &fx[case % fx.len()];
        let ring = &f.ring;
        let ideal = if r.gen_bool(0.5) { &f.large } else { &f.small };
        let x = nonneg(&mut r, &f.ids);
        let y = nonneg(&mut r, &f.ids);
        let ctx = format!("case {case} in {}: x = {}, y = {}", ring.name(), ring.format_int(&x), ring.format_int(&y));
        let xy = ring.multiply(&x, &y).unwrap();
        let cc = ring.multiply(&core(&x, ideal), &core(&y, ideal)).unwrap();
        ensure!(core(&xy, ideal) == core(&cc, ideal), "{ctx}: core(xy) != core(core x core y)");
        let gap = cc.sub(&core(&xy, ideal));
        ensure!(gap.is_non_negative(), "{ctx}: core(xy) not below core(x) core(y)");
        ensure!(
            ring.star(&core(&x, ideal)).unwrap() == core(&ring.star(&x).unwrap(), ideal),
            "{ctx}: core does not commute with star"
        );
        if !core(&x, ideal).is_zero() {
            let mut power = ring.one::<BigInt>();
            for n in 1..=8 {
                power = core(&ring.multiply(&power, &x).unwrap(), ideal);
                ensure!(!power.is_zero(), "{ctx}: core(x^{n}) = 0");
            }
        }
        if !f.large.is_empty() && f.large.member_list().unwrap() != f.small.member_list().unwrap() {
            let (small, large) = (&f.small, &f.large);
            let members = large.member_list().unwrap();
            let gens: Vec<BasisId> = (0..r.gen_range(1..=2)).map(|_| members[r.gen_range(0..members.len())]).collect();
            let Closure::Ideal(closed) = ideal_closure(&gens, ring).map_err(|e| format!("{ctx}: {e}"))? else {
                return Err(format!("{ctx}: closure of {gens:?} is the whole ring"));
            };
            if !small.is_empty() {
                ensure!(small.is_subset_of(&closed).unwrap(), "{ctx}: {} not inside the closure of {gens:?}", small.name());
            }
            ensure!(closed.is_subset_of(large).unwrap(), "{ctx}: closure of {gens:?} not inside {}", large.name());
        }
    }
    Ok(cases)
}

fn rational(x: &Element, num: i64, den: i64) -> Element<BigRational> {
    let c = BigRational::new(BigInt::from(num), BigInt::from(den));
    x.to_scalars::<BigRational>().scale(&c)
}

/// Norm axioms, the trace inner product and the bounds relating the norms.
pub fn norm_properties(cases: usize, seed: u64) -> Result<usize, String> {
    let fx = fixtures();
    let mut r = rng(seed);
    for case in 0..cases {
        let f = &fx[case % fx.len()];
        let ring = &f.ring;
        let x = signed(&mut r, &f.ids);
        let y = signed(&mut r, &f.ids);
        let z = signed(&mut r, &f.ids);
        let ctx = format!("case {case} in {}: x = {}, y = {}", ring.name(), ring.format_int(&x), ring.format_int(&y));
        let n = |e: &Element| norm_l1(ring, e).unwrap();
        ensure!(n(&x.add(&y)) <= n(&x) + n(&y), "{ctx}: subadditivity");
        ensure!(n(&ring.multiply(&x, &y).unwrap()) <= n(&x) * n(&y), "{ctx}: submultiplicativity");
        ensure!(n(&ring.one()) == BigInt::one(), "{ctx}: norm of the identity");
        let (num, den) = (r.gen_range(-5..=5i64), r.gen_range(1..=4i64));
        let scaled = norm_l1(ring, &rational(&x, num, den)).unwrap();
        let expected = BigRational::new(BigInt::from(num), BigInt::from(den)).abs() * BigRational::from_integer(n(&x));
        ensure!(scaled == expected, "{ctx}: homogeneity for {num}/{den}");

        // ⟨xy, z⟩ = ⟨y, x* z⟩
        let lhs = inner(ring, &ring.multiply(&x, &y).unwrap(), &z).unwrap();
        let rhs = inner(ring, &y, &ring.multiply(&ring.star(&x).unwrap(), &z).unwrap()).unwrap();
        ensure!(lhs == rhs, "{ctx}: <xy,z> = {lhs} but <y,x*z> = {rhs}");

        // The weighted l2 norm lives on the complement of the maximal ideal.
        let outside = |e: &Element| core(e, &f.max);
        let (u, v) = (outside(&x), outside(&y));
        let l2 = |e: &Element| norm_l2_sq(ring, e).unwrap();
        let two = BigInt::from(2);
        ensure!(
            l2(&u.add(&v)) + l2(&u.sub(&v)) == &two * l2(&u) + &two * l2(&v),
            "{ctx}: parallelogram identity"
        );
        let nmax = num_traits::ToPrimitive::to_f64(&norm_max(ring, &x).unwrap()).unwrap();
        let abs_u = num_traits::ToPrimitive::to_f64(&l2(&u)).unwrap().sqrt();
        ensure!(abs_u <= nmax + 1e-12, "{ctx}: |x| = {abs_u} > ||x||_max = {nmax}");
        let bound = check_mult_bound(ring, &x, &v).map_err(|e| format!("{ctx}: {e}"))?;
        ensure!(bound.pass, "{ctx}: |xy| = {} > ||x||_max |y| = {}", bound.lhs, bound.rhs);
        if case % 5 == 0 {
            let sup = sup_norm_estimate(ring, &x, &f.max, 500, 0).map_err(|e| format!("{ctx}: {e}"))?;
            ensure!(sup.value <= nmax + 1e-9, "{ctx}: sup estimate {} > ||x||_max {nmax}", sup.value);
            // Each species vanishing on the ideal is an eigenvector of the
            // transposed multiplication operator, so it bounds the norm below.
            let lower = f.species.species.iter().filter(|s| s.vanishes_on(&f.max)).map(|s| s.eval(&x).norm()).fold(0.0, f64::max);
            ensure!(sup.value >= lower - 1e-6 * lower.max(1.0), "{ctx}: sup estimate {} < species value {lower}", sup.value);
        }
    }
    Ok(cases)
}

/// Adams operations on `a(Z/p)`: norm bound, multiplicativity, composition
/// and preservation of dimension.
pub fn psi_properties(cases: usize, seed: u64) -> Result<usize, String> {
    let rings: Vec<RingSpec> = [3u64, 5, 7].iter().map(|&p| cyclic_ring(p, 1).unwrap()).collect();
    let mut r = rng(seed);
    for case in 0..cases {
        let ring = &rings[case % rings.len()];
        let ids = ring.basis_ids().unwrap();
        let p = ids.len() as u64;
        let x = signed(&mut r, &ids);
        let y = signed(&mut r, &ids);
        let m = r.gen_range(1..=6u64);
        let k = r.gen_range(1..=p - 1);
        let ctx = format!("case {case} in {}: psi^{m}, x = {}", ring.name(), ring.format_int(&x));
        let px = psi(ring, m, &x).map_err(|e| format!("{ctx}: {e}"))?;
        let n = |e: &Element| norm_l1(ring, e).unwrap();
        ensure!(n(&px) <= num_traits::pow(n(&x), m as usize), "{ctx}: ||psi x|| > ||x||^{m}");
        ensure!(ring.dim(&px).unwrap() == ring.dim(&x).unwrap(), "{ctx}: dimension changed");
        let lhs = psi(ring, m, &ring.multiply(&x, &y).unwrap()).unwrap();
        let rhs = ring.multiply(&px, &psi(ring, m, &y).unwrap()).unwrap();
        ensure!(lhs == rhs, "{ctx}: psi is not multiplicative");
        let j2 = Element::basis(BasisId(1));
        let composed = psi(ring, m, &psi(ring, k, &j2).unwrap()).unwrap();
        ensure!(composed == psi(ring, m * k, &j2).unwrap(), "{ctx}: psi^{m} psi^{k} != psi^{}", m * k);
    }
    Ok(cases)
}

/// `s_hat_l(xy) = s_hat_l(x) s_hat_l(y)` on random elements of `a(Z/4)`,
/// `a(Z/8)` and `a(Z/9)`, exactly.
pub fn s_hat_properties(cases: usize, seed: u64) -> Result<usize, String> {
    let setups: Vec<(u64, u32, RingSpec, RingSpec)> = [(2u64, 1u32), (2, 2), (3, 1)]
        .iter()
        .map(|&(p, n)| (p, n, cyclic_ring(p, n + 1).unwrap(), cyclic_ring(p, n).unwrap()))
        .collect();
    let mut r = rng(seed);
    for case in 0..cases {
        let (p, n, big, small) = &setups[case % setups.len()];
        let ids = big.basis_ids().unwrap();
        let x = signed(&mut r, &ids);
        let y = signed(&mut r, &ids);
        let ell = r.gen_range(0..*p);
        let ctx = format!("case {case} in {}: ell = {ell}, x = {}, y = {}", big.name(), big.format_int(&x), big.format_int(&y));
        let lhs = s_hat(*p, *n, ell, &big.multiply(&x, &y).unwrap()).map_err(|e| format!("{ctx}: {e}"))?;
        let sx: Element<Cyclotomic> = s_hat(*p, *n, ell, &x).unwrap();
        let sy = s_hat(*p, *n, ell, &y).unwrap();
        let rhs = small.multiply(&sx, &sy).unwrap();
        ensure!(lhs == rhs, "{ctx}: s_hat(xy) = {lhs:?} but s_hat(x) s_hat(y) = {rhs:?}");
        let one = s_hat(*p, *n, ell, &big.one::<BigInt>()).unwrap();
        ensure!(one == small.one::<Cyclotomic>(), "{ctx}: s_hat(1) != 1");
    }
    Ok(cases)
}

/// Every suite with its name, for the acceptance runner.
pub fn all_suites() -> Vec<(&'static str, fn(usize, u64) -> Result<usize, String>)> {
    vec![
        ("gamma", gamma_properties),
        ("core and ideals", core_ideal_properties),
        ("norms", norm_properties),
        ("psi", psi_properties),
        ("s_hat", s_hat_properties),
    ]
}
