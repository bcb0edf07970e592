//! The gamma invariant: exact core-dimension sequences with Fekete bounds,
//! Perron-Frobenius on algebraic subrings, and the endotrivial trichotomy.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::element::{BasisId, Element};
use crate::error::{Result, RingError};
use crate::ideals::{core, x_max, RepIdeal};
use crate::ring::RingSpec;
use crate::scalar::ln_bigint;
use crate::species;

/// Largest support a power may reach before the sequence gives up.
pub const SUPPORT_CAP: usize = 100_000;

/// Default saturation budget for [`is_algebraic`].
pub const ALGEBRAIC_BUDGET: usize = 4096;

const PF_MAX_ITERS: usize = 100_000;
const PF_TOL: f64 = 1e-12;
const PF_RESIDUAL: f64 = 1e-9;

/// Rank up to which a Perron-Frobenius value is cross-checked by species.
const CROSS_CHECK_RANK: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaMethod {
    PerronFrobenius,
    Species,
    ClosedForm,
}

impl fmt::Display for GammaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GammaMethod::PerronFrobenius => "perron_frobenius",
            GammaMethod::Species => "species",
            GammaMethod::ClosedForm => "closed_form",
        })
    }
}

/// A value produced by an exact method rather than a finite sequence.
#[derive(Clone, Debug)]
pub struct Certified {
    pub value: f64,
    pub method: GammaMethod,
    pub descriptor: String,
}

#[derive(Clone, Debug)]
pub struct GammaReport {
    pub element: String,
    pub ideal: String,
    /// `c_0, ..., c_N`.
    pub c: Vec<BigInt>,
    /// Running minimum of `c_n^(1/n)` for `n = 1..N`.
    pub running_min: Vec<f64>,
    pub upper: f64,
    /// Ratio estimate `(c_N / c_{N/2})^(2/N)`, not a proven bound.
    pub heuristic_lower: Option<f64>,
    pub certified: Option<Certified>,
    pub method_log: Vec<String>,
}

impl GammaReport {
    /// The certified value if present, otherwise the Fekete upper bound.
    pub fn best(&self) -> f64 {
        self.certified.as_ref().map_or(self.upper, |c| c.value)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "element": self.element,
            "ideal": self.ideal,
            "c": self.c.iter().map(big_to_json).collect::<Vec<_>>(),
            "upper": self.upper,
            "lower": self.heuristic_lower,
            "lower_kind": "heuristic",
            "certified": self.certified.as_ref().map(|c| json!({
                "value": c.value,
                "method": c.method.to_string(),
                "descriptor": c.descriptor,
            })),
            "method_log": self.method_log,
        })
    }
}

/// Integers that fit are JSON numbers; larger ones are decimal strings.
pub fn big_to_json(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(n) => json!(n),
        Err(_) => json!(v.to_string()),
    }
}

fn require_non_negative(x: &Element) -> Result<()> {
    if x.is_non_negative() {
        Ok(())
    } else {
        Err(RingError::BadParams("gamma needs a non-negative element".into()))
    }
}

/// `core(x^0), ..., core(x^N)`, computing `x^(n+1)` as `core(core(x^n) x)`.
pub fn core_power_sequence(ring: &RingSpec, x: &Element, ideal: &RepIdeal, n: usize) -> Result<Vec<Element>> {
    ring.check(x)?;
    let x = core(x, ideal);
    let mut out = Vec::with_capacity(n + 1);
    let mut power = core(&ring.one(), ideal);
    out.push(power.clone());
    for _ in 0..n {
        power = core(&ring.multiply(&power, &x)?, ideal);
        if power.len() > SUPPORT_CAP {
            return Err(RingError::BudgetExceeded(SUPPORT_CAP));
        }
        out.push(power.clone());
    }
    Ok(out)
}

/// `c_n = dim core(x^n)` for `n = 0..=N`.
pub fn core_dim_sequence(ring: &RingSpec, x: &Element, ideal: &RepIdeal, n: usize) -> Result<Vec<BigInt>> {
    require_non_negative(x)?;
    core_power_sequence(ring, x, ideal, n)?.iter().map(|p| ring.dim(p)).collect()
}

fn nth_root(c: &BigInt, n: usize) -> f64 {
    if c.is_zero() {
        0.0
    } else {
        (ln_bigint(c) / n as f64).exp()
    }
}

/// Fekete bounds from the sequence, plus a certified value when one of the
/// exact methods applies.
pub fn gamma_estimate(ring: &RingSpec, x: &Element, ideal: &RepIdeal, n: usize) -> Result<GammaReport> {
    let c = core_dim_sequence(ring, x, ideal, n)?;
    let mut report = fekete(ring, x, ideal, c);
    if core(x, ideal).is_zero() {
        report.certified = Some(Certified {
            value: 0.0,
            method: GammaMethod::ClosedForm,
            descriptor: "x lies in the ideal".into(),
        });
        report.method_log.push("closed_form: core(x) = 0".into());
        return Ok(report);
    }
    match certify(ring, x, ideal) {
        Ok(cert) => {
            report.method_log.push(format!("{}: {}", cert.method, cert.descriptor));
            report.certified = Some(cert);
        }
        Err(e) => report.method_log.push(format!("no certified value: {e}")),
    }
    Ok(report)
}

fn fekete(ring: &RingSpec, x: &Element, ideal: &RepIdeal, c: Vec<BigInt>) -> GammaReport {
    let mut running_min = Vec::with_capacity(c.len().saturating_sub(1));
    let mut best = f64::INFINITY;
    for (k, v) in c.iter().enumerate().skip(1) {
        best = best.min(nth_root(v, k));
        running_min.push(best);
    }
    let n = c.len() - 1;
    let heuristic_lower = (n >= 2).then(|| {
        let h = n / 2;
        let (top, mid) = (&c[n], &c[h]);
        if top.is_zero() || mid.is_zero() {
            0.0
        } else {
            ((ln_bigint(top) - ln_bigint(mid)) / (n - h) as f64).exp()
        }
    });
    GammaReport {
        element: ring.format_int(x),
        ideal: ideal.name().to_string(),
        c,
        upper: if n == 0 { f64::INFINITY } else { best },
        running_min,
        heuristic_lower,
        certified: None,
        method_log: vec![format!("sequence: c_0..c_{n} by exact multiplication")],
    }
}

/// Tries Perron-Frobenius (for the maximal ideal), then species.
pub fn certify(ring: &RingSpec, x: &Element, ideal: &RepIdeal) -> Result<Certified> {
    if x.is_zero() {
        return Ok(Certified { value: 0.0, method: GammaMethod::ClosedForm, descriptor: "x = 0".into() });
    }
    let is_max = x_max(ring).ok().is_some_and(|m| same_ideal(ring, &m, ideal));
    if is_max {
        if let Ok(pf) = gamma_pf_in(ring, x, ideal) {
            return Ok(Certified {
                value: pf.value,
                method: GammaMethod::PerronFrobenius,
                descriptor: format!("dominant eigenvalue on a rank-{} subring", pf.subring.len()),
            });
        }
    }
    if ring.is_finite() {
        let s = species::gamma_via_species(ring, x, ideal)?;
        return Ok(Certified {
            value: s.value,
            method: GammaMethod::Species,
            descriptor: format!("max |s(x)| over {} core bounded species", s.candidates),
        });
    }
    Err(RingError::NotAlgebraic(ring.format_int(x)))
}

fn same_ideal(ring: &RingSpec, a: &RepIdeal, b: &RepIdeal) -> bool {
    match (a.members(), b.members()) {
        (Some(x), Some(y)) => x == y,
        _ => ring.is_finite() && a.member_list().ok() == b.member_list().ok(),
    }
}

/// Outcome of saturating `{1}` under multiplication by `x` and `x*`.
#[derive(Clone, Debug)]
pub enum Algebraic {
    Subring(SubringBasis),
    Timeout,
}

/// Basis indices outside the ideal reached from `1` by `x` and `x*`; their
/// span is a subring modulo the ideal.
#[derive(Clone, Debug)]
pub struct SubringBasis {
    pub indices: Vec<BasisId>,
}

impl SubringBasis {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Matrix of multiplication by `y` modulo the ideal: entry `(k, i)` is
    /// `[y x_i : x_k]`.
    pub fn multiplication_matrix(&self, ring: &RingSpec, y: &Element, ideal: &RepIdeal) -> Result<Vec<Vec<BigInt>>> {
        let pos: HashMap<BasisId, usize> = self.indices.iter().enumerate().map(|(n, i)| (*i, n)).collect();
        let r = self.indices.len();
        let mut m = vec![vec![BigInt::zero(); r]; r];
        for (col, &i) in self.indices.iter().enumerate() {
            let prod = core(&ring.multiply(y, &Element::basis(i))?, ideal);
            for (k, c) in prod.iter() {
                let row = *pos.get(&k).ok_or_else(|| RingError::NotAlgebraic(format!("{} leaves the subring", ring.label(k))))?;
                m[row][col] = c.clone();
            }
        }
        Ok(m)
    }
}

pub fn is_algebraic(ring: &RingSpec, x: &Element, ideal: &RepIdeal, budget: usize) -> Result<Algebraic> {
    require_non_negative(x)?;
    ring.check(x)?;
    let xs = ring.star(x)?;
    let one = ring.identity();
    let mut seen: BTreeSet<BasisId> = BTreeSet::from([one]);
    let mut order = vec![one];
    let mut queue = VecDeque::from([one]);
    while let Some(i) = queue.pop_front() {
        let xi = Element::basis(i);
        for g in [x, &xs] {
            for k in core(&ring.multiply(g, &xi)?, ideal).support() {
                if seen.insert(k) {
                    if seen.len() > budget {
                        return Ok(Algebraic::Timeout);
                    }
                    order.push(k);
                    queue.push_back(k);
                }
            }
        }
    }
    Ok(Algebraic::Subring(SubringBasis { indices: order }))
}

/// Result of the Perron-Frobenius computation.
#[derive(Clone, Debug)]
pub struct PfResult {
    /// `gamma(x)`, read off from `x u = s(x) u`.
    pub value: f64,
    /// Dominant eigenvalue of multiplication by `y = sum of the subring basis`.
    pub eigenvalue: f64,
    pub subring: Vec<BasisId>,
    /// Positive eigenvector, normalised to maximum entry 1.
    pub eigenvector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// `gamma_max(x)` by Perron-Frobenius on the subring generated by `x, x*`
/// modulo the maximal ideal (modulo nothing for ordinary rings).
pub fn gamma_pf(ring: &RingSpec, x: &Element) -> Result<PfResult> {
    let ideal = match x_max(ring) {
        Ok(m) => m,
        Err(RingError::OrdinaryRing) => RepIdeal::empty(ring),
        Err(e) => return Err(e),
    };
    gamma_pf_in(ring, x, &ideal)
}

/// Perron-Frobenius modulo an arbitrary ideal. Fails unless the eigenvector
/// comes out strictly positive.
pub fn gamma_pf_in(ring: &RingSpec, x: &Element, ideal: &RepIdeal) -> Result<PfResult> {
    let sub = match is_algebraic(ring, x, ideal, ALGEBRAIC_BUDGET)? {
        Algebraic::Subring(s) => s,
        Algebraic::Timeout => return Err(RingError::NotAlgebraic(ring.format_int(x))),
    };
    let y = Element::from_terms(sub.indices.iter().map(|&i| (i, BigInt::from(1))));
    let b = to_f64(&sub.multiplication_matrix(ring, &y, ideal)?);
    let positive = b.iter().all(|row| row.iter().all(|&v| v > 0.0));
    // I + B is primitive whenever B is irreducible.
    let shift = if positive { 0.0 } else { 1.0 };
    let (lambda, u, iterations) = power_iteration(&b, shift)?;
    let residual = eigen_residual(&b, &u, lambda);
    if residual >= PF_RESIDUAL || u.iter().any(|&v| v <= 1e-14) {
        return Err(RingError::NumericalFailure(format!(
            "Perron-Frobenius vector not certified (residual {residual:.2e})"
        )));
    }
    let lx = to_f64(&sub.multiplication_matrix(ring, x, ideal)?);
    let xu = mat_vec(&lx, &u);
    let value = dot(&xu, &u) / dot(&u, &u);
    let x_residual = eigen_residual(&lx, &u, value);
    if x_residual >= PF_RESIDUAL * value.max(1.0) {
        return Err(RingError::NumericalFailure(format!("x u is not a multiple of u (residual {x_residual:.2e})")));
    }
    let result = PfResult { value, eigenvalue: lambda, subring: sub.indices, eigenvector: u, residual, iterations };
    if ring.rank().is_some_and(|r| r <= CROSS_CHECK_RANK) {
        let s = species::gamma_via_species(ring, x, ideal)?;
        if (s.value - result.value).abs() > 1e-8 {
            return Err(RingError::NumericalFailure(format!(
                "Perron-Frobenius value {} disagrees with species value {}",
                result.value, s.value
            )));
        }
    }
    Ok(result)
}

fn to_f64(m: &[Vec<BigInt>]) -> Vec<Vec<f64>> {
    use num_traits::ToPrimitive;
    m.iter().map(|row| row.iter().map(|v| v.to_f64().unwrap_or(f64::INFINITY)).collect()).collect()
}

fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn eigen_residual(m: &[Vec<f64>], u: &[f64], lambda: f64) -> f64 {
    let mu = mat_vec(m, u);
    let num = mu.iter().zip(u).map(|(a, b)| (a - lambda * b).abs()).fold(0.0, f64::max);
    let den = u.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    num / den
}

/// Power iteration on `B + shift I` from the all-ones vector; returns the
/// eigenvalue of `B`.
fn power_iteration(b: &[Vec<f64>], shift: f64) -> Result<(f64, Vec<f64>, usize)> {
    let r = b.len();
    let mut u = vec![1.0; r];
    let mut prev = f64::NAN;
    for it in 1..=PF_MAX_ITERS {
        let mut w = mat_vec(b, &u);
        for (wi, ui) in w.iter_mut().zip(&u) {
            *wi += shift * ui;
        }
        let norm = w.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if norm == 0.0 || !norm.is_finite() {
            return Err(RingError::NumericalFailure("power iteration collapsed".into()));
        }
        for v in w.iter_mut() {
            *v /= norm;
        }
        let bu = mat_vec(b, &w);
        let rayleigh = dot(&bu, &w) / dot(&w, &w);
        u = w;
        if (rayleigh - prev).abs() <= PF_TOL * rayleigh.abs().max(1.0) && eigen_residual(b, &u, rayleigh) < PF_RESIDUAL {
            return Ok((rayleigh, u, it));
        }
        prev = rayleigh;
    }
    Err(RingError::NumericalFailure(format!("power iteration did not converge in {PF_MAX_ITERS} steps")))
}

/// The trichotomy for non-negative `x` modulo an ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endotriviality {
    /// `x` lies in the ideal, so `gamma(x) = 0`.
    InIdeal,
    /// `x x* - 1` lies in the ideal.
    Endotrivial,
    /// Neither; then `gamma(x x*) >= 2`, so `gamma(x) >= sqrt 2`.
    GammaGeSqrt2,
}

impl fmt::Display for Endotriviality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Endotriviality::InIdeal => "in_ideal",
            Endotriviality::Endotrivial => "endotrivial",
            Endotriviality::GammaGeSqrt2 => "gamma_ge_sqrt2",
        })
    }
}

pub fn endotrivial_test(ring: &RingSpec, x: &Element, ideal: &RepIdeal) -> Result<Endotriviality> {
    require_non_negative(x)?;
    if core(x, ideal).is_zero() {
        return Ok(Endotriviality::InIdeal);
    }
    let xx = ring.multiply(x, &ring.star(x)?)?;
    if core(&xx.sub(&ring.one()), ideal).is_zero() {
        Ok(Endotriviality::Endotrivial)
    } else {
        Ok(Endotriviality::GammaGeSqrt2)
    }
}

/// The real root of `X^3 - 4X^2 + 4X - 2`, about `2.839286755`.
pub fn alpha_constant() -> f64 {
    let f = |x: f64| ((x - 4.0) * x + 4.0) * x - 2.0;
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `true` when `x` is non-negative and non-zero.
pub fn is_positive(x: &Element) -> bool {
    !x.is_zero() && x.iter().all(|(_, c)| c.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic_p, toy_i, toy_ii, TOY_RHO};
    use crate::ideals::x_proj;

    fn j(ring: &RingSpec, l: &str) -> Element {
        Element::basis(ring.lookup(l).unwrap())
    }

    #[test]
    fn z5_sequence() {
        let r = cyclic_p(5).unwrap();
        let c = core_dim_sequence(&r, &j(&r, "J2"), &x_proj(&r), 12).unwrap();
        let want: Vec<BigInt> =
            [1, 2, 4, 8, 11, 22, 29, 58, 76, 152, 199, 398, 521].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(c, want);
        let ones = core_dim_sequence(&r, &r.one(), &x_proj(&r), 5).unwrap();
        assert!(ones.iter().all(|v| *v == BigInt::from(1)));
        let rho = core_dim_sequence(&r, &r.rho(), &x_proj(&r), 3).unwrap();
        assert_eq!(rho, vec![BigInt::from(1), BigInt::zero(), BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn z5_pf_and_fekete() {
        let r = cyclic_p(5).unwrap();
        let tau = (1.0 + 5f64.sqrt()) / 2.0;
        let pf = gamma_pf(&r, &j(&r, "J2")).unwrap();
        assert!((pf.value - tau).abs() < 1e-10);
        let rep = gamma_estimate(&r, &j(&r, "J2"), &x_proj(&r), 128).unwrap();
        assert!(rep.upper >= tau && rep.upper <= tau + 0.02, "{}", rep.upper);
        assert!(rep.running_min.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(rep.certified.unwrap().method, GammaMethod::PerronFrobenius);
        assert!((gamma_pf(&r, &r.one()).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn table_values() {
        let r7 = cyclic_p(7).unwrap();
        assert!((gamma_pf(&r7, &j(&r7, "J2")).unwrap().value - 1.80194).abs() < 5e-6);
        let r11 = cyclic_p(11).unwrap();
        assert!((gamma_pf(&r11, &j(&r11, "J5")).unwrap().value - 3.51334).abs() < 5e-6);
    }

    #[test]
    fn ideal_member_is_zero() {
        let r = cyclic_p(5).unwrap();
        let rep = gamma_estimate(&r, &j(&r, "J5"), &x_proj(&r), 4).unwrap();
        let cert = rep.certified.unwrap();
        assert_eq!(cert.value, 0.0);
        assert_eq!(cert.method, GammaMethod::ClosedForm);
    }

    #[test]
    fn algebraic_saturation() {
        let r = cyclic_p(5).unwrap();
        match is_algebraic(&r, &j(&r, "J2"), &x_proj(&r), 100).unwrap() {
            Algebraic::Subring(s) => assert_eq!(s.len(), 4),
            Algebraic::Timeout => panic!("timeout"),
        }
        match is_algebraic(&r, &r.one(), &x_proj(&r), 100).unwrap() {
            Algebraic::Subring(s) => assert_eq!(s.indices, vec![r.identity()]),
            Algebraic::Timeout => panic!("timeout"),
        }
        let t = toy_i(2).unwrap();
        let u = Element::basis(t.lookup("u").unwrap());
        assert!(matches!(is_algebraic(&t, &u, &x_proj(&t), 50).unwrap(), Algebraic::Timeout));
    }

    #[test]
    fn endotrivial() {
        let t = toy_ii(3).unwrap();
        let u = Element::basis(t.lookup("u").unwrap());
        let proj = x_proj(&t);
        assert_eq!(endotrivial_test(&t, &u, &proj).unwrap(), Endotriviality::Endotrivial);
        // gamma(u) = d although u is endotrivial.
        let rep = gamma_estimate(&t, &u, &proj, 40).unwrap();
        assert!((rep.upper - 3.0).abs() < 1e-9, "{}", rep.upper);
        assert_eq!(endotrivial_test(&t, &t.one(), &proj).unwrap(), Endotriviality::Endotrivial);
        assert_eq!(endotrivial_test(&t, &Element::basis(TOY_RHO), &proj).unwrap(), Endotriviality::InIdeal);
        let r = cyclic_p(5).unwrap();
        assert_eq!(endotrivial_test(&r, &j(&r, "J2"), &x_proj(&r)).unwrap(), Endotriviality::GammaGeSqrt2);
    }

    #[test]
    fn alpha() {
        let a = alpha_constant();
        assert!((a - 2.839286755).abs() < 1e-8);
        assert!((((a - 4.0) * a + 4.0) * a - 2.0).abs() < 1e-10);
        assert!(a > 1.0 + 2f64.sqrt());
    }
}
