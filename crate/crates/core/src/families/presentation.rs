//! Rings presented as `Z[X,Y]/(Y^N - 1, (X - Y^d - Y^-d) f_n(X))`, with
//! basis `f_j(X) Y^i` for `1 <= j <= n`, `0 <= i < N`.
//!
//! This covers `a(Z/p)` (N = 1, d = 0), the Frobenius groups
//! `Z/p x| Z/2m` and the Taft-type Hopf algebras `H_{2m,n}`.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::element::Element;
use crate::error::{Result, RingError};
use crate::families::{is_prime, FamilyParams};
use crate::ring::{BasisInfo, RingSpec};

/// Largest basis a presentation family may generate.
pub const MAX_PRESENTATION_RANK: usize = 500;

/// Multiplication in the presented ring, on dense coefficient vectors
/// indexed by `(j - 1) * period + i`.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// Degree bound: `f_top` is the last basis polynomial.
    pub top: usize,
    /// Order of `Y`.
    pub period: usize,
    /// Shift in the relation `X f_top = (Y^d + Y^-d) f_top`.
    pub shift: i64,
}

impl Presentation {
    pub fn new(top: usize, period: usize, shift: i64) -> Self {
        assert!(top >= 1 && period >= 1);
        Presentation { top, period, shift }
    }

    pub fn rank(&self) -> usize {
        self.top * self.period
    }

    pub fn index(&self, j: usize, i: i64) -> usize {
        (j - 1) * self.period + i.rem_euclid(self.period as i64) as usize
    }

    /// `(j, i)` of a flat index.
    pub fn coords(&self, idx: usize) -> (usize, usize) {
        (idx / self.period + 1, idx % self.period)
    }

    /// Multiplication by `X`.
    pub fn times_x(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (idx, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (j, i) = self.coords(idx);
            let i = i as i64;
            if j < self.top {
                out[self.index(j + 1, i)] += c;
                if j > 1 {
                    out[self.index(j - 1, i)] += c;
                }
            } else {
                // X f_top = (Y^d + Y^-d) f_top; for top = 1 this also covers f_0 = 0.
                out[self.index(j, i + self.shift)] += c;
                out[self.index(j, i - self.shift)] += c;
            }
        }
        out
    }

    /// Multiplication by `f_a(X)`, via `f_{k+1} = X f_k - f_{k-1}`.
    pub fn times_f(&self, a: usize, v: &[i64]) -> Vec<i64> {
        assert!(a >= 1);
        let mut prev = v.to_vec();
        if a == 1 {
            return prev;
        }
        let mut cur = self.times_x(v);
        for _ in 2..a {
            let next: Vec<i64> = self.times_x(&cur).iter().zip(&prev).map(|(x, y)| x - y).collect();
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Multiplication by `Y^k`.
    pub fn times_y(&self, k: i64, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (idx, &c) in v.iter().enumerate() {
            if c != 0 {
                let (j, i) = self.coords(idx);
                out[self.index(j, i as i64 + k)] += c;
            }
        }
        out
    }

    /// Product of two arbitrary vectors.
    pub fn mul(&self, u: &[i64], v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for (idx, &c) in u.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (j, i) = self.coords(idx);
            let t = self.times_y(i as i64, &self.times_f(j, v));
            for (o, x) in out.iter_mut().zip(t) {
                *o += c * x;
            }
        }
        out
    }

    pub fn basis_vector(&self, j: usize, i: i64) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[self.index(j, i)] = 1;
        v
    }

    /// `f_a f_b` for all `a, b`, as dense vectors (the `Y^0` products).
    fn f_products(&self) -> Vec<Vec<i64>> {
        let n = self.top;
        let mut out = vec![Vec::new(); n * n];
        for b in 1..=n {
            let base = self.basis_vector(b, 0);
            let mut prev = base.clone();
            out[b - 1] = base.clone();
            if n >= 2 {
                let mut cur = self.times_x(&base);
                out[n + b - 1] = cur.clone();
                for a in 3..=n {
                    let next: Vec<i64> = self.times_x(&cur).iter().zip(&prev).map(|(x, y)| x - y).collect();
                    prev = cur;
                    cur = next;
                    out[(a - 1) * n + b - 1] = cur.clone();
                }
            }
        }
        out
    }
}

/// Label of `f_j Y^i`: `S{i}` for `j = 1`, `J{j}` for `i = 0`, else `J{j}S{i}`.
fn jordan_simple_label(j: usize, i: usize) -> String {
    match (j, i) {
        (1, i) => format!("S{i}"),
        (j, 0) => format!("J{j}"),
        (j, i) => format!("J{j}S{i}"),
    }
}

/// Builds the ring on the basis indices selected by `keep`, ordered by the
/// presentation's flat index.
fn build(
    name: String,
    pres: &Presentation,
    keep: impl Fn(usize, usize) -> bool,
    label: impl Fn(usize, usize) -> String,
) -> Result<RingSpec> {
    let kept: Vec<usize> = (0..pres.rank()).filter(|&idx| {
        let (j, i) = pres.coords(idx);
        keep(j, i)
    }).collect();
    let mut position = vec![usize::MAX; pres.rank()];
    for (pos, &idx) in kept.iter().enumerate() {
        position[idx] = pos;
    }
    let mut basis = Vec::with_capacity(kept.len());
    for &idx in &kept {
        let (j, i) = pres.coords(idx);
        let dual = pres.index(j, -(i as i64));
        if position[dual] == usize::MAX {
            return Err(RingError::BadParams(format!("dual of {} leaves the selected subring", label(j, i))));
        }
        basis.push(BasisInfo::new(label(j, i), j as i64, position[dual], if j == pres.top { 1 } else { 0 }));
    }
    let fprod = pres.f_products();
    let n = pres.top;
    let mut failure: Option<String> = None;
    let mut n_max = 0i64;
    let table = |a: usize, b: usize| -> std::result::Result<Vec<(usize, BigInt)>, String> {
        let (ja, ia) = pres.coords(kept[a]);
        let (jb, ib) = pres.coords(kept[b]);
        let prod = pres.times_y((ia + ib) as i64, &fprod[(ja - 1) * n + jb - 1]);
        let mut terms = Vec::new();
        for (idx, c) in prod.into_iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                return Err(format!("negative structure constant in {} * {}", label(ja, ia), label(jb, ib)));
            }
            if position[idx] == usize::MAX {
                return Err(format!("{} * {} leaves the selected subring", label(ja, ia), label(jb, ib)));
            }
            terms.push((position[idx], BigInt::from(c)));
        }
        Ok(terms)
    };
    // Validate the whole table first so construction can report errors.
    for a in 0..kept.len() {
        for b in a..kept.len() {
            match table(a, b) {
                Ok(t) => {
                    if basis[a].star.index() == b {
                        if let Some((_, c)) = t.iter().find(|(k, _)| *k == 0) {
                            n_max = n_max.max(i64::try_from(c).unwrap_or(i64::MAX));
                        }
                    }
                }
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            }
        }
        if failure.is_some() {
            break;
        }
    }
    if let Some(e) = failure {
        return Err(RingError::BadParams(e));
    }
    RingSpec::from_fn(name, 0, n_max <= 1, basis, |a, b| table(a, b).expect("validated above"))
}

fn check_rank(rank: usize) -> Result<()> {
    if rank > MAX_PRESENTATION_RANK {
        return Err(RingError::CapExceeded { size: rank as u64, cap: MAX_PRESENTATION_RANK as u64 });
    }
    Ok(())
}

/// `a(Z/p)` in characteristic `p`: basis `J1..Jp`.
pub fn cyclic_p(p: u64) -> Result<RingSpec> {
    if !is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    check_rank(p as usize)?;
    let pres = Presentation::new(p as usize, 1, 0);
    build(format!("a(Z/{p})"), &pres, |_, _| true, |j, _| format!("J{j}"))
}

/// The Frobenius group `Z/p x| Z/2m`, or with `subgroup` its index-two
/// subgroup `Z/p x| Z/m`, where a generator of the complement acts on the
/// two dimensional module with composition factors `S_d, S_-d`.
pub fn frobenius(p: u64, m: u64, d: i64, subgroup: bool) -> Result<RingSpec> {
    if !is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    if m == 0 || m.gcd(&p) != 1 {
        return Err(RingError::BadParams(format!("frobenius needs gcd(m, p) = 1, got m = {m}, p = {p}")));
    }
    let period = 2 * m as usize;
    check_rank(p as usize * period)?;
    let pres = Presentation::new(p as usize, period, d);
    let name = if subgroup { format!("a(Z/{p} x| Z/{m})") } else { format!("a(Z/{p} x| Z/{})", 2 * m) };
    build(name, &pres, |j, i| !subgroup || parity_ok(j, i, d), jordan_simple_label)
}

/// Taft-type algebra `H_{2m,n}` with `d = m/n`; with `subgroup`, the
/// index-two subring of `H_{m,n}`-type modules.
pub fn taft(m: u64, n: u64, subgroup: bool) -> Result<RingSpec> {
    if n < 2 || m == 0 || !m.is_multiple_of(n) {
        return Err(RingError::BadParams(format!("taft needs n >= 2 dividing m, got m = {m}, n = {n}")));
    }
    let d = (m / n) as i64;
    let period = 2 * m as usize;
    check_rank(n as usize * period)?;
    let pres = Presentation::new(n as usize, period, d);
    let name = if subgroup { format!("a(H_{{{m},{n}}})") } else { format!("a(H_{{{},{n}}})", 2 * m) };
    build(name, &pres, |j, i| !subgroup || parity_ok(j, i, d), jordan_simple_label)
}

fn parity_ok(j: usize, i: usize, d: i64) -> bool {
    (i as i64 - d * (j as i64 - 1)).rem_euclid(2) == 0
}

/// Sweedler's Hopf algebra: the subring of `taft(2, 2)` with basis
/// `S0, S1, P0, P1` (simples and projective covers).
pub fn sweedler() -> RingSpec {
    let pres = Presentation::new(2, 4, 1);
    let label = |j: usize, i: usize| match (j, i) {
        (1, 0) => "S0".to_string(),
        (1, 2) => "S1".to_string(),
        (2, 1) => "P0".to_string(),
        (2, 3) => "P1".to_string(),
        _ => unreachable!("outside the Sweedler subring"),
    };
    build("a(Sweedler)".into(), &pres, |j, i| parity_ok(j, i, 1), label).expect("Sweedler ring is well formed")
}

/// `(Y^d - Y^-d) f_n(X)`, which generates the nil radical of a Taft ring.
pub fn taft_nilradical_generator(ring: &RingSpec) -> Result<Element> {
    let (n, m) = match ring.family() {
        Some(FamilyParams::Taft { m, n, .. }) => (*n as usize, *m as usize),
        Some(FamilyParams::Sweedler) => (2, 2),
        _ => return Err(RingError::UnsupportedRing(format!("{} is not a Taft ring", ring.name()))),
    };
    let d = m / n;
    let (plus, minus) = match ring.family() {
        Some(FamilyParams::Sweedler) => ("P0".to_string(), "P1".to_string()),
        _ => (jordan_simple_label(n, d), jordan_simple_label(n, 2 * m - d)),
    };
    let mut e = Element::basis(ring.lookup(&plus)?);
    e.add_term(ring.lookup(&minus)?, BigInt::from(-1));
    Ok(e)
}
