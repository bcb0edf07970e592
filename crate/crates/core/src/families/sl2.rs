//! The quotient `Z[X]/(f_q(X))` describing `[L(1)]` for `SL(2,q)` modulo
//! projectives, together with the Steinberg factorisation of `f_q`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chebyshev::{f_largest_root, f_poly, IntPolynomial};
use crate::error::{Result, RingError};
use crate::families::prime_power;

/// Integer Laurent polynomial in one variable `t`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    coeffs: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn monomial(e: i64, c: i64) -> Self {
        let mut l = Laurent::default();
        l.add_term(e, BigInt::from(c));
        l
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `t^k + t^-k`.
    pub fn cosine(k: i64) -> Self {
        Self::monomial(k, 1).add(&Self::monomial(-k, 1))
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        let v = self.coeffs.entry(e).or_default();
        *v += c;
        if v.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Laurent::default();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &o.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Evaluates an integer polynomial at this Laurent polynomial.
    pub fn compose(poly: &IntPolynomial, at: &Laurent) -> Laurent {
        let mut acc = Laurent::default();
        for c in poly.coeffs().iter().rev() {
            acc = acc.mul(at);
            acc.add_term(0, c.clone());
        }
        acc
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// `Z[X]/(f_q(X))`, the image of the tilting subring of `a(SL(2,q))` modulo
/// projectives, with `X = [L(1)]` and basis `f_1(X), ..., f_{q-1}(X)`.
#[derive(Clone, Debug)]
pub struct Sl2Quotient {
    pub q: u64,
    pub p: u64,
    pub m: u32,
}

pub fn sl2_quotient(q: u64) -> Result<Sl2Quotient> {
    let (p, m) = prime_power(q).ok_or(RingError::NotPrimePower(q))?;
    if q < 3 {
        return Err(RingError::BadParams("sl2-quotient needs q >= 3 (f_2 = X is degenerate)".into()));
    }
    Ok(Sl2Quotient { q, p, m })
}

impl Sl2Quotient {
    pub fn rank(&self) -> usize {
        self.q as usize - 1
    }

    /// `f_q`, the minimal polynomial of `[L(1)]` in the quotient.
    pub fn minimal_polynomial(&self) -> IntPolynomial {
        f_poly(self.q as usize)
    }

    /// `γ(L(1))`, the largest root of `f_q`.
    pub fn gamma(&self) -> f64 {
        f_largest_root(self.q as usize)
    }

    /// `γ(L(j)) = f_{j+1}(γ(L(1)))` for `1 <= j <= p - 1`.
    pub fn gamma_of_simple(&self, j: u64) -> Result<f64> {
        if j == 0 || j >= self.p {
            return Err(RingError::OutOfRange(format!("j must lie in 1..{}", self.p)));
        }
        Ok(f_poly(j as usize + 1).eval_f64(self.gamma()))
    }

    /// `f_a f_b` in the basis `f_1..f_{q-1}` (1-based sizes), using
    /// `f_a f_b = sum f_c` over `c = |a-b|+1, |a-b|+3, ..., a+b-1` and
    /// `f_q = 0`, `f_{q+k} = -f_{q-k}`.
    pub fn basis_product(&self, a: usize, b: usize) -> Vec<(usize, i64)> {
        let q = self.q as usize;
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        let lo = a.abs_diff(b) + 1;
        for c in (lo..a + b).step_by(2) {
            let (idx, sign) = match c.cmp(&q) {
                std::cmp::Ordering::Less => (c, 1),
                std::cmp::Ordering::Equal => continue,
                std::cmp::Ordering::Greater => (2 * q - c, -1),
            };
            *acc.entry(idx).or_default() += sign;
        }
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    /// Checks `f_q(t + 1/t) = prod_{j=1}^{m} f_p(t^{p^(j-1)} + t^{-p^(j-1)})`
    /// exactly.
    pub fn steinberg_identity_holds(&self) -> bool {
        let lhs = Laurent::compose(&f_poly(self.q as usize), &Laurent::cosine(1));
        let fp = f_poly(self.p as usize);
        let mut rhs = Laurent::one();
        let mut k = 1i64;
        for _ in 0..self.m {
            rhs = rhs.mul(&Laurent::compose(&fp, &Laurent::cosine(k)));
            k *= self.p as i64;
        }
        lhs == rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        assert!((sl2_quotient(4).unwrap().gamma() - 2f64.sqrt()).abs() < 1e-9);
        let g9 = sl2_quotient(9).unwrap().gamma();
        assert!((g9 - 2.0 * (std::f64::consts::PI / 9.0).cos()).abs() < 1e-9);
        assert!((g9 - 1.879385).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_q() {
        assert_eq!(sl2_quotient(6).unwrap_err(), RingError::NotPrimePower(6));
        assert!(sl2_quotient(2).is_err());
    }

    #[test]
    fn steinberg() {
        for q in [3, 4, 5, 8, 9, 25, 27] {
            assert!(sl2_quotient(q).unwrap().steinberg_identity_holds(), "q = {q}");
        }
    }

    #[test]
    fn chebyshev_laurent_identity() {
        // (t - 1/t) f_j(t + 1/t) = t^j - t^-j.
        for j in 1..=32 {
            let lhs = Laurent::monomial(1, 1).sub(&Laurent::monomial(-1, 1)).mul(&Laurent::compose(&f_poly(j), &Laurent::cosine(1)));
            assert_eq!(lhs, Laurent::monomial(j as i64, 1).sub(&Laurent::monomial(-(j as i64), 1)));
        }
    }

    #[test]
    fn quotient_products() {
        let s = sl2_quotient(4).unwrap();
        // f_2^2 = f_1 + f_3; f_2 f_3 = f_2 + f_4 = f_2.
        assert_eq!(s.basis_product(2, 2), vec![(1, 1), (3, 1)]);
        assert_eq!(s.basis_product(2, 3), vec![(2, 1)]);
        assert_eq!(s.basis_product(3, 3), vec![(1, 1)]);
    }
}
