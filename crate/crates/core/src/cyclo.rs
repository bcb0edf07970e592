//! Exact cyclotomic integers `Z[zeta_N]`, reduced modulo the cyclotomic
//! polynomial so that equality is structural.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// An element of `Z[zeta_N]`. Order 0 marks a rational integer that has not
/// yet been combined with any root of unity.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigInt>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let comparable = self.order == other.order
            || self.order == 0
            || other.order == 0
            || self.coeffs.len() <= 1;
        comparable && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

fn cyclotomic_poly(n: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi = cyclotomic_poly(d);
            poly = exact_div(&poly, &phi);
        }
    }
    let arc = Arc::new(poly);
    cache.write().unwrap().insert(n, arc.clone());
    arc
}

fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (k, dk) in den.iter().enumerate() {
            rem[i + k] -= &c * dk;
        }
        quot[i] = c;
    }
    quot
}

impl Cyclotomic {
    pub fn integer(v: impl Into<BigInt>) -> Self {
        let v = v.into();
        let coeffs = if v.is_zero() { vec![] } else { vec![v] };
        Cyclotomic { order: 0, coeffs }
    }

    /// `zeta_N^k`.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        assert!(order > 0);
        let e = k.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::one();
        Cyclotomic::reduced(order, coeffs)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    fn reduced(order: u32, mut coeffs: Vec<BigInt>) -> Self {
        if order > 0 {
            let phi = cyclotomic_poly(order);
            let deg = phi.len() - 1;
            for i in (deg..coeffs.len()).rev() {
                let c = std::mem::take(&mut coeffs[i]);
                if c.is_zero() {
                    continue;
                }
                for (k, pk) in phi.iter().enumerate().take(deg) {
                    coeffs[i - deg + k] -= &c * pk;
                }
            }
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Cyclotomic { order, coeffs }
    }

    fn common_order(&self, other: &Self) -> u32 {
        match (self.order, other.order) {
            (0, o) | (o, 0) => o,
            (a, b) if a == b => a,
            (a, b) => panic!("mixing cyclotomic orders {a} and {b}"),
        }
    }

    /// Returns the value as an integer when it lies in `Z`.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }
}

impl From<BigInt> for Cyclotomic {
    fn from(v: BigInt) -> Self {
        Cyclotomic::integer(v)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| if k == 0 { c.to_string() } else { format!("{c}z^{k}") })
            .collect();
        write!(f, "[{}]_{}", parts.join(" + "), self.order)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Self {
        let order = self.common_order(&rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut c = vec![BigInt::zero(); n];
        for (i, v) in self.coeffs.into_iter().enumerate() {
            c[i] += v;
        }
        for (i, v) in rhs.coeffs.into_iter().enumerate() {
            c[i] += v;
        }
        Cyclotomic::reduced(order, c)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Self {
        let order = self.common_order(&rhs);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Cyclotomic { order, coeffs: vec![] };
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Cyclotomic::reduced(order, c)
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::integer(0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::integer(1)
    }
}

impl Scalar for Cyclotomic {
    fn from_bigint(v: &BigInt) -> Self {
        Cyclotomic::integer(v.clone())
    }

    fn conj(&self) -> Self {
        if self.order == 0 {
            return self.clone();
        }
        let n = self.order as i64;
        let mut out = Cyclotomic { order: self.order, coeffs: vec![] };
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = Cyclotomic::zeta_pow(self.order, n - k as i64) * Cyclotomic::integer(c.clone());
                out = out + term;
            }
        }
        out
    }

    fn to_c64(&self) -> Complex64 {
        let n = self.order.max(1) as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(1.0, angle) * Scalar::to_c64(c).re
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let phi10: Vec<i64> = cyclotomic_poly(10).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(phi10, vec![1, -1, 1, -1, 1]);
        let phi4: Vec<i64> = cyclotomic_poly(4).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(phi4, vec![1, 0, 1]);
    }

    #[test]
    fn golden_ratio_relation() {
        // 2cos(pi/5) = z + z^-1 with z a primitive 10th root satisfies t^2 = t + 1.
        let t = Cyclotomic::zeta_pow(10, 1) + Cyclotomic::zeta_pow(10, -1);
        assert_eq!(t.clone() * t.clone(), t.clone() + Cyclotomic::one());
        assert!((t.to_c64().re - 1.618033988749895).abs() < 1e-12);
        assert!(t.to_c64().im.abs() < 1e-12);
    }

    #[test]
    fn conjugation_inverts_roots() {
        let z = Cyclotomic::zeta_pow(8, 1);
        assert_eq!(z.clone() * Scalar::conj(&z), Cyclotomic::one());
    }

    #[test]
    fn full_period_vanishes() {
        let mut s = Cyclotomic::zero();
        for k in 0..7 {
            s = s + Cyclotomic::zeta_pow(14, 2 * k);
        }
        assert!(s.is_zero());
    }
}
