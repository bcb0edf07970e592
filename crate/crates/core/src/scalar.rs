//! Coefficient types for ring elements.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact complex rationals, used for complexified elements.
pub type ComplexQ = Complex<BigRational>;

/// An exact commutative coefficient ring with a conjugation.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_bigint(v: &BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }

    /// Complex conjugation; the identity on real scalars.
    fn conj(&self) -> Self;

    /// Floating point image, for analytic post-processing only.
    fn to_c64(&self) -> Complex64;
}

impl Scalar for BigInt {
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl Scalar for BigRational {
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(self), 0.0)
    }
}

impl Scalar for ComplexQ {
    fn from_bigint(v: &BigInt) -> Self {
        Complex::new(BigRational::from_integer(v.clone()), BigRational::zero())
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

/// Converts an exact rational to the nearest double, robust to huge parts.
pub fn ratio_to_f64(q: &BigRational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let num = q.numer();
    let den = q.denom();
    let shift = num.bits() as i64 - den.bits() as i64;
    let scaled = if shift > 0 {
        BigRational::new(num.clone(), den.clone() << (shift as usize))
    } else {
        BigRational::new(num.clone() << ((-shift) as usize), den.clone())
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Natural logarithm of a positive big integer.
pub fn ln_bigint(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = v >> (shift as usize);
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn complex_q(re: BigRational, im: BigRational) -> ComplexQ {
    Complex::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn huge_ratio_converts() {
        let big = BigInt::from(3) << 2000usize;
        let q = BigRational::new(big.clone() + 1, big);
        assert!((ratio_to_f64(&q) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_of_large_integer() {
        let v = BigInt::from(1) << 3000usize;
        assert!((ln_bigint(&v) - 3000.0 * std::f64::consts::LN_2).abs() < 1e-9);
        assert!((ln_bigint(&BigInt::from(100)) - 100f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn complex_conjugation() {
        let z = complex_q(rational(1, 2), rational(-3, 4));
        assert_eq!(Scalar::conj(&z).im, rational(3, 4));
    }
}
