//! Chebyshev polynomials of the second kind, their normalised variants
//! `f_j(X) = U_{j-1}(X/2)` and two-variable Dickson polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense integer polynomial, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: i64) -> Self {
        Self::from_i64(&[c])
    }

    /// The monomial `X`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::default();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Division with remainder by a monic (or unit-leading) divisor.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead = d.coeffs[dd].clone();
        if lead.abs() != BigInt::one() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::default(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead;
            if c.is_zero() {
                continue;
            }
            for (k, dk) in d.coeffs.iter().enumerate() {
                rem[i + k] -= &c * dk;
            }
            quot[i] = c;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Value at a double, evaluated exactly and rounded once.
    pub fn eval_exact(&self, x: f64) -> f64 {
        let (m, e) = dyadic(x);
        let d = self.degree().unwrap_or(0);
        let mut total = BigInt::zero();
        let mut mpow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            total += (c * &mpow) << (e as usize * (d - i));
            mpow *= &m;
        }
        crate::scalar::ratio_to_f64(&num_rational::BigRational::new(total, BigInt::one() << (e as usize * d)))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap())
    }

    /// Exact sign of the value at the dyadic point `m / 2^e`.
    pub fn sign_at_dyadic(&self, m: &BigInt, e: u32) -> i32 {
        let d = match self.degree() {
            Some(d) => d,
            None => return 0,
        };
        // 2^{e d} p(m / 2^e) = sum c_i m^i 2^{e (d - i)}
        let mut total = BigInt::zero();
        let mut mpow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                total += (c * &mpow) << (e as usize * (d - i));
            }
            mpow *= m;
        }
        match total.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

/// `U_j` with `U_0 = 1`, `U_1 = 2X`, `U_j = 2X U_{j-1} - U_{j-2}`.
pub fn u_poly(j: usize) -> IntPolynomial {
    let two_x = IntPolynomial::from_i64(&[0, 2]);
    let mut prev = IntPolynomial::constant(1);
    if j == 0 {
        return prev;
    }
    let mut cur = two_x.clone();
    for _ in 1..j {
        let next = two_x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `f_j(X) = U_{j-1}(X/2)`; `f_0 = 0`, `f_1 = 1`, `X f_j = f_{j+1} + f_{j-1}`.
pub fn f_poly(j: usize) -> IntPolynomial {
    let mut prev = IntPolynomial::default();
    let mut cur = IntPolynomial::constant(1);
    if j == 0 {
        return prev;
    }
    for _ in 1..j {
        let next = IntPolynomial::x().mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

fn dyadic(x: f64) -> (BigInt, u32) {
    // Every finite double is m / 2^e; scale by 2^60 and round, which is exact
    // for the magnitudes used here (|x| <= 2).
    let e = 60u32;
    let m = (x * 2f64.powi(e as i32)).round();
    (BigInt::from(m as i128), e)
}

fn midpoint(a: &(BigInt, u32), b: &(BigInt, u32)) -> (BigInt, u32) {
    debug_assert_eq!(a.1, b.1);
    ((&a.0 + &b.0), a.1 + 1)
}

fn rescale(a: &(BigInt, u32), e: u32) -> (BigInt, u32) {
    (&a.0 << ((e - a.1) as usize), e)
}

fn dyadic_to_f64(a: &(BigInt, u32)) -> f64 {
    a.0.to_f64().unwrap() / 2f64.powi(a.1 as i32)
}

/// Roots of `f_j`, sorted descending, each isolated between the points
/// `2cos((k ± 1/2)π/j)` and refined by exact-sign bisection to 1e-15.
pub fn f_roots(j: usize) -> Vec<f64> {
    if j < 2 {
        return Vec::new();
    }
    let poly = f_poly(j);
    let jf = j as f64;
    let mut roots = Vec::with_capacity(j - 1);
    for k in 1..j {
        let hi_pt = 2.0 * ((k as f64 - 0.5) * std::f64::consts::PI / jf).cos();
        let lo_pt = 2.0 * ((k as f64 + 0.5) * std::f64::consts::PI / jf).cos();
        let mut lo = dyadic(lo_pt);
        let mut hi = dyadic(hi_pt);
        let s_lo = poly.sign_at_dyadic(&lo.0, lo.1);
        let s_hi = poly.sign_at_dyadic(&hi.0, hi.1);
        assert!(s_lo * s_hi < 0, "root of f_{j} number {k} not bracketed");
        while dyadic_to_f64(&hi) - dyadic_to_f64(&lo) > 1e-15 {
            let mid = midpoint(&lo, &hi);
            let s = poly.sign_at_dyadic(&mid.0, mid.1);
            if s == 0 {
                lo = mid.clone();
                hi = mid;
                break;
            }
            if s == s_lo {
                lo = mid;
                hi = rescale(&hi, lo.1);
            } else {
                hi = mid;
                lo = rescale(&lo, hi.1);
            }
        }
        roots.push((dyadic_to_f64(&lo) + dyadic_to_f64(&hi)) / 2.0);
    }
    roots
}

/// Largest root of `f_j`, i.e. `2cos(π/j)`.
pub fn f_largest_root(j: usize) -> f64 {
    f_roots(j).first().copied().unwrap_or(0.0)
}

/// Sparse polynomial in `y`, `z`, keyed by `(deg_y, deg_z)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BivariatePolynomial {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePolynomial {
    pub fn monomial(dy: u32, dz: u32, c: i64) -> Self {
        let mut p = Self::default();
        p.add_term(dy, dz, BigInt::from(c));
        p
    }

    fn add_term(&mut self, dy: u32, dz: u32, c: BigInt) {
        let entry = self.coeffs.entry((dy, dz)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(dy, dz));
        }
    }

    pub fn coeff(&self, dy: u32, dz: u32) -> BigInt {
        self.coeffs.get(&(dy, dz)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &o.coeffs {
            out.add_term(a, b, -c.clone());
        }
        out
    }

    /// Multiplies by the monomial `y^dy z^dz`.
    pub fn shift(&self, dy: u32, dz: u32) -> Self {
        BivariatePolynomial { coeffs: self.coeffs.iter().map(|(&(a, b), c)| ((a + dy, b + dz), c.clone())).collect() }
    }

    pub fn eval_f64(&self, y: f64, z: f64) -> f64 {
        self.coeffs.iter().map(|(&(a, b), c)| c.to_f64().unwrap() * y.powi(a as i32) * z.powi(b as i32)).sum()
    }
}

/// Dickson polynomials `E_0 = 1`, `E_1 = z`, `E_j = z E_{j-1} - y E_{j-2}`.
pub fn dickson_e(j: usize) -> BivariatePolynomial {
    let mut prev = BivariatePolynomial::monomial(0, 0, 1);
    if j == 0 {
        return prev;
    }
    let mut cur = BivariatePolynomial::monomial(0, 1, 1);
    for _ in 1..j {
        let next = cur.shift(0, 1).sub(&prev.shift(1, 0));
        prev = cur;
        cur = next;
    }
    cur
}
