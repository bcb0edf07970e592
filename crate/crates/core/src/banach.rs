//! Weighted norms, the trace inner product and operator-norm estimates.
//!
//! `‖x‖₁ = Σ |a_i| dim x_i`; the quotient norm drops ideal coefficients; the
//! weighted ℓ² norm is `|x|² = Σ n_i |a_i|²` with `n_i = [x_i x_{i*} : 1]`,
//! so that `⟨x, y⟩ = Tr(x y*)` on elements supported outside `X_max`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::{BasisId, Element};
use crate::error::{Result, RingError};
use crate::ideals::{core, x_max, RepIdeal};
use crate::ring::{self_pairing, RingSpec};
use crate::scalar::Scalar;

/// An element together with its exact weighted ℓ¹ norm.
#[derive(Clone, Debug)]
pub struct NormedElement<S: Scalar + Signed> {
    pub element: Element<S>,
    pub l1: S,
}

impl<S: Scalar + Signed> NormedElement<S> {
    pub fn new(ring: &RingSpec, element: Element<S>) -> Result<Self> {
        let l1 = norm_l1(ring, &element)?;
        Ok(NormedElement { element, l1 })
    }

    pub fn l1_f64(&self) -> f64 {
        self.l1.to_c64().re
    }
}

pub fn norm_l1<S: Scalar + Signed>(ring: &RingSpec, x: &Element<S>) -> Result<S> {
    let mut total = S::zero();
    for (i, c) in x.iter() {
        total = total + c.abs() * S::from_bigint(&ring.dim_of(i)?);
    }
    Ok(total)
}

pub fn norm_quotient<S: Scalar + Signed>(ring: &RingSpec, x: &Element<S>, ideal: &RepIdeal) -> Result<S> {
    norm_l1(ring, &core(x, ideal))
}

/// The maximal ideal, or the empty ideal for ordinary rings.
pub fn max_or_empty(ring: &RingSpec) -> Result<RepIdeal> {
    match x_max(ring) {
        Ok(m) => Ok(m),
        Err(RingError::OrdinaryRing) => Ok(RepIdeal::empty(ring)),
        Err(e) => Err(e),
    }
}

/// `‖x‖_max`, the quotient norm for the maximal ideal.
pub fn norm_max<S: Scalar + Signed>(ring: &RingSpec, x: &Element<S>) -> Result<S> {
    norm_quotient(ring, x, &max_or_empty(ring)?)
}

fn weight(ring: &RingSpec, i: BasisId) -> Result<BigInt> {
    let n = self_pairing(ring, i)?;
    if n.is_zero() {
        return Err(RingError::OutOfRange(format!("{} lies in the maximal ideal, where |.| is degenerate", ring.label(i))));
    }
    Ok(n)
}

/// `|x|² = Σ n_i a_i conj(a_i)`, exactly.
pub fn norm_l2_sq<S: Scalar>(ring: &RingSpec, x: &Element<S>) -> Result<S> {
    let mut total = S::zero();
    for (i, c) in x.iter() {
        total = total + S::from_bigint(&weight(ring, i)?) * c.clone() * c.conj();
    }
    Ok(total)
}

pub fn norm_l2<S: Scalar>(ring: &RingSpec, x: &Element<S>) -> Result<f64> {
    Ok(norm_l2_sq(ring, x)?.to_c64().re.sqrt())
}

/// `⟨x, y⟩ = Tr(x y*)`, exactly.
pub fn inner<S: Scalar>(ring: &RingSpec, x: &Element<S>, y: &Element<S>) -> Result<S> {
    Ok(ring.trace(&ring.multiply(x, &ring.star(y)?)?))
}

#[derive(Clone, Debug)]
pub struct MultBound {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// `|core_max(x y)| <= ‖x‖_max |y|` for `y` supported outside `X_max`.
pub fn check_mult_bound<S: Scalar + Signed>(ring: &RingSpec, x: &Element<S>, y: &Element<S>) -> Result<MultBound> {
    let max = max_or_empty(ring)?;
    if y.support().any(|i| max.contains(i)) {
        return Err(RingError::OutOfRange("y must be supported outside the maximal ideal".into()));
    }
    let xy = core(&ring.multiply(x, y)?, &max);
    let lhs = norm_l2(ring, &xy)?;
    let rhs = norm_max(ring, x)?.to_c64().re * norm_l2(ring, y)?;
    Ok(MultBound { lhs, rhs, pass: lhs <= rhs + 1e-12 })
}

/// Estimate of `‖x‖_sup = sup_{|y|=1} |x y|` on a finite space.
#[derive(Clone, Debug)]
pub struct SupEstimate {
    pub value: f64,
    /// Basis elements spanning the space the operator was compressed to.
    pub basis_size: usize,
    /// The space is a truncation, so the value is a lower bound.
    pub truncated: bool,
    pub iterations: usize,
}

/// Largest singular value of multiplication by `x`, modulo `ideal`, on the
/// weighted ℓ² space. Finite rings use the whole complement (restricted to
/// `n_i > 0`); rule rings use the ball of radius `trunc` generated from `1`
/// and the support of `x` by multiplication with `x` and `x*`.
pub fn sup_norm_estimate(ring: &RingSpec, x: &Element, ideal: &RepIdeal, iters: usize, trunc: usize) -> Result<SupEstimate> {
    let mut space: Vec<BasisId> = Vec::new();
    let truncated = !ring.is_finite();
    if ring.is_finite() {
        for i in ring.basis_ids()? {
            if !ideal.contains(i) && !self_pairing(ring, i)?.is_zero() {
                space.push(i);
            }
        }
    } else {
        let xs = ring.star(x)?;
        let mut seen: BTreeSet<BasisId> = BTreeSet::from([ring.identity()]);
        seen.extend(x.support());
        let mut frontier: Vec<BasisId> = seen.iter().copied().collect();
        for _ in 0..trunc {
            let mut next = Vec::new();
            for &i in &frontier {
                for g in [x, &xs] {
                    for k in core(&ring.multiply(g, &Element::basis(i))?, ideal).support() {
                        if seen.insert(k) {
                            next.push(k);
                        }
                    }
                }
            }
            frontier = next;
        }
        for i in seen {
            if !ideal.contains(i) && !self_pairing(ring, i)?.is_zero() {
                space.push(i);
            }
        }
    }
    let pos: HashMap<BasisId, usize> = space.iter().enumerate().map(|(n, i)| (*i, n)).collect();
    let sqrt_n: Vec<f64> = space.iter().map(|&i| Ok(self_pairing(ring, i)?.to_f64().unwrap_or(f64::NAN).sqrt())).collect::<Result<_>>()?;
    let d = space.len();
    // m[k][i] = [x x_i : x_k] sqrt(n_k) / sqrt(n_i)
    let mut m = vec![vec![0.0; d]; d];
    for (col, &i) in space.iter().enumerate() {
        for (k, c) in core(&ring.multiply(x, &Element::basis(i))?, ideal).iter() {
            if let Some(&row) = pos.get(&k) {
                m[row][col] = c.to_f64().unwrap_or(f64::NAN) * sqrt_n[row] / sqrt_n[col];
            }
        }
    }
    let (value, iterations) = top_singular_value(&m, iters);
    Ok(SupEstimate { value, basis_size: d, truncated, iterations })
}

/// Power iteration on `MᵀM`. The start vector is generic (seeded) rather
/// than all-ones, which some elements annihilate: in a(Z/5) modulo the
/// projectives, `(J2 - J3)(J1 + J2 + J3 + J4) = 0`.
fn top_singular_value(m: &[Vec<f64>], iters: usize) -> (f64, usize) {
    let d = m.len();
    if d == 0 {
        return (0.0, 0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v: Vec<f64> = (0..d).map(|_| rng.gen_range(0.5..1.5)).collect();
    let len = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= len);
    let mut sigma = 0.0;
    for it in 1..=iters.max(1) {
        let mv: Vec<f64> = m.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
        let mut w = vec![0.0; d];
        for (row, s) in m.iter().zip(&mv) {
            for (wi, a) in w.iter_mut().zip(row) {
                *wi += a * s;
            }
        }
        let norm = w.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            return (0.0, it);
        }
        let next = norm.sqrt();
        v = w.into_iter().map(|a| a / norm).collect();
        if (next - sigma).abs() <= 1e-10 * next.max(1.0) {
            return (next, it);
        }
        sigma = next;
    }
    (sigma, iters)
}

#[derive(Clone, Debug)]
pub struct QuasinilpotentProbe {
    /// `‖x^n‖₁^(1/n)` for `n = 1..=N`.
    pub roots: Vec<f64>,
    /// Least `n` with `x^n = 0`, if one was found.
    pub nilpotent_at: Option<usize>,
    /// Whether the image of `x` modulo the maximal ideal vanishes.
    pub zero_mod_max: bool,
    /// Exactly one of: `x` is nilpotent, or every root is positive.
    pub consistent: bool,
}

pub fn quasinilpotent_probe<S: Scalar + Signed>(ring: &RingSpec, x: &Element<S>, n: usize) -> Result<QuasinilpotentProbe> {
    ring.check(x)?;
    let mut roots = Vec::with_capacity(n);
    let mut nilpotent_at = if x.is_zero() { Some(1) } else { None };
    let mut power = x.clone();
    let limit = ring.rank().map_or(n, |r| n.max(r + 1));
    for k in 1..=limit {
        if k > 1 {
            power = ring.multiply(&power, x)?;
        }
        if power.is_zero() && nilpotent_at.is_none() {
            nilpotent_at = Some(k);
        }
        if k <= n {
            let l1 = norm_l1(ring, &power)?.to_c64().re;
            roots.push(if l1 == 0.0 { 0.0 } else { l1.powf(1.0 / k as f64) });
        }
        if nilpotent_at.is_some() && k >= n {
            break;
        }
    }
    let zero_mod_max = core(x, &max_or_empty(ring)?).is_zero();
    let consistent = nilpotent_at.is_some() != roots.iter().all(|r| *r > 0.0) || roots.is_empty();
    Ok(QuasinilpotentProbe { roots, nilpotent_at, zero_mod_max, consistent })
}
