//! Homomorphisms between representation rings of cyclic p-groups.
//!
//! Modules for `Z/p^{n+1}` in characteristic `p` are Jordan blocks `J_j`,
//! `1 <= j <= p^{n+1}`, and `J_j` is stored under basis id `j - 1`. The
//! central subgroup of order `p` is generated by `g^{p^n}`; the functors
//! `F_i` pick out the blocks of its action of length exactly `i`, and the
//! quotient homomorphisms `a(Z/p^{n+1}) -> a(Z/p^n)` are assembled from them.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cyclo::Cyclotomic;
use crate::element::{BasisId, Element};
use crate::error::{Result, RingError};
use crate::families::{cyclic_p, cyclic_pn, FamilyParams};
use crate::linalg::{fp_span, FpMatrix};
use crate::ring::RingSpec;
use crate::scalar::Scalar;

/// Largest group order `p^{n+1}` accepted by the quotient maps.
pub const MAX_GROUP_ORDER: u64 = 3125;

/// The layers `F_1(M), ..., F_p(M)` of a module for `Z/p^{n+1}`, each as an
/// element of `a(Z/p^n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FSpectrum {
    pub p: u64,
    pub n: u32,
    pub layers: Vec<Element>,
}

impl FSpectrum {
    pub fn layer(&self, i: usize) -> &Element {
        &self.layers[i - 1]
    }

    /// `sum_i i * dim F_i`, which equals the dimension of the module.
    pub fn weighted_dim(&self) -> BigInt {
        self.layers
            .iter()
            .enumerate()
            .map(|(k, e)| BigInt::from(k as u64 + 1) * block_dim(e))
            .sum()
    }
}

fn block_dim(e: &Element) -> BigInt {
    e.iter().map(|(id, c)| c * BigInt::from(id.0 + 1)).sum()
}

fn check_prime(p: u64) -> Result<()> {
    if !crate::families::is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    Ok(())
}

/// `p^n`, or `BadParams` when `p^{n+1}` exceeds [`MAX_GROUP_ORDER`].
fn quotient_order(p: u64, n: u32) -> Result<u64> {
    check_prime(p)?;
    if n == 0 {
        return Err(RingError::BadParams("the quotient group must be non-trivial (n >= 1)".into()));
    }
    match p.checked_pow(n + 1) {
        Some(big) if big <= MAX_GROUP_ORDER => Ok(big / p),
        _ => Err(RingError::BadParams(format!("p^(n+1) exceeds {MAX_GROUP_ORDER}"))),
    }
}

/// A subspace of `F_p^dim`, kept as a reduced echelon basis.
#[derive(Clone, Debug)]
struct Subspace {
    basis: Vec<Vec<u64>>,
}

impl Subspace {
    fn span(p: u64, vectors: &[Vec<u64>], dim: usize) -> Self {
        Subspace { basis: fp_span(p, vectors, dim) }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn image(&self, m: &FpMatrix) -> Self {
        let vs: Vec<Vec<u64>> = self.basis.iter().map(|v| m.apply(v)).collect();
        Subspace::span(m.p, &vs, m.rows)
    }

    fn sum(&self, other: &Self, p: u64, dim: usize) -> Self {
        let vs: Vec<Vec<u64>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(p, &vs, dim)
    }

    /// Solves `sum a_i u_i = sum b_j w_j` and keeps the left-hand vectors.
    fn intersect(&self, other: &Self, p: u64, dim: usize) -> Self {
        if self.basis.is_empty() || other.basis.is_empty() {
            return Subspace { basis: Vec::new() };
        }
        let (a, b) = (self.dim(), other.dim());
        let mut m = FpMatrix::zeros(p, dim, a + b);
        for (c, u) in self.basis.iter().enumerate() {
            for (r, &x) in u.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        for (c, w) in other.basis.iter().enumerate() {
            for (r, &x) in w.iter().enumerate() {
                m.set(r, a + c, (p - x) % p);
            }
        }
        let vs: Vec<Vec<u64>> = m
            .nullspace()
            .iter()
            .map(|coef| {
                let mut v = vec![0u64; dim];
                for (u, &c) in self.basis.iter().zip(coef) {
                    for (slot, &x) in v.iter_mut().zip(u) {
                        *slot = (*slot + c * x) % p;
                    }
                }
                v
            })
            .collect();
        Subspace::span(p, &vs, dim)
    }
}

/// Matrix of the generator of `Z/p^{n+1}` on `J_j`: identity plus the
/// nilpotent shift.
fn generator_matrix(p: u64, j: usize) -> FpMatrix {
    let mut g = FpMatrix::identity(p, j);
    for r in 0..j.saturating_sub(1) {
        g.set(r, r + 1, 1);
    }
    g
}

/// Jordan type of a unipotent operator `u` on the quotient `top / bottom`
/// (both `u`-stable), as a multiplicity vector indexed by block length.
fn quotient_jordan_type(u_minus_1: &FpMatrix, top: &Subspace, bottom: &Subspace, max_block: usize) -> Vec<usize> {
    let p = u_minus_1.p;
    let dim = u_minus_1.rows;
    let base = bottom.dim();
    // ranks[k] = rank of (u-1)^k on the quotient
    let mut ranks = vec![top.dim() - base];
    let mut current = top.clone();
    for _ in 0..=max_block {
        current = current.image(u_minus_1);
        let r = current.sum(bottom, p, dim).dim() - base;
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    ranks.resize(max_block + 2, 0);
    (1..=max_block).map(|k| ranks[k - 1] + ranks[k + 1] - 2 * ranks[k]).collect()
}

/// `F_1(J_j), ..., F_p(J_j)` for the block `J_j` of `Z/p^{n+1}`, computed
/// from explicit matrices over `F_p`.
pub fn f_spectrum(p: u64, n: u32, j: u64) -> Result<FSpectrum> {
    let q = quotient_order(p, n)?;
    if j == 0 || j > p * q {
        return Err(RingError::OutOfRange(format!("block length {j} is not in 1..={}", p * q)));
    }
    let dim = j as usize;
    let g = generator_matrix(p, dim);
    let g_minus_1 = g.sub(&FpMatrix::identity(p, dim));
    let x = g.pow(q).sub(&FpMatrix::identity(p, dim));

    let kernel = Subspace::span(p, &x.nullspace(), dim);
    let everything = Subspace::span(p, &(0..dim).map(|i| unit(dim, i)).collect::<Vec<_>>(), dim);
    // images[i] = Im X^i
    let mut images = vec![everything];
    for i in 1..=p as usize {
        let next = images[i - 1].image(&x);
        images.push(next);
    }
    let filtration: Vec<Subspace> = (0..=p as usize).map(|i| kernel.intersect(&images[i], p, dim)).collect();

    let layers = (1..=p as usize)
        .map(|i| {
            let mult = quotient_jordan_type(&g_minus_1, &filtration[i - 1], &filtration[i], q as usize);
            Element::from_terms(
                mult.iter()
                    .enumerate()
                    .filter(|(_, &m)| m > 0)
                    .map(|(k, &m)| (BasisId(k as i64), BigInt::from(m))),
            )
        })
        .collect();
    Ok(FSpectrum { p, n, layers })
}

fn unit(dim: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// `F_i` applied to an element of `a(Z/p^{n+1})` by linearity.
pub fn f_spectrum_element(p: u64, n: u32, x: &Element) -> Result<Vec<Element>> {
    let mut out = vec![Element::zero(); p as usize];
    for (id, c) in x.iter() {
        let spec = f_spectrum(p, n, id.0 as u64 + 1)?;
        for (slot, layer) in out.iter_mut().zip(&spec.layers) {
            *slot = slot.add(&layer.scale(c));
        }
    }
    Ok(out)
}

/// `s_l([J_k]) = sin(k l pi / p) / sin(l pi / p)` as an exact element of
/// `Z[zeta_{2p}]`; for `l = 0` this is `k`.
pub fn cyclic_species_value(p: u64, ell: u64, k: u64) -> Cyclotomic {
    if ell == 0 {
        return Cyclotomic::integer(k);
    }
    let order = 2 * p as u32;
    (0..k as i64).fold(Cyclotomic::zero(), |acc, t| {
        acc + Cyclotomic::zeta_pow(order, ell as i64 * (k as i64 - 1 - 2 * t))
    })
}

/// Image of `[J_j]` under `s_hat_0`: write `j = 2bq + r` or `2bq - r` with
/// `0 <= r <= q`, then `[J_j] -> 2b[J_q] +- [J_r]`.
fn s_hat_zero_block(q: u64, j: u64) -> Element {
    let b = (j + q) / (2 * q);
    let centre = 2 * b * q;
    let mut out = Element::zero();
    if b > 0 {
        out.add_term(BasisId(q as i64 - 1), BigInt::from(2 * b));
    }
    if j > centre {
        out.add_term(BasisId((j - centre) as i64 - 1), BigInt::one());
    } else if j < centre {
        out.add_term(BasisId((centre - j) as i64 - 1), -BigInt::one());
    }
    out
}

/// The homomorphism `s_hat_l : a(Z/p^{n+1}) -> a(Z/p^n)` on one block.
fn s_hat_block(p: u64, n: u32, ell: u64, j: u64) -> Result<Element<Cyclotomic>> {
    let q = quotient_order(p, n)?;
    if j == 0 || j > p * q {
        return Err(RingError::OutOfRange(format!("block length {j} is not in 1..={}", p * q)));
    }
    if ell == 0 {
        return Ok(s_hat_zero_block(q, j).to_scalars());
    }
    let spec = f_spectrum(p, n, j)?;
    let mut out = Element::zero();
    for (k, layer) in spec.layers.iter().enumerate().take(p as usize - 1) {
        let weight = cyclic_species_value(p, ell, k as u64 + 1);
        out = out.add(&layer.to_scalars::<Cyclotomic>().scale(&weight));
    }
    Ok(out)
}

fn check_ell(p: u64, ell: u64) -> Result<()> {
    if ell >= p {
        return Err(RingError::BadParams(format!("ell = {ell} must lie in 0..{p}")));
    }
    Ok(())
}

/// `s_hat_l(x)` for `x` in `a(Z/p^{n+1})`, with exact cyclotomic coefficients.
pub fn s_hat<S: Scalar + Into<Cyclotomic>>(p: u64, n: u32, ell: u64, x: &Element<S>) -> Result<Element<Cyclotomic>> {
    check_ell(p, ell)?;
    quotient_order(p, n)?;
    let mut out = Element::zero();
    for (id, c) in x.iter() {
        let image = s_hat_block(p, n, ell, id.0 as u64 + 1)?;
        out = out.add(&image.scale(&c.clone().into()));
    }
    Ok(out)
}

/// Values of the species `s_{l_0} s_hat_{l_1} ... s_hat_{l_{n-1}}` of
/// `a(Z/p^n)` on `J_1, ..., J_{p^n}`. The last entry of `ells` is applied first.
pub fn species_chain(p: u64, ells: &[u64]) -> Result<Vec<Cyclotomic>> {
    check_prime(p)?;
    if ells.is_empty() {
        return Err(RingError::BadParams("a chain needs at least one index".into()));
    }
    for &ell in ells {
        check_ell(p, ell)?;
    }
    let n = ells.len() as u32;
    let order = p
        .checked_pow(n)
        .filter(|&o| o <= MAX_GROUP_ORDER)
        .ok_or_else(|| RingError::BadParams(format!("p^n exceeds {MAX_GROUP_ORDER}")))?;
    (1..=order)
        .map(|j| {
            let mut x: Element<Cyclotomic> = Element::basis(BasisId(j as i64 - 1));
            for level in (1..n).rev() {
                x = s_hat(p, level, ells[level as usize], &x)?;
            }
            Ok(x.iter().fold(Cyclotomic::zero(), |acc, (id, c)| {
                acc + c.clone() * cyclic_species_value(p, ells[0], id.0 as u64 + 1)
            }))
        })
        .collect()
}

/// All `p^n` chain species in lexicographic order of their index tuples.
pub fn all_chain_species(p: u64, n: u32) -> Result<Vec<(Vec<u64>, Vec<Complex64>)>> {
    if n == 0 {
        return Err(RingError::BadParams("n must be at least 1".into()));
    }
    let count = p.checked_pow(n).filter(|&c| c <= MAX_GROUP_ORDER).ok_or_else(|| {
        RingError::BadParams(format!("p^n exceeds {MAX_GROUP_ORDER}"))
    })?;
    (0..count)
        .map(|mut code| {
            let mut ells = vec![0; n as usize];
            for slot in ells.iter_mut().rev() {
                *slot = code % p;
                code /= p;
            }
            let values = species_chain(p, &ells)?.iter().map(Scalar::to_c64).collect();
            Ok((ells, values))
        })
        .collect()
}

/// `a(Z/p^n)`: the presentation ring when `n = 1`, the Jordan-type table otherwise.
pub fn cyclic_ring(p: u64, n: u32) -> Result<RingSpec> {
    match n {
        0 => Err(RingError::BadParams("n must be at least 1".into())),
        1 => Ok(cyclic_p(p)?.with_family(FamilyParams::CyclicP { p })),
        _ => Ok(cyclic_pn(p, n)?.with_family(FamilyParams::CyclicPn { p, n })),
    }
}

fn cyclic_prime(ring: &RingSpec) -> Result<u64> {
    match ring.family() {
        Some(FamilyParams::CyclicP { p }) | Some(FamilyParams::CyclicPn { p, n: 1 }) => Ok(*p),
        _ => Err(RingError::UnsupportedRing(format!(
            "Adams operations are implemented for a(Z/p) only, not {}",
            ring.name()
        ))),
    }
}

/// The representative in `1..p` that `psi^m` reduces to on `a(Z/p)`: powers
/// of `p` act trivially and `psi` is periodic of period `2p` and even in `m`.
pub fn psi_reduced_index(p: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(RingError::OutOfRange("psi^m needs m >= 1".into()));
    }
    let mut m = m;
    while m.is_multiple_of(p) {
        m /= p;
    }
    let r = m % (2 * p);
    Ok(if r > p { 2 * p - r } else { r })
}

/// The Adams operation `psi^m` on `a(Z/p)`.
pub fn psi(ring: &RingSpec, m: u64, x: &Element) -> Result<Element> {
    let p = cyclic_prime(ring)?;
    ring.check(x)?;
    let r = psi_reduced_index(p, m)?;
    let j = |k: u64| BasisId(k as i64 - 1);
    let mut gen = Element::basis(j(r + 1));
    if r >= 2 {
        gen.add_term(j(r - 1), -BigInt::one());
    }
    // images[k - 1] = f_k(psi^r [J_2]) = psi^r [J_k]
    let mut images: Vec<Element> = vec![ring.one(), gen.clone()];
    while images.len() < p as usize {
        let k = images.len();
        let next = ring.multiply(&gen, &images[k - 1])?.sub(&images[k - 2]);
        images.push(next);
    }
    Ok(x.iter().fold(Element::zero(), |acc, (id, c)| acc.add(&images[id.index()].scale(c))))
}

/// The weighted l1 norm `sum |c_j| j` on a cyclic ring.
pub fn cyclic_l1(x: &Element) -> BigInt {
    x.iter().map(|(id, c)| c.abs() * BigInt::from(id.0 + 1)).sum()
}

/// One row of a chain-species report.
#[derive(Clone, Debug, Serialize)]
pub struct ChainRow {
    pub ells: Vec<u64>,
    pub values: Vec<[f64; 2]>,
}

pub fn chain_rows(p: u64, n: u32) -> Result<Vec<ChainRow>> {
    Ok(all_chain_species(p, n)?
        .into_iter()
        .map(|(ells, values)| ChainRow { ells, values: values.iter().map(|z| [z.re, z.im]).collect() })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn blocks(pairs: &[(u64, i64)]) -> Element {
        Element::from_ints(pairs.iter().map(|&(j, c)| (j as usize - 1, c)))
    }

    /// Independent count: a block of length `j` for the generator restricts to
    /// the central subgroup as blocks of length `ceil` and `floor` of `j/q`,
    /// and the socle of each length-`i` block spans a block of `g` of length
    /// `min(q, max(0, j - (i-1)q)) - min(q, max(0, j - iq))`.
    fn layer_oracle(p: u64, q: u64, j: u64, i: u64) -> Element {
        let clip = |v: i64| v.clamp(0, q as i64);
        let size = clip(j as i64 - (i as i64 - 1) * q as i64) - clip(j as i64 - (i * q) as i64);
        let _ = p;
        if size == 0 {
            Element::zero()
        } else {
            blocks(&[(size as u64, 1)])
        }
    }

    #[test]
    fn layers_match_block_count() {
        for &(p, n) in &[(2u64, 1u32), (2, 2), (3, 1), (2, 3), (5, 1), (3, 2)] {
            let q = p.pow(n);
            for j in 1..=p * q {
                let spec = f_spectrum(p, n, j).unwrap();
                assert_eq!(spec.weighted_dim(), BigInt::from(j));
                for i in 1..=p {
                    assert_eq!(spec.layer(i as usize), &layer_oracle(p, q, j, i), "p={p} n={n} j={j} i={i}");
                }
            }
        }
    }

    #[test]
    fn printed_layers() {
        let z4 = f_spectrum(2, 1, 3).unwrap();
        assert_eq!(z4.layers, vec![blocks(&[(1, 1)]), blocks(&[(1, 1)])]);
        let z9 = f_spectrum(3, 1, 5).unwrap();
        assert_eq!(z9.layers, vec![blocks(&[(1, 1)]), blocks(&[(2, 1)]), Element::zero()]);
        let one = f_spectrum(3, 2, 1).unwrap();
        assert_eq!(one.layers, vec![blocks(&[(1, 1)]), Element::zero(), Element::zero()]);
        assert!(matches!(f_spectrum(2, 1, 5), Err(RingError::OutOfRange(_))));
    }

    #[test]
    fn s_hat_examples() {
        let x = blocks(&[(3, 1)]);
        let image = s_hat(2, 1, 0, &x).unwrap();
        assert_eq!(image, blocks(&[(2, 2), (1, -1)]).to_scalars());
        let image = s_hat(2, 2, 1, &blocks(&[(6, 1)])).unwrap();
        assert_eq!(image, blocks(&[(2, 1)]).to_scalars());
        for ell in 0..3 {
            assert_eq!(s_hat(3, 1, ell, &blocks(&[(1, 1)])).unwrap(), blocks(&[(1, 1)]).to_scalars());
        }
        assert!(matches!(s_hat(3, 1, 3, &x), Err(RingError::BadParams(_))));
    }

    #[test]
    fn s_hat_is_multiplicative() {
        for &(p, n) in &[(2u64, 1u32), (2, 2), (3, 1)] {
            let big = cyclic_ring(p, n + 1).unwrap();
            let small = cyclic_ring(p, n).unwrap();
            let q = p.pow(n + 1);
            for ell in 0..p {
                for a in 1..=q {
                    for b in a..=q {
                        let (x, y) = (blocks(&[(a, 1)]), blocks(&[(b, 1)]));
                        let lhs = s_hat(p, n, ell, &big.multiply(&x, &y).unwrap()).unwrap();
                        let rhs = small
                            .multiply(&s_hat(p, n, ell, &x).unwrap(), &s_hat(p, n, ell, &y).unwrap())
                            .unwrap();
                        assert_eq!(lhs, rhs, "p={p} n={n} ell={ell} J{a} J{b}");
                    }
                }
            }
        }
    }

    #[test]
    fn chain_values() {
        let z9 = species_chain(3, &[0, 1]).unwrap();
        assert_eq!(z9[3], Cyclotomic::integer(3));
        let z4 = species_chain(2, &[1, 1]).unwrap();
        assert_eq!(z4[2], Cyclotomic::integer(1));
        let dims = species_chain(3, &[0, 0]).unwrap();
        for (j, v) in dims.iter().enumerate() {
            assert_eq!(*v, Cyclotomic::integer(j as i64 + 1));
        }
        let all = all_chain_species(2, 2).unwrap();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn psi_examples() {
        let ring = cyclic_ring(5, 1).unwrap();
        let j2 = blocks(&[(2, 1)]);
        assert_eq!(psi(&ring, 2, &j2).unwrap(), blocks(&[(3, 1), (1, -1)]));
        for j in 1..=5 {
            let x = blocks(&[(j, 1)]);
            assert_eq!(psi(&ring, 1, &x).unwrap(), x);
            assert_eq!(psi(&ring, 5, &x).unwrap(), x);
        }
        // s_1(psi^2 J2) = 2 cos(2 pi / 5)
        let image = psi(&ring, 2, &j2).unwrap();
        let s1: f64 = image
            .iter()
            .map(|(id, c)| c.to_f64().unwrap() * cyclic_species_value(5, 1, id.0 as u64 + 1).to_c64().re)
            .sum();
        assert!((s1 - 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
        assert_eq!(psi_reduced_index(5, 7).unwrap(), 3);
        assert_eq!(psi_reduced_index(5, 12).unwrap(), 2);
        let other = cyclic_ring(2, 2).unwrap();
        assert!(matches!(psi(&other, 2, &j2), Err(RingError::UnsupportedRing(_))));
    }
}
