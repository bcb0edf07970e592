//! Species (ring homomorphisms to `C`) of finite-rank rings, the exact nil
//! radical, character tables and the species formula for gamma.
//!
//! Enumeration quotients by the nil radical first, then reads the species
//! off as the eigenvectors of the transposed multiplication matrix of a
//! random element of the semisimple quotient.

use std::cmp::Ordering;
use std::fmt::Write as _;

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::element::{BasisId, Element};
use crate::error::{Result, RingError};
use crate::families::FamilyParams;
use crate::ideals::RepIdeal;
use crate::linalg::QMatrix;
use crate::ring::RingSpec;
use crate::scalar::{ratio_to_f64, Scalar};

/// Largest rank handled by enumeration.
pub const MAX_SPECIES_RANK: usize = 512;
/// Homomorphism residual allowed, relative to `max(1, dim_i dim_j)`.
pub const VERIFY_TOL: f64 = 1e-8;
/// Below this a value counts as zero.
pub const VANISH_TOL: f64 = 1e-9;

/// Seed for the random element whose eigenvectors are the species.
pub const SPECIES_SEED: u64 = 0;

/// A homomorphism to `C`, stored by its values on the basis `0..rank`.
#[derive(Clone, Debug)]
pub struct Species {
    pub values: Vec<Complex64>,
    pub dimension_bounded: bool,
    pub brauer: bool,
    pub exact_hint: Option<String>,
}

impl Species {
    pub fn value(&self, id: BasisId) -> Complex64 {
        self.values[id.index()]
    }

    pub fn eval<S: Scalar>(&self, x: &Element<S>) -> Complex64 {
        x.iter().map(|(i, c)| c.to_c64() * self.values[i.index()]).sum()
    }

    /// Vanishes (to [`VANISH_TOL`]) on every member of the ideal.
    pub fn vanishes_on(&self, ideal: &RepIdeal) -> bool {
        ideal.member_list().is_ok_and(|m| m.iter().all(|i| self.values[i.index()].norm() < VANISH_TOL))
    }

    pub fn core_bounded(&self, ideal: &RepIdeal) -> bool {
        self.dimension_bounded && self.vanishes_on(ideal)
    }

    /// Every value is real.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im.abs() < VANISH_TOL)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpeciesFlags {
    pub dimension_bounded: bool,
    pub core_bounded: bool,
    pub brauer: bool,
}

pub fn classify(s: &Species, ideal: &RepIdeal) -> SpeciesFlags {
    SpeciesFlags { dimension_bounded: s.dimension_bounded, core_bounded: s.core_bounded(ideal), brauer: s.brauer }
}

/// Basis of the nil radical of `Q ⊗ ring`, in reduced echelon form.
#[derive(Clone, Debug)]
pub struct RadicalReport {
    /// Primitive integral multiples of the echelon rows.
    pub basis: Vec<Element<BigRational>>,
    pub rank: usize,
    /// Pivot index of each basis row; the row has coefficient 1 there
    /// before scaling and 0 at the other pivots.
    pivots: Vec<BasisId>,
    /// The echelon rows themselves (pivot coefficient 1).
    rows: Vec<Element<BigRational>>,
}

impl RadicalReport {
    pub fn is_semisimple(&self) -> bool {
        self.rank == 0
    }
}

fn finite_rank(ring: &RingSpec) -> Result<usize> {
    let r = ring.rank().ok_or_else(|| RingError::UnsupportedRing("species need a finite-rank ring".into()))?;
    if r > MAX_SPECIES_RANK {
        return Err(RingError::RankExceeded { rank: r, limit: MAX_SPECIES_RANK });
    }
    Ok(r)
}

/// Dense structure constants `c[i][j] = [(k, c_ijk)]` over `0..r`.
fn structure_constants(ring: &RingSpec, r: usize) -> Result<Vec<Vec<Vec<(usize, BigInt)>>>> {
    let mut c = vec![vec![Vec::new(); r]; r];
    for i in 0..r {
        for j in i..r {
            let t: Vec<(usize, BigInt)> =
                ring.basis_product(BasisId(i as i64), BasisId(j as i64))?.iter().map(|(k, v)| (k.index(), v.clone())).collect();
            c[j][i] = t.clone();
            c[i][j] = t;
        }
    }
    Ok(c)
}

const MODULUS: u64 = (1 << 61) - 1;

fn mod_reduce(v: &BigInt) -> u64 {
    let m = BigInt::from(MODULUS);
    let r = v.mod_floor(&m);
    r.to_u64().unwrap()
}

fn rank_mod(mut rows: Vec<Vec<u64>>) -> usize {
    let n = rows.first().map_or(0, Vec::len);
    let p = MODULUS as u128;
    let mut rank = 0;
    for c in 0..n {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pr);
        let inv = pow_mod(rows[rank][c], MODULUS - 2);
        let pivot: Vec<u64> = rows[rank].iter().map(|&v| (v as u128 * inv as u128 % p) as u64).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[c] as u128;
            if f == 0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                let sub = f * *y as u128 % p;
                *x = ((*x as u128 + p - sub) % p) as u64;
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let p = MODULUS as u128;
    let mut r: u128 = 1;
    let mut base = b as u128 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    b = r as u64;
    b
}

/// Kernel of the trace form `T(a, b) = tr(L_{ab})`, which in characteristic
/// zero is the nil radical of a finite-dimensional commutative algebra.
pub fn nilradical(ring: &RingSpec) -> Result<RadicalReport> {
    let r = finite_rank(ring)?;
    let c = structure_constants(ring, r)?;
    // t_k = tr(L_{x_k}) = sum_l c_{k,l,l}
    let t: Vec<BigInt> = (0..r)
        .map(|k| (0..r).map(|l| c[k][l].iter().find(|(m, _)| *m == l).map_or(BigInt::zero(), |(_, v)| v.clone())).sum())
        .collect();
    let gram: Vec<Vec<BigInt>> =
        (0..r).map(|i| (0..r).map(|j| c[i][j].iter().map(|(k, v)| v * &t[*k]).sum()).collect()).collect();
    let empty = RadicalReport { basis: vec![], rank: 0, pivots: vec![], rows: vec![] };
    if rank_mod(gram.iter().map(|row| row.iter().map(mod_reduce).collect()).collect()) == r {
        return Ok(empty);
    }
    let mut g = QMatrix::zeros(r, r);
    for (i, row) in gram.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            g.set(i, j, BigRational::from_integer(v.clone()));
        }
    }
    let kernel = g.nullspace();
    if kernel.is_empty() {
        return Ok(empty);
    }
    // Echelon form with the identity column last, so it is never a pivot.
    let one = ring.identity().index();
    let order: Vec<usize> = (0..r).filter(|&i| i != one).chain(std::iter::once(one)).collect();
    let mut k = QMatrix::zeros(kernel.len(), r);
    for (row, v) in kernel.iter().enumerate() {
        for (col, &orig) in order.iter().enumerate() {
            k.set(row, col, v[orig].clone());
        }
    }
    let piv = k.rref();
    let mut rows = Vec::new();
    let mut basis = Vec::new();
    let mut pivots = Vec::new();
    for (row, &pc) in piv.iter().enumerate() {
        let e = Element::from_terms(order.iter().enumerate().map(|(col, &orig)| (BasisId(orig as i64), k.get(row, col).clone())));
        basis.push(primitive(&e));
        rows.push(e);
        pivots.push(BasisId(order[pc] as i64));
    }
    Ok(RadicalReport { rank: rows.len(), basis, pivots, rows })
}

/// Scales a rational vector to a primitive integer vector with positive
/// leading coefficient.
fn primitive(e: &Element<BigRational>) -> Element<BigRational> {
    let lcm = e.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = e.iter().map(|(_, c)| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let lead_negative = ints.first().is_some_and(|v| v.is_negative());
    let mut scale = BigRational::new(lcm, if g.is_zero() { BigInt::one() } else { g });
    if lead_negative {
        scale = -scale;
    }
    e.scale(&scale)
}

/// Every species of a finite-rank ring, in descending lexicographic order
/// of their (rounded) value vectors, so the dimension species comes first.
pub fn enumerate_species(ring: &RingSpec) -> Result<Vec<Species>> {
    enumerate_species_seeded(ring, SPECIES_SEED)
}

pub fn enumerate_species_seeded(ring: &RingSpec, seed: u64) -> Result<Vec<Species>> {
    let r = finite_rank(ring)?;
    let c = structure_constants(ring, r)?;
    let rad = nilradical(ring)?;
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; r];
        for p in &rad.pivots {
            v[p.index()] = true;
        }
        v
    };
    let free: Vec<usize> = (0..r).filter(|&i| !is_pivot[i]).collect();
    let mut pos = vec![usize::MAX; r];
    for (n, &f) in free.iter().enumerate() {
        pos[f] = n;
    }
    // x_pivot = -sum_l b_l x_l modulo the radical.
    let reduce: Vec<Vec<(usize, f64)>> = {
        let mut v = vec![Vec::new(); r];
        for (row, p) in rad.rows.iter().zip(&rad.pivots) {
            v[p.index()] =
                row.iter().filter(|(i, _)| *i != *p).map(|(i, b)| (pos[i.index()], -ratio_to_f64(b))).collect();
        }
        v
    };
    let dims: Vec<f64> = ring.basis_infos()?.iter().map(|b| b.dim.to_f64().unwrap_or(f64::INFINITY)).collect();
    let n = free.len();
    let one = pos[ring.identity().index()];
    let mut last_err = None;
    for attempt in 0..4u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let z: Vec<f64> = free.iter().map(|_| f64::from(rng.gen_range(-50i32..=50)) / 10.0).collect();
        // m[k][j] = coordinate k of z x_j in the quotient.
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for (jn, &j) in free.iter().enumerate() {
            for (iz, &i) in free.iter().enumerate() {
                if z[iz] == 0.0 {
                    continue;
                }
                for (k, v) in &c[i][j] {
                    let w = z[iz] * v.to_f64().unwrap_or(f64::INFINITY);
                    if is_pivot[*k] {
                        for (l, b) in &reduce[*k] {
                            m[(*l, jn)] += Complex64::new(w * b, 0.0);
                        }
                    } else {
                        m[(pos[*k], jn)] += Complex64::new(w, 0.0);
                    }
                }
            }
        }
        match eigen_species(&m.transpose(), one) {
            Ok(vectors) => {
                let mut out = Vec::with_capacity(vectors.len());
                for v in vectors {
                    let mut values = vec![Complex64::zero(); r];
                    for (jn, &j) in free.iter().enumerate() {
                        values[j] = v[jn];
                    }
                    for p in &rad.pivots {
                        values[p.index()] = reduce[p.index()].iter().map(|(l, b)| v[*l] * b).sum();
                    }
                    out.push(values);
                }
                match verify(&c, &dims, &out) {
                    Ok(()) => return Ok(finish(ring, &dims, out)),
                    Err(e) => last_err = Some(e),
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| RingError::NumericalFailure("species enumeration failed".into())))
}

/// Eigenvectors of `a` from a complex Schur form, normalised so the
/// coordinate `one` equals 1.
fn eigen_species(a: &DMatrix<Complex64>, one: usize) -> Result<Vec<Vec<Complex64>>> {
    let n = a.nrows();
    let schur = Schur::try_new(a.clone(), 1e-14, 10_000)
        .ok_or_else(|| RingError::NumericalFailure("Schur decomposition did not converge".into()))?;
    let (q, t) = schur.unpack();
    let scale = t.iter().fold(1.0f64, |acc, v| acc.max(v.norm()));
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let lambda = t[(i, i)];
        let mut v = vec![Complex64::zero(); n];
        v[i] = Complex64::one();
        for k in (0..i).rev() {
            let s: Complex64 = (k + 1..=i).map(|l| t[(k, l)] * v[l]).sum();
            let d = t[(k, k)] - lambda;
            if d.norm() < 1e-9 * scale {
                return Err(RingError::NumericalFailure("clustered eigenvalues".into()));
            }
            v[k] = -s / d;
        }
        let x: Vec<Complex64> = (0..n).map(|row| (0..=i).map(|l| q[(row, l)] * v[l]).sum()).collect();
        let norm = x[one];
        if norm.norm() < 1e-12 {
            return Err(RingError::NumericalFailure("eigenvector vanishes at the identity".into()));
        }
        out.push(x.iter().map(|v| v / norm).collect());
    }
    Ok(out)
}

fn verify(c: &[Vec<Vec<(usize, BigInt)>>], dims: &[f64], species: &[Vec<Complex64>]) -> Result<()> {
    let r = c.len();
    for s in species {
        for i in 0..r {
            for j in i..r {
                let lhs: Complex64 = c[i][j].iter().map(|(k, v)| s[*k] * v.to_f64().unwrap_or(f64::INFINITY)).sum();
                let err = (lhs - s[i] * s[j]).norm();
                if !(err < VERIFY_TOL * (dims[i] * dims[j]).max(1.0)) {
                    return Err(RingError::NumericalFailure(format!("species residual {err:.2e} at ({i}, {j})")));
                }
            }
        }
    }
    Ok(())
}

fn rounded(v: f64) -> i64 {
    let r = (v * 1e6).round();
    if r == 0.0 {
        0
    } else {
        r as i64
    }
}

fn compare_values(a: &[Complex64], b: &[Complex64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = rounded(y.re).cmp(&rounded(x.re)).then(rounded(y.im).cmp(&rounded(x.im)));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

fn finish(ring: &RingSpec, dims: &[f64], mut values: Vec<Vec<Complex64>>) -> Vec<Species> {
    values.sort_by(|a, b| compare_values(a, b));
    let projective: Vec<usize> = ring.projective_support().iter().map(|i| i.index()).collect();
    values
        .into_iter()
        .map(|v| {
            let dimension_bounded = v.iter().zip(dims).all(|(s, d)| s.norm() <= d + VANISH_TOL);
            let brauer = projective.iter().any(|&i| v[i].norm() > VANISH_TOL);
            let exact_hint = hint(ring, &v);
            Species { values: v, dimension_bounded, brauer, exact_hint }
        })
        .collect()
}

fn hint(ring: &RingSpec, v: &[Complex64]) -> Option<String> {
    if let Some(FamilyParams::CyclicP { p }) = ring.family() {
        if v.len() >= 2 {
            let x = v[1].re.clamp(-2.0, 2.0);
            let k = ((x / 2.0).acos() * *p as f64 / std::f64::consts::PI).round() as u64;
            return Some(format!("J2 -> 2cos({k}π/{p})"));
        }
    }
    let integral = v.iter().all(|s| s.im.abs() < 1e-9 && (s.re - s.re.round()).abs() < 1e-9);
    integral.then(|| "integral".to_string())
}

/// Outcome of the species formula for gamma.
#[derive(Clone, Debug)]
pub struct SpeciesGamma {
    pub value: f64,
    pub witness: Species,
    /// Number of core bounded species that were maximised over.
    pub candidates: usize,
}

/// Precomputed species of one ring, for repeated gamma evaluations.
#[derive(Clone, Debug)]
pub struct SpeciesTable {
    pub species: Vec<Species>,
}

impl SpeciesTable {
    pub fn new(ring: &RingSpec) -> Result<Self> {
        Ok(SpeciesTable { species: enumerate_species(ring)? })
    }

    /// `max |s(x)|` over species that are core bounded for `ideal`.
    pub fn gamma<S: Scalar>(&self, x: &Element<S>, ideal: &RepIdeal) -> Option<SpeciesGamma> {
        let bounded: Vec<&Species> = self.species.iter().filter(|s| s.core_bounded(ideal)).collect();
        let best = bounded.iter().max_by(|a, b| a.eval(x).norm().total_cmp(&b.eval(x).norm()))?;
        Some(SpeciesGamma { value: best.eval(x).norm(), witness: (*best).clone(), candidates: bounded.len() })
    }
}

pub fn gamma_via_species(ring: &RingSpec, x: &Element, ideal: &RepIdeal) -> Result<SpeciesGamma> {
    SpeciesTable::new(ring)?
        .gamma(x, ideal)
        .ok_or_else(|| RingError::NumericalFailure("no core bounded species".into()))
}

/// Output format for tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(TableFormat::Text),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            _ => Err(RingError::Parse(format!("unknown format {s:?} (text, csv or json)"))),
        }
    }
}

/// `a+bi` with six decimals; real values drop the imaginary part.
pub fn format_complex(v: Complex64) -> String {
    let re = if v.re.abs() < 5e-7 { 0.0 } else { v.re };
    if v.im.abs() < 5e-7 {
        format!("{re:.6}")
    } else {
        let sign = if v.im < 0.0 { '-' } else { '+' };
        format!("{re:.6}{sign}{:.6}i", v.im.abs())
    }
}

/// Species as JSON following the documented schema.
pub fn species_json(ring: &RingSpec, species: &[Species], radical_rank: usize) -> Result<Value> {
    let labels: Vec<String> = ring.basis_ids()?.into_iter().map(|i| ring.label(i)).collect();
    Ok(json!({
        "ring": ring.name(),
        "basis": labels,
        "species": species.iter().map(|s| json!({
            "values": s.values.iter().map(|v| json!({"re": v.re, "im": v.im})).collect::<Vec<_>>(),
            "flags": {"dimension_bounded": s.dimension_bounded, "brauer": s.brauer},
            "hint": s.exact_hint,
        })).collect::<Vec<_>>(),
        "nilradical_rank": radical_rank,
    }))
}

/// Rows are basis elements, columns species.
pub fn species_table(ring: &RingSpec, format: TableFormat) -> Result<String> {
    let species = enumerate_species(ring)?;
    let rad = nilradical(ring)?;
    render_table(ring, &species, rad.rank, format)
}

pub fn render_table(ring: &RingSpec, species: &[Species], radical_rank: usize, format: TableFormat) -> Result<String> {
    let ids = ring.basis_ids()?;
    let mut out = String::new();
    match format {
        TableFormat::Json => {
            out = serde_json::to_string_pretty(&species_json(ring, species, radical_rank)?).expect("json");
            out.push('\n');
        }
        TableFormat::Csv => {
            out.push_str("basis");
            for k in 0..species.len() {
                let _ = write!(out, ",s{}", k + 1);
            }
            out.push('\n');
            for i in &ids {
                out.push_str(&ring.label(*i));
                for s in species {
                    let _ = write!(out, ",{}", format_complex(s.value(*i)));
                }
                out.push('\n');
            }
        }
        TableFormat::Text => {
            let cells: Vec<Vec<String>> =
                ids.iter().map(|i| species.iter().map(|s| format_complex(s.value(*i))).collect()).collect();
            let label_w = ids.iter().map(|i| ring.label(*i).chars().count()).max().unwrap_or(0);
            let col_w = cells.iter().flatten().map(String::len).max().unwrap_or(0).max(3);
            let _ = write!(out, "{:label_w$}", "");
            for k in 0..species.len() {
                let _ = write!(out, "  {:>col_w$}", format!("s{}", k + 1));
            }
            out.push('\n');
            for (i, row) in ids.iter().zip(&cells) {
                let _ = write!(out, "{:<label_w$}", ring.label(*i));
                for v in row {
                    let _ = write!(out, "  {v:>col_w$}");
                }
                out.push('\n');
            }
            for (k, s) in species.iter().enumerate() {
                let mut flags = Vec::new();
                if s.dimension_bounded {
                    flags.push("dimension bounded");
                }
                if s.brauer {
                    flags.push("Brauer");
                }
                let hint = s.exact_hint.as_deref().map(|h| format!(" [{h}]")).unwrap_or_default();
                let _ = writeln!(out, "s{}: {}{hint}", k + 1, if flags.is_empty() { "-".into() } else { flags.join(", ") });
            }
            if radical_rank == 0 {
                out.push_str("nil radical: 0 (semisimple)\n");
            } else {
                let _ = writeln!(out, "nil radical: rank {radical_rank}");
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub symmetric: bool,
    pub counterexample: Option<String>,
}

/// Checks `s(x*) = conj(s(x))` for every species and basis element.
pub fn symmetry_check(ring: &RingSpec) -> Result<SymmetryReport> {
    let species = enumerate_species(ring)?;
    for (k, s) in species.iter().enumerate() {
        for i in ring.basis_ids()? {
            let star = ring.star_of(i)?;
            if (s.value(star) - s.value(i).conj()).norm() > VERIFY_TOL {
                return Ok(SymmetryReport {
                    symmetric: false,
                    counterexample: Some(format!("s{} at {}: {} vs {}", k + 1, ring.label(i), format_complex(s.value(star)), format_complex(s.value(i).conj()))),
                });
            }
        }
    }
    Ok(SymmetryReport { symmetric: true, counterexample: None })
}

/// Dimension of the joint kernel of the species on `Q^rank`, by numerical
/// rank of the species matrix.
pub fn species_kernel_dim(rank: usize, species: &[Species]) -> usize {
    if species.is_empty() {
        return rank;
    }
    let m = DMatrix::<Complex64>::from_fn(species.len(), rank, |k, i| species[k].values[i]);
    let sv = m.svd(false, false).singular_values;
    let top = sv.iter().fold(0.0f64, |a, v| a.max(*v));
    rank - sv.iter().filter(|v| **v > 1e-9 * top.max(1.0)).count()
}

#[derive(Clone, Debug, PartialEq)]
pub enum IdempotentVerdict {
    Zero,
    One,
    /// `0 < Tr(e) < 1`, as it must be for a proper idempotent.
    Nontrivial(BigRational),
    /// A proper idempotent with trace outside `(0, 1)`.
    Violation(BigRational),
}

/// Classifies a rational idempotent of `ring` (normally a quotient by the
/// maximal ideal) by its trace.
pub fn idempotent_trace_check(ring: &RingSpec, e: &Element<BigRational>) -> Result<IdempotentVerdict> {
    ring.check(e)?;
    if ring.multiply(e, e)? != *e {
        return Err(RingError::NotIdempotent);
    }
    if e.is_zero() {
        return Ok(IdempotentVerdict::Zero);
    }
    if *e == ring.one() {
        return Ok(IdempotentVerdict::One);
    }
    let t = ring.trace(e);
    if t.is_positive() && t < BigRational::one() {
        Ok(IdempotentVerdict::Nontrivial(t))
    } else {
        Ok(IdempotentVerdict::Violation(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic_p, sweedler, z2_z4_integral};
    use crate::ideals::{quotient_ring, x_max, x_proj};

    fn real_column(s: &Species) -> Vec<f64> {
        s.values.iter().map(|v| v.re).collect()
    }

    #[test]
    fn z3_species() {
        let r = cyclic_p(3).unwrap();
        let sp = enumerate_species(&r).unwrap();
        assert_eq!(sp.len(), 3);
        let j2: Vec<f64> = sp.iter().map(|s| s.values[1].re).collect();
        for (got, want) in j2.iter().zip([2.0, 1.0, -1.0]) {
            assert!((got - want).abs() < 1e-9);
        }
        assert!(sp[0].brauer && !sp[0].core_bounded(&x_proj(&r)));
        assert!(sp[1].core_bounded(&x_proj(&r)));
    }

    #[test]
    fn sweedler_species_and_radical() {
        let s = sweedler();
        let sp = enumerate_species(&s).unwrap();
        let cols: Vec<Vec<i64>> = sp.iter().map(|s| real_column(s).iter().map(|v| v.round() as i64).collect()).collect();
        assert_eq!(cols, vec![vec![1, 1, 2, 2], vec![1, 1, 0, 0], vec![1, -1, 0, 0]]);
        let rad = nilradical(&s).unwrap();
        assert_eq!(rad.rank, 1);
        assert_eq!(s.format(&rad.basis[0], |c| c.to_string()), "P0 - P1");
        let max = x_max(&s).unwrap();
        let flags = classify(&sp[2], &max);
        assert!(flags.core_bounded && !flags.brauer);
    }

    #[test]
    fn z2z4_radical() {
        let z = z2_z4_integral();
        let rad = nilradical(&z).unwrap();
        assert_eq!(rad.rank, 1);
        assert_eq!(z.format(&rad.basis[0], |c| c.to_string()), "c7 - c8");
        assert_eq!(enumerate_species(&z).unwrap().len(), 8);
        assert!(symmetry_check(&z).unwrap().symmetric);
        assert!(nilradical(&cyclic_p(5).unwrap()).unwrap().is_semisimple());
    }

    #[test]
    fn species_gamma() {
        let r = cyclic_p(5).unwrap();
        let j3 = Element::basis(r.lookup("J3").unwrap());
        let g = gamma_via_species(&r, &j3, &x_proj(&r)).unwrap();
        let want = (3.0 * std::f64::consts::PI / 5.0).sin() / (std::f64::consts::PI / 5.0).sin();
        assert!((g.value - want).abs() < 1e-9);
        assert!((gamma_via_species(&r, &r.one(), &x_proj(&r)).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn idempotents() {
        let s = sweedler();
        let q = quotient_ring(&s, &x_max(&s).unwrap()).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let e = Element::from_terms([(q.identity(), half.clone()), (q.lookup("S1").unwrap(), half.clone())]);
        assert_eq!(idempotent_trace_check(&q, &e).unwrap(), IdempotentVerdict::Nontrivial(half));
        assert_eq!(idempotent_trace_check(&q, &Element::zero()).unwrap(), IdempotentVerdict::Zero);
        assert_eq!(idempotent_trace_check(&q, &q.one()).unwrap(), IdempotentVerdict::One);
        let r = cyclic_p(5).unwrap();
        let j2 = Element::<BigRational>::basis(r.lookup("J2").unwrap());
        assert_eq!(idempotent_trace_check(&r, &j2).unwrap_err(), RingError::NotIdempotent);
    }

    #[test]
    fn table_formats() {
        let r = cyclic_p(3).unwrap();
        let text = species_table(&r, TableFormat::Text).unwrap();
        assert!(text.contains("nil radical: 0 (semisimple)"));
        assert!(text.contains("-1.000000"));
        let csv = species_table(&r, TableFormat::Csv).unwrap();
        assert_eq!(csv.lines().next().unwrap(), "basis,s1,s2,s3");
        let json: Value = serde_json::from_str(&species_table(&r, TableFormat::Json).unwrap()).unwrap();
        assert_eq!(json["nilradical_rank"], 0);
        assert_eq!(json["species"].as_array().unwrap().len(), 3);
    }
}
