//! Tensor products of modules for cyclic `p`-groups, computed from Jordan
//! types over `F_p`, plus the closed formula for `J_{q+1} J_j` and the
//! compact exponent notation used for golden tables.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::element::{BasisId, Element};
use crate::error::{Result, RingError};
use crate::families::is_prime;
use crate::ring::{BasisInfo, RingSpec};

/// Default bound on `p^n` for [`cyclic_pn`]; chosen so a full table builds in
/// about twenty seconds at the cap.
pub const CYCLIC_PN_CAP: u64 = 125;

fn checked_power(p: u64, n: u32) -> Result<u64> {
    p.checked_pow(n).ok_or(RingError::CapExceeded { size: u64::MAX, cap: CYCLIC_PN_CAP })
}

/// Rank over `F_p` of a dense `rows x cols` matrix stored row-major with
/// entries in `0..p`. The buffer is clobbered.
fn rank_mod_p(m: &mut [u32], rows: usize, cols: usize, p: u32) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| m[r * cols + c] != 0) else { continue };
        if pr != rank {
            for k in c..cols {
                m.swap(rank * cols + k, pr * cols + k);
            }
        }
        let inv = inverse(m[rank * cols + c], p);
        for k in c..cols {
            m[rank * cols + k] = m[rank * cols + k] * inv % p;
        }
        for r in rank + 1..rows {
            let f = m[r * cols + c];
            if f == 0 {
                continue;
            }
            let g = p - f;
            for k in c..cols {
                let y = m[rank * cols + k];
                if y != 0 {
                    m[r * cols + k] = (m[r * cols + k] + g * y) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn inverse(a: u32, p: u32) -> u32 {
    let (mut r, mut base, mut e) = (1u64, u64::from(a % p), p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % u64::from(p);
        }
        base = base * base % u64::from(p);
        e >>= 1;
    }
    r as u32
}

/// Block sizes of the Jordan form of `x + y` on `F_p[x,y]/(x^a, y^b)`,
/// which is the Jordan type of a generator of `Z/p^n` on `J_a ⊗ J_b`
/// (the substitution `x -> x(1+y)` turns `x + y + xy` into `x + y`).
///
/// `x + y` is homogeneous, so the rank of `(x+y)^k` is a sum of ranks of
/// maps between graded pieces, with binomial entries mod `p`.
pub fn jordan_tensor_oracle(p: u64, n: u32, a: u64, b: u64) -> Result<Element> {
    if !is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    let q = checked_power(p, n)?;
    if a == 0 || b == 0 || a > q || b > q {
        return Err(RingError::OutOfRange(format!("blocks must lie in 1..={q}, got {a} and {b}")));
    }
    let blocks = tensor_blocks(p, a as usize, b as usize);
    Ok(Element::from_terms(blocks.into_iter().map(|(s, m)| (BasisId(s as i64 - 1), BigInt::from(m)))))
}

/// Multiset of Jordan block sizes as `size -> multiplicity`.
fn tensor_blocks(p: u64, a: usize, b: usize) -> BTreeMap<usize, u64> {
    let p = u32::try_from(p).expect("prime fits in u32");
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let top = a + b - 2;
    // Pascal's triangle mod p up to top.
    let mut binom = vec![vec![0u32; top + 2]; top + 2];
    for k in 0..=top + 1 {
        binom[k][0] = 1 % p;
        for s in 1..=k {
            binom[k][s] = (binom[k - 1][s - 1] + if s < k { binom[k - 1][s] } else { 0 }) % p;
        }
    }
    // Graded piece t has monomials x^u y^(t-u) with u in lo(t)..=hi(t).
    let lo = |t: usize| t.saturating_sub(b - 1);
    let hi = |t: usize| t.min(a - 1);
    let mut buf = Vec::new();
    let mut rank_of_power = |k: usize| -> usize {
        if k == 0 {
            return a * b;
        }
        if k > top {
            return 0;
        }
        // The pairing x^u y^v <-> x^(a-1-u) y^(b-1-v) makes the map
        // A_t -> A_(t+k) the transpose of A_(top-t-k) -> A_(top-t), so only
        // half of the pieces need a rank computation.
        let mut total = 0;
        for t in 0..=top - k {
            let mirror = top - t - k;
            if mirror < t {
                break;
            }
            let (s0, s1, d0, d1) = (lo(t), hi(t), lo(t + k), hi(t + k));
            let rows = s1 + 1 - s0;
            let cols = d1 + 1 - d0;
            buf.clear();
            // (x+y)^k x^u y^v = sum_s C(k,s) x^(u+s) y^(v+k-s).
            for u in s0..=s1 {
                buf.extend((d0..=d1).map(|w| if w >= u && w - u <= k { binom[k][w - u] } else { 0 }));
            }
            let r = rank_mod_p(&mut buf, rows, cols, p);
            total += if mirror == t { r } else { 2 * r };
        }
        total
    };
    // Blocks never exceed a + b - 1, and (x+y)^k vanishes once k > top.
    let ranks: Vec<usize> = (0..=top + 2).map(&mut rank_of_power).collect();
    let mut out = BTreeMap::new();
    for k in 1..=top + 1 {
        // #blocks of size >= k is r_{k-1} - r_k; exactly k is the second difference.
        let at_least_k = ranks[k - 1] - ranks[k];
        let at_least_k1 = ranks[k] - ranks[k + 1];
        let exactly = at_least_k - at_least_k1;
        if exactly > 0 {
            out.insert(k, exactly as u64);
        }
    }
    out
}

/// `a(Z/p^n)` with the default cap on `p^n`.
pub fn cyclic_pn(p: u64, n: u32) -> Result<RingSpec> {
    cyclic_pn_with_cap(p, n, CYCLIC_PN_CAP)
}

/// `a(Z/p^n)`, basis `J1..J_{p^n}`, every product from the Jordan oracle.
pub fn cyclic_pn_with_cap(p: u64, n: u32, cap: u64) -> Result<RingSpec> {
    if !is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    if n == 0 {
        return Err(RingError::BadParams("cyclic-pn needs n >= 1".into()));
    }
    let q = checked_power(p, n)?;
    if q > cap {
        return Err(RingError::CapExceeded { size: q, cap });
    }
    let qs = q as usize;
    // Pairs with a + b <= q come from the oracle; the rest follow from the
    // Heller shift J_a ⊗ J_b = J_(q-b) ⊗ J_(q-a) + (a+b-q) J_q.
    let pairs: Vec<(usize, usize)> = (1..=qs).flat_map(|a| (a..=qs - a).map(move |b| (a, b))).collect();
    let direct: HashMap<(usize, usize), BTreeMap<usize, u64>> =
        pairs.into_par_iter().map(|(a, b)| ((a, b), tensor_blocks(p, a, b))).collect();
    let mut products = Vec::with_capacity(qs * (qs + 1) / 2);
    for a in 1..=qs {
        for b in a..=qs {
            let blocks = if a + b <= qs {
                direct[&(a, b)].clone()
            } else {
                let (c, d) = (qs - b, qs - a);
                let mut m = if c == 0 { BTreeMap::new() } else { direct[&(c, d)].clone() };
                *m.entry(qs).or_default() += (a + b - qs) as u64;
                m
            };
            let terms = blocks.into_iter().map(|(s, m)| (s - 1, BigInt::from(m))).collect();
            products.push(((a - 1, b - 1), terms));
        }
    }
    let basis =
        (1..=qs).map(|j| BasisInfo::new(format!("J{j}"), j as i64, j - 1, if j == qs { 1 } else { 0 })).collect();
    RingSpec::from_pairs(format!("a(Z/{q})"), 0, true, basis, products)
}

/// The closed formula for `J_{q+1} J_j` in `a(Z/pq)`, `q = p^(n-1)`,
/// `1 <= j <= pq`. Writing `j = j0 q + j1` with `1 <= j1 <= q`:
///
/// * `j <= q`: `J_{q+j1} + (j1-1) J_q`
/// * `q < j <= (p-1) q`: `J_{(j0+1)q+j1} + (j1-1) J_{(j0+1)q} + J_{(j0+1)q-j1}
///   + (q-j1-1) J_{j0 q} + J_{(j0-1)q+j1}`
/// * `j > (p-1) q`: `(j1+1) J_{pq} + (q-j1-1) J_{(p-1)q} + J_{(p-2)q+j1}`
///
/// Coefficients of `-1` may occur in intermediate terms; they cancel.
pub fn green_formula(p: u64, n: u32, j: u64) -> Result<Element> {
    if !is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    if n < 2 {
        return Err(RingError::BadParams("the formula needs n >= 2".into()));
    }
    let q = checked_power(p, n - 1)? as i64;
    let big = q * p as i64;
    let j = j as i64;
    if j < 1 || j > big {
        return Err(RingError::OutOfRange(format!("j must lie in 1..={big}")));
    }
    let j0 = (j - 1) / q;
    let j1 = j - j0 * q;
    let mut e = Element::<BigInt>::zero();
    let mut add = |size: i64, c: i64| {
        if size > 0 && c != 0 {
            e.add_term(BasisId(size - 1), BigInt::from(c));
        }
    };
    let p = p as i64;
    if j <= q {
        add(q + j1, 1);
        add(q, j1 - 1);
    } else if j <= (p - 1) * q {
        add((j0 + 1) * q + j1, 1);
        add((j0 + 1) * q, j1 - 1);
        add((j0 + 1) * q - j1, 1);
        add(j0 * q, q - j1 - 1);
        add((j0 - 1) * q + j1, 1);
    } else {
        add(p * q, j1 + 1);
        add((p - 1) * q, q - j1 - 1);
        add((p - 2) * q + j1, 1);
    }
    Ok(e)
}

/// Renders a non-negative element of `a(Z/q)` as descending block sizes
/// with exponents for multiplicities, e.g. `4^21` or `11 9 5^3 1`. Parts are
/// separated by spaces when `q >= 10`.
pub fn render_compact(e: &Element, q: u64) -> String {
    let sep = if q >= 10 { " " } else { "" };
    let parts: Vec<String> = e
        .iter()
        .rev()
        .map(|(id, c)| {
            let size = id.0 + 1;
            if *c == BigInt::from(1) {
                size.to_string()
            } else {
                format!("{size}^{c}")
            }
        })
        .collect();
    parts.join(sep)
}

/// Parses the space separated form, e.g. `11 9 5^3 1`, into an element.
pub fn parse_compact(s: &str) -> Result<Element> {
    let mut e = Element::zero();
    for part in s.split_whitespace() {
        let (size, mult) = match part.split_once('^') {
            Some((a, b)) => (a, b),
            None => (part, "1"),
        };
        let size: i64 = size.parse().map_err(|_| RingError::Parse(format!("bad block size in {part:?}")))?;
        let mult: i64 = mult.parse().map_err(|_| RingError::Parse(format!("bad multiplicity in {part:?}")))?;
        if size < 1 {
            return Err(RingError::Parse(format!("bad block size in {part:?}")));
        }
        e.add_term(BasisId(size - 1), BigInt::from(mult));
    }
    Ok(e)
}
