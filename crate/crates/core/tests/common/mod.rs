//! Shared helpers for the integration tests: fixture loading, a tiny
//! evaluator for the table notation, and the list of finite built-in rings.
#![allow(dead_code)]

pub mod props;

use std::path::PathBuf;

use num_bigint::BigInt;
use num_complex::Complex64;
use repring::families::{
    cyclic_p, cyclic_pn, frobenius, sweedler, taft, toy_iii, z2_z4_integral, FamilyParams,
};
use repring::{BasisId, Element, RingSpec};

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
}

/// Non-comment, non-empty lines.
pub fn data_lines(name: &str) -> Vec<String> {
    fixture(name)
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

/// A CSV fixture: header cells (after the first) and rows of (label, cells).
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<String>)>,
}

pub fn csv(name: &str) -> Table {
    let lines = data_lines(name);
    let split = |l: &str| l.split(',').map(|c| c.trim().to_string()).collect::<Vec<_>>();
    let head = split(&lines[0]);
    let rows = lines[1..]
        .iter()
        .map(|l| {
            let cells = split(l);
            (cells[0].clone(), cells[1..].to_vec())
        })
        .collect();
    Table { columns: head[1..].to_vec(), rows }
}

pub fn tau() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// Evaluates the table notation for numbers: a signed sum of monomials
/// `[int][t|u|i][^k]`, where `t` is the golden ratio, `u = 1 - t` its
/// conjugate and `i` the imaginary unit.
pub fn scalar(src: &str) -> Complex64 {
    let s: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut total = Complex64::new(0.0, 0.0);
    let mut k = 0;
    while k < s.len() {
        let mut sign = 1.0;
        if s[k] == '+' || s[k] == '-' {
            if s[k] == '-' {
                sign = -1.0;
            }
            k += 1;
        }
        let start = k;
        while k < s.len() && s[k].is_ascii_digit() {
            k += 1;
        }
        let coeff: f64 = if k > start { s[start..k].iter().collect::<String>().parse().unwrap() } else { 1.0 };
        let mut value = Complex64::new(coeff, 0.0);
        if k < s.len() && "tui".contains(s[k]) {
            let base = match s[k] {
                't' => Complex64::new(tau(), 0.0),
                'u' => Complex64::new(1.0 - tau(), 0.0),
                _ => Complex64::new(0.0, 1.0),
            };
            k += 1;
            let mut exp = 1;
            if k < s.len() && s[k] == '^' {
                k += 1;
                let st = k;
                while k < s.len() && s[k].is_ascii_digit() {
                    k += 1;
                }
                exp = s[st..k].iter().collect::<String>().parse().unwrap();
            }
            value *= base.powi(exp);
        } else if k == start {
            panic!("bad scalar {src:?}");
        }
        total += sign * value;
    }
    total
}

/// Evaluates a linear combination of blocks such as `2J4-J3` or `tJ4+tJ1`
/// into a coefficient vector indexed by block length minus one.
pub fn block_combination(src: &str, len: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    if src == "0" {
        return out;
    }
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        if (c == '+' || c == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    terms.push(cur);
    for term in terms {
        let at = term.find('J').unwrap_or_else(|| panic!("no block in {term:?}"));
        let coeff = match &term[..at] {
            "" | "+" => Complex64::new(1.0, 0.0),
            "-" => Complex64::new(-1.0, 0.0),
            c => scalar(c),
        };
        let j: usize = term[at + 1..].parse().unwrap();
        out[j - 1] += coeff;
    }
    out
}

/// Integer version of [`block_combination`].
pub fn int_combination(src: &str) -> Element {
    let v = block_combination(src, 64);
    Element::from_terms(
        v.iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(k, c)| {
                assert!(c.im == 0.0 && c.re.fract() == 0.0, "{src:?} is not integral");
                (BasisId(k as i64), BigInt::from(c.re as i64))
            }),
    )
}

/// Every finite built-in ring exercised by the property suites.
pub fn finite_rings() -> Vec<RingSpec> {
    let params = vec![
        FamilyParams::CyclicP { p: 2 },
        FamilyParams::CyclicP { p: 3 },
        FamilyParams::CyclicP { p: 5 },
        FamilyParams::CyclicP { p: 7 },
        FamilyParams::CyclicPn { p: 2, n: 2 },
        FamilyParams::CyclicPn { p: 2, n: 3 },
        FamilyParams::CyclicPn { p: 3, n: 2 },
        FamilyParams::Frobenius { p: 3, m: 2, d: 1, subgroup: true },
        FamilyParams::Frobenius { p: 5, m: 2, d: 1, subgroup: false },
        FamilyParams::Sweedler,
        FamilyParams::Taft { m: 2, n: 2, subgroup: false },
        FamilyParams::Taft { m: 3, n: 3, subgroup: false },
        FamilyParams::ToyIii,
        FamilyParams::Z2Z4,
    ];
    params.iter().map(|p| p.build().unwrap()).collect()
}

pub fn ring_by_name(name: &str) -> RingSpec {
    match name {
        "z3" => cyclic_p(3).unwrap(),
        "z5" => cyclic_p(5).unwrap(),
        "z4" => cyclic_pn(2, 2).unwrap(),
        "z8" => cyclic_pn(2, 3).unwrap(),
        "z9" => cyclic_pn(3, 2).unwrap(),
        "s3" => frobenius(3, 2, 1, true).unwrap(),
        "sweedler" => sweedler(),
        "taft22" => taft(2, 2, false).unwrap(),
        "toy3" => toy_iii(),
        "z2z4" => z2_z4_integral(),
        other => panic!("unknown ring {other}"),
    }
}

pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

/// Matches printed columns to computed value vectors one-to-one (to `tol`
/// per entry). Returns the index of the computed vector for each column.
pub fn match_columns(printed: &[Vec<Complex64>], computed: &[Vec<Complex64>], tol: f64) -> Option<Vec<usize>> {
    let mut used = vec![false; computed.len()];
    let mut out = Vec::new();
    for col in printed {
        let hit = computed
            .iter()
            .enumerate()
            .position(|(k, c)| !used[k] && col.iter().zip(c).all(|(a, b)| close(*a, *b, tol)))?;
        used[hit] = true;
        out.push(hit);
    }
    Some(out)
}
