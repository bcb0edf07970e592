//! Three small artificial rings: two rule-based rings indexed by
//! `Z ∪ {∞}` and the finite ring `Z[v]/(v^3 - 2v^2)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::element::BasisId;
use crate::error::{Result, RingError};
use crate::ring::{BasisInfo, ProductRule, RingSpec};

/// Index of `rho` in the rule-based toy rings.
pub const TOY_RHO: BasisId = BasisId(i64::MAX);

fn power_label(n: i64) -> String {
    match n {
        0 => "1".into(),
        1 => "u".into(),
        -1 => "v".into(),
        n if n > 0 => format!("u{n}"),
        n => format!("v{}", -n),
    }
}

fn parse_power_label(label: &str) -> Option<BasisId> {
    match label {
        "1" => return Some(BasisId(0)),
        "rho" => return Some(TOY_RHO),
        _ => {}
    }
    let (sign, rest) = match label.as_bytes().first()? {
        b'u' => (1, &label[1..]),
        b'v' => (-1, &label[1..]),
        _ => return None,
    };
    let n: i64 = if rest.is_empty() {
        1
    } else {
        if rest.starts_with('0') || rest.starts_with('+') || rest.starts_with('-') {
            return None;
        }
        rest.parse().ok()?
    };
    (1..i64::MAX / 2).contains(&n).then_some(BasisId(sign * n))
}

/// Enumeration order `1, rho, u, v, u2, v2, ...`.
fn enumerate_powers(count: usize) -> Vec<BasisId> {
    let mut out = vec![BasisId(0), TOY_RHO];
    let mut k = 1;
    while out.len() < count {
        out.push(BasisId(k));
        out.push(BasisId(-k));
        k += 1;
    }
    out.truncate(count);
    out
}

/// `Z[u, u^-1] ⊕ Z rho` with `u rho = rho` and `rho^2 = d rho`.
struct ToyOne {
    d: u64,
}

impl ProductRule for ToyOne {
    fn identity(&self) -> BasisId {
        BasisId(0)
    }

    fn info(&self, id: BasisId) -> Option<BasisInfo> {
        if id == TOY_RHO {
            return Some(BasisInfo { label: "rho".into(), dim: self.d.into(), star: TOY_RHO, rho_mult: BigInt::one() });
        }
        (id.0.abs() < i64::MAX / 2).then(|| BasisInfo {
            label: power_label(id.0),
            dim: BigInt::one(),
            star: BasisId(-id.0),
            rho_mult: BigInt::zero(),
        })
    }

    fn lookup(&self, label: &str) -> Option<BasisId> {
        parse_power_label(label)
    }

    fn product(&self, i: BasisId, j: BasisId) -> Vec<(BasisId, BigInt)> {
        match (i == TOY_RHO, j == TOY_RHO) {
            (true, true) => vec![(TOY_RHO, self.d.into())],
            (true, false) | (false, true) => vec![(TOY_RHO, BigInt::one())],
            (false, false) => vec![(BasisId(i.0 + j.0), BigInt::one())],
        }
    }

    fn projective_support(&self) -> Vec<BasisId> {
        vec![TOY_RHO]
    }

    fn enumerate(&self, count: usize) -> Vec<BasisId> {
        enumerate_powers(count)
    }

    fn declared_ideals(&self) -> Vec<BTreeSet<BasisId>> {
        vec![BTreeSet::from([TOY_RHO])]
    }
}

/// `Z[u,v]/((uv-1)(u-d), (uv-1)(v-d))` with `rho = uv - 1`.
struct ToyTwo {
    d: u64,
}

impl ToyTwo {
    fn d_pow(&self, e: u64) -> BigInt {
        BigInt::from(self.d).pow(e as u32)
    }
}

impl ProductRule for ToyTwo {
    fn identity(&self) -> BasisId {
        BasisId(0)
    }

    fn info(&self, id: BasisId) -> Option<BasisInfo> {
        if id == TOY_RHO {
            let d = BigInt::from(self.d);
            return Some(BasisInfo { label: "rho".into(), dim: &d * &d - 1, star: TOY_RHO, rho_mult: BigInt::one() });
        }
        (id.0.abs() < i64::MAX / 2).then(|| BasisInfo {
            label: power_label(id.0),
            dim: self.d_pow(id.0.unsigned_abs()),
            star: BasisId(-id.0),
            rho_mult: BigInt::zero(),
        })
    }

    fn lookup(&self, label: &str) -> Option<BasisId> {
        parse_power_label(label)
    }

    fn product(&self, i: BasisId, j: BasisId) -> Vec<(BasisId, BigInt)> {
        let d = BigInt::from(self.d);
        match (i == TOY_RHO, j == TOY_RHO) {
            (true, true) => vec![(TOY_RHO, &d * &d - 1)],
            (true, false) => vec![(TOY_RHO, self.d_pow(j.0.unsigned_abs()))],
            (false, true) => vec![(TOY_RHO, self.d_pow(i.0.unsigned_abs()))],
            (false, false) => {
                let (a, b) = (i.0, j.0);
                if a.signum() * b.signum() >= 0 {
                    return vec![(BasisId(a + b), BigInt::one())];
                }
                // u^a v^b = u^(a-b) + sum_{t < min(a,b)} d^(a+b-2-2t) rho
                let (a, b) = (a.unsigned_abs(), b.unsigned_abs());
                let coeff: BigInt = (0..a.min(b)).map(|t| self.d_pow(a + b - 2 - 2 * t)).sum();
                vec![(BasisId(i.0 + j.0), BigInt::one()), (TOY_RHO, coeff)]
            }
        }
    }

    fn projective_support(&self) -> Vec<BasisId> {
        vec![TOY_RHO]
    }

    fn enumerate(&self, count: usize) -> Vec<BasisId> {
        enumerate_powers(count)
    }

    fn declared_ideals(&self) -> Vec<BTreeSet<BasisId>> {
        vec![BTreeSet::from([TOY_RHO])]
    }
}

pub fn toy_i(d: u64) -> Result<RingSpec> {
    if d < 2 {
        return Err(RingError::BadParams(format!("toy-i needs d >= 2, got {d}")));
    }
    Ok(RingSpec::from_rule(format!("toy-i(d={d})"), true, Arc::new(ToyOne { d })))
}

pub fn toy_ii(d: u64) -> Result<RingSpec> {
    if d < 2 {
        return Err(RingError::BadParams(format!("toy-ii needs d >= 2, got {d}")));
    }
    Ok(RingSpec::from_rule(format!("toy-ii(d={d})"), true, Arc::new(ToyTwo { d })))
}

/// `Z[v]/(v^3 - 2v^2)` on the basis `1, x1 = v, x2 = v^2 - v`, with
/// `x1* = x2` and every product of `x1, x2` equal to `rho = x1 + x2`.
pub fn toy_iii() -> RingSpec {
    let basis = vec![BasisInfo::new("1", 1, 0, 0), BasisInfo::new("x1", 2, 2, 1), BasisInfo::new("x2", 2, 1, 1)];
    RingSpec::from_fn("toy-iii", 0, true, basis, |i, j| match (i, j) {
        (0, k) | (k, 0) => vec![(k, BigInt::one())],
        _ => vec![(1, BigInt::one()), (2, BigInt::one())],
    })
    .expect("toy-iii table is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;
    use crate::ring::verify_axioms;

    #[test]
    fn toy_one_products() {
        let r = toy_i(3).unwrap();
        let u5 = Element::<BigInt>::basis(r.lookup("u5").unwrap());
        let rho = Element::basis(TOY_RHO);
        assert_eq!(r.multiply(&u5, &rho).unwrap(), rho);
        assert_eq!(r.star(&Element::<BigInt>::basis(BasisId(1))).unwrap(), Element::basis(BasisId(-1)));
        assert!(verify_axioms(&r, 300).all_passed());
    }

    #[test]
    fn toy_two_products() {
        let r = toy_ii(2).unwrap();
        let u = Element::basis(r.lookup("u").unwrap());
        let v = Element::basis(r.lookup("v").unwrap());
        let mut want = r.one();
        want.add_term(TOY_RHO, BigInt::one());
        assert_eq!(r.multiply(&u, &v).unwrap(), want);
        // (uv)^2 = 1 + (d^2 + 1) rho.
        let u2 = r.pow(&u, 2).unwrap();
        let v2 = r.pow(&v, 2).unwrap();
        let mut want = r.one();
        want.add_term(TOY_RHO, BigInt::from(5));
        assert_eq!(r.multiply(&u2, &v2).unwrap(), want);
        let report = verify_axioms(&r, 300);
        assert!(report.all_passed(), "{:?}", report.first_failure());
        assert!(report.mode.starts_with("sampled"));
    }

    #[test]
    fn toy_three() {
        let r = toy_iii();
        let x1 = Element::basis(r.lookup("x1").unwrap());
        let x2 = Element::basis(r.lookup("x2").unwrap());
        assert_eq!(r.multiply(&x1, &x2).unwrap(), r.rho());
        let diff = x2.sub(&x1);
        assert!(r.multiply(&diff, &diff).unwrap().is_zero());
        let report = verify_axioms(&r, 100);
        assert!(report.all_passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn labels_parse() {
        assert_eq!(parse_power_label("u12"), Some(BasisId(12)));
        assert_eq!(parse_power_label("v"), Some(BasisId(-1)));
        assert_eq!(parse_power_label("u0"), None);
        assert_eq!(parse_power_label("w"), None);
    }
}
