//! Built-in families of representation rings.

mod jordan;
mod presentation;
mod sl2;
mod tables;
mod toy;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, RingError};
use crate::ring::RingSpec;

pub use jordan::{
    cyclic_pn, cyclic_pn_with_cap, green_formula, jordan_tensor_oracle, parse_compact, render_compact, CYCLIC_PN_CAP,
};
pub use presentation::{cyclic_p, frobenius, sweedler, taft, taft_nilradical_generator, Presentation, MAX_PRESENTATION_RANK};
pub use sl2::{sl2_quotient, Laurent, Sl2Quotient};
pub use tables::z2_z4_integral;
pub use toy::{toy_i, toy_ii, toy_iii, TOY_RHO};

/// Parameters identifying a built-in ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyParams {
    CyclicP { p: u64 },
    CyclicPn { p: u64, n: u32 },
    Frobenius { p: u64, m: u64, d: i64, subgroup: bool },
    Taft { m: u64, n: u64, subgroup: bool },
    Sweedler,
    ToyI { d: u64 },
    ToyIi { d: u64 },
    ToyIii,
    Z2Z4,
    Sl2Quotient { q: u64 },
    Custom { path: String },
}

impl FamilyParams {
    /// The family's command-line name.
    pub fn family_name(&self) -> &'static str {
        match self {
            FamilyParams::CyclicP { .. } => "cyclic-p",
            FamilyParams::CyclicPn { .. } => "cyclic-pn",
            FamilyParams::Frobenius { .. } => "frobenius",
            FamilyParams::Taft { .. } => "taft",
            FamilyParams::Sweedler => "sweedler",
            FamilyParams::ToyI { .. } => "toy-i",
            FamilyParams::ToyIi { .. } => "toy-ii",
            FamilyParams::ToyIii => "toy-iii",
            FamilyParams::Z2Z4 => "z2-z4",
            FamilyParams::Sl2Quotient { .. } => "sl2-quotient",
            FamilyParams::Custom { .. } => "custom",
        }
    }

    /// Constructs the ring. `sl2-quotient` is a presentation rather than a
    /// representation ring and is rejected here; use [`sl2_quotient`].
    pub fn build(&self) -> Result<RingSpec> {
        let ring = match self {
            FamilyParams::CyclicP { p } => cyclic_p(*p)?,
            FamilyParams::CyclicPn { p, n } => cyclic_pn(*p, *n)?,
            FamilyParams::Frobenius { p, m, d, subgroup } => frobenius(*p, *m, *d, *subgroup)?,
            FamilyParams::Taft { m, n, subgroup } => taft(*m, *n, *subgroup)?,
            FamilyParams::Sweedler => sweedler(),
            FamilyParams::ToyI { d } => toy_i(*d)?,
            FamilyParams::ToyIi { d } => toy_ii(*d)?,
            FamilyParams::ToyIii => toy_iii(),
            FamilyParams::Z2Z4 => z2_z4_integral(),
            FamilyParams::Sl2Quotient { .. } => {
                return Err(RingError::UnsupportedRing(
                    "sl2-quotient is a polynomial presentation, not a representation ring".into(),
                ))
            }
            FamilyParams::Custom { path } => return crate::io::load_ring_file(path),
        };
        Ok(ring.with_family(self.clone()))
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyParams::CyclicP { p } => write!(f, "cyclic-p(p={p})"),
            FamilyParams::CyclicPn { p, n } => write!(f, "cyclic-pn(p={p}, n={n})"),
            FamilyParams::Frobenius { p, m, d, subgroup } => {
                write!(f, "frobenius(p={p}, m={m}, d={d}{})", if *subgroup { ", subgroup" } else { "" })
            }
            FamilyParams::Taft { m, n, subgroup } => {
                write!(f, "taft(m={m}, n={n}{})", if *subgroup { ", subgroup" } else { "" })
            }
            FamilyParams::Sweedler => write!(f, "sweedler"),
            FamilyParams::ToyI { d } => write!(f, "toy-i(d={d})"),
            FamilyParams::ToyIi { d } => write!(f, "toy-ii(d={d})"),
            FamilyParams::ToyIii => write!(f, "toy-iii"),
            FamilyParams::Z2Z4 => write!(f, "z2-z4"),
            FamilyParams::Sl2Quotient { q } => write!(f, "sl2-quotient(q={q})"),
            FamilyParams::Custom { path } => write!(f, "custom({path})"),
        }
    }
}

/// One line of the family catalogue.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyEntry {
    pub name: &'static str,
    pub params: &'static str,
    pub description: &'static str,
}

pub fn catalog() -> Vec<FamilyEntry> {
    vec![
        FamilyEntry { name: "cyclic-p", params: "--p", description: "modules for Z/p in characteristic p" },
        FamilyEntry {
            name: "cyclic-pn",
            params: "--p --n",
            description: "modules for Z/p^n, tensor table from Jordan types over F_p",
        },
        FamilyEntry {
            name: "frobenius",
            params: "--p --m --d [--subgroup]",
            description: "Z/p x| Z/2m from its presentation; --subgroup gives Z/p x| Z/m",
        },
        FamilyEntry { name: "taft", params: "--m --n [--subgroup]", description: "Taft-type Hopf algebra H_{2m,n}" },
        FamilyEntry { name: "sweedler", params: "", description: "Sweedler's four dimensional Hopf algebra" },
        FamilyEntry { name: "toy-i", params: "--d", description: "Z[u,u^-1] + Z rho with u rho = rho" },
        FamilyEntry { name: "toy-ii", params: "--d", description: "Z[u,v]/((uv-1)(u-d),(uv-1)(v-d))" },
        FamilyEntry { name: "toy-iii", params: "", description: "Z[v]/(v^3-2v^2)" },
        FamilyEntry { name: "z2-z4", params: "", description: "2-adic integral representations of Z/4" },
        FamilyEntry { name: "sl2-quotient", params: "--q", description: "Z[X]/(f_q(X)) for SL(2,q)" },
        FamilyEntry { name: "custom", params: "FILE", description: "a ring loaded from JSON" },
    ]
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power `q = p^m` into `(p, m)`.
pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_helpers() {
        assert!(is_prime(13));
        assert!(!is_prime(9));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn params_round_trip_through_json() {
        let p = FamilyParams::Frobenius { p: 3, m: 2, d: 1, subgroup: true };
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<FamilyParams>(&s).unwrap(), p);
        assert!(s.contains("\"family\":\"frobenius\""));
    }

    #[test]
    fn sl2_is_not_a_ring() {
        assert!(matches!(FamilyParams::Sl2Quotient { q: 4 }.build(), Err(RingError::UnsupportedRing(_))));
    }
}
