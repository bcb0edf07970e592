//! The ring JSON format.
//!
//! ```json
//! {"name": "...", "identity": "J1", "closed": true,
//!  "basis": [{"label": "J1", "dim": 1, "star": "J1", "rho_mult": 0}, ...],
//!  "products": [{"i": "J1", "j": "J2", "terms": [{"k": "J2", "c": 1}]}, ...]}
//! ```
//!
//! Products are listed once per unordered pair; a missing pair is an error.

use std::collections::HashMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Result, RingError};
use crate::ring::{verify_axioms, BasisInfo, RingSpec};

/// Integers are written as JSON numbers. Values outside the 64-bit range,
/// which JSON readers cannot hold exactly, are written as decimal strings;
/// both forms are accepted on input.
mod integer {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_str(&v.to_string()),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Signed(i64),
        Unsigned(u64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Signed(n) => Ok(n.into()),
            Raw::Unsigned(n) => Ok(n.into()),
            Raw::Text(t) => t.trim().parse().map_err(|_| D::Error::custom(format!("not an integer: {t:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BasisJson {
    pub label: String,
    #[serde(with = "integer")]
    pub dim: BigInt,
    pub star: String,
    #[serde(with = "integer")]
    pub rho_mult: BigInt,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub k: String,
    #[serde(with = "integer")]
    pub c: BigInt,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ProductJson {
    pub i: String,
    pub j: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RingJson {
    pub name: String,
    pub identity: String,
    pub closed: bool,
    pub basis: Vec<BasisJson>,
    pub products: Vec<ProductJson>,
}

impl RingJson {
    /// Serialises a finite ring.
    pub fn from_ring(ring: &RingSpec) -> Result<Self> {
        let ids = ring.basis_ids()?;
        let infos = ring.basis_infos()?;
        let basis = infos
            .iter()
            .map(|b| BasisJson {
                label: b.label.clone(),
                dim: b.dim.clone(),
                star: ring.label(b.star),
                rho_mult: b.rho_mult.clone(),
            })
            .collect();
        let mut products = Vec::new();
        for (a, &i) in ids.iter().enumerate() {
            for &j in &ids[a..] {
                let terms = ring
                    .basis_product(i, j)?
                    .iter()
                    .map(|(k, c)| TermJson { k: ring.label(*k), c: c.clone() })
                    .collect();
                products.push(ProductJson { i: ring.label(i), j: ring.label(j), terms });
            }
        }
        Ok(RingJson {
            name: ring.name().to_string(),
            identity: ring.label(ring.identity()),
            closed: ring.closed(),
            basis,
            products,
        })
    }

    /// Builds the ring without checking axioms.
    pub fn to_ring_unchecked(&self) -> Result<RingSpec> {
        let index: HashMap<&str, usize> = self.basis.iter().enumerate().map(|(i, b)| (b.label.as_str(), i)).collect();
        let find = |l: &str| index.get(l).copied().ok_or_else(|| RingError::Parse(format!("unknown label {l:?}")));
        let mut basis = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            basis.push(BasisInfo::new(b.label.clone(), b.dim.clone(), find(&b.star)?, b.rho_mult.clone()));
        }
        let mut pairs = Vec::with_capacity(self.products.len());
        for p in &self.products {
            let terms = p.terms.iter().map(|t| Ok((find(&t.k)?, t.c.clone()))).collect::<Result<Vec<_>>>()?;
            pairs.push(((find(&p.i)?, find(&p.j)?), terms));
        }
        RingSpec::from_pairs(self.name.clone(), find(&self.identity)?, self.closed, basis, pairs)
    }

    /// Builds the ring and runs the exhaustive axiom checks.
    pub fn to_ring(&self) -> Result<RingSpec> {
        let ring = self.to_ring_unchecked()?;
        let report = verify_axioms(&ring, 2000);
        if let Some(fail) = report.first_failure() {
            return Err(RingError::AxiomViolation {
                axiom: fail.name.to_string(),
                detail: fail.witness.clone().unwrap_or_default(),
            });
        }
        Ok(ring)
    }
}

pub fn ring_to_json(ring: &RingSpec) -> Result<String> {
    serde_json::to_string_pretty(&RingJson::from_ring(ring)?).map_err(|e| RingError::Io(e.to_string()))
}

pub fn ring_from_json(src: &str) -> Result<RingSpec> {
    parse_json(src)?.to_ring()
}

pub fn parse_json(src: &str) -> Result<RingJson> {
    serde_json::from_str(src).map_err(|e| RingError::Parse(e.to_string()))
}

pub fn load_ring_file(path: impl AsRef<Path>) -> Result<RingSpec> {
    let path = path.as_ref();
    let src = std::fs::read_to_string(path).map_err(|e| RingError::Io(format!("{}: {e}", path.display())))?;
    ring_from_json(&src)
}

pub fn save_ring_file(ring: &RingSpec, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, ring_to_json(ring)?).map_err(|e| RingError::Io(format!("{}: {e}", path.display())))
}
