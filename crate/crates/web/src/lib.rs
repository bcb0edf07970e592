//! Browser bindings for three operations: the species table of a family,
//! the gamma invariant of an element, and the compact tensor table of a
//! cyclic p-group.
//!
//! Each exported function takes the family as a JSON object such as
//! `{"family": "cyclic-p", "p": 5}` and returns a string. The plain Rust
//! functions in [`ops`] do the work so they can be tested natively.

use wasm_bindgen::prelude::*;

pub mod ops {
    use repring::families::{cyclic_pn, render_compact, FamilyParams};
    use repring::gamma::{endotrivial_test, gamma_estimate, gamma_pf_in, is_positive};
    use repring::ideals::{core, parse_ideal};
    use repring::expr::parse_element;
    use repring::species::{enumerate_species, nilradical, render_table, TableFormat};
    use repring::{Element, RingSpec};
    use serde_json::{json, Value};

    /// Largest basis the page will build; keeps the tab responsive.
    pub const MAX_RANK: usize = 64;

    pub type Result<T> = std::result::Result<T, String>;

    pub fn ring_from_json(params: &str) -> Result<RingSpec> {
        let params: FamilyParams = serde_json::from_str(params).map_err(|e| format!("bad family parameters: {e}"))?;
        if matches!(params, FamilyParams::Custom { .. }) {
            return Err("ring files are not available in the browser".into());
        }
        let ring = params.build().map_err(|e| e.to_string())?;
        let rank = ring.basis_ids().map_err(|e| e.to_string())?.len();
        if rank > MAX_RANK {
            return Err(format!("rank {rank} is above the demo limit of {MAX_RANK}"));
        }
        Ok(ring)
    }

    pub fn species_table(params: &str) -> Result<String> {
        let ring = ring_from_json(params)?;
        let species = enumerate_species(&ring).map_err(|e| e.to_string())?;
        let radical = nilradical(&ring).map_err(|e| e.to_string())?;
        let table = render_table(&ring, &species, radical.rank, TableFormat::Text).map_err(|e| e.to_string())?;
        Ok(format!("{}\n{table}", ring.name()))
    }

    /// Gamma of `element` modulo `ideal`, as a JSON object with the
    /// Perron-Frobenius value, the sequence bound and the first core dimensions.
    pub fn gamma(params: &str, element: &str, ideal: &str) -> Result<Value> {
        let ring = ring_from_json(params)?;
        let x: Element = parse_element(element, &ring).map_err(|e| e.to_string())?;
        let ideal = parse_ideal(ideal, &ring, true).map_err(|e| e.to_string())?;
        let report = gamma_estimate(&ring, &x, &ideal, 48).map_err(|e| e.to_string())?;
        let pf = if is_positive(&x) && !core(&x, &ideal).is_zero() {
            gamma_pf_in(&ring, &x, &ideal).ok().map(|r| r.value)
        } else {
            None
        };
        let class = if is_positive(&x) { endotrivial_test(&ring, &x, &ideal).ok().map(|c| c.to_string()) } else { None };
        Ok(json!({
            "ring": ring.name(),
            "element": ring.format_int(&x),
            "ideal": ideal.name(),
            "perron_frobenius": pf,
            "certified": report.certified.as_ref().map(|c| json!({"value": c.value, "method": c.method.to_string()})),
            "sequence_bound": report.upper,
            "core_dims": report.c.iter().take(13).map(|d| d.to_string()).collect::<Vec<_>>(),
            "endotriviality": class,
        }))
    }

    /// Tensor products of indecomposables for Z/p^n, one row per line,
    /// cells written in block notation and separated by `|`.
    pub fn tensor_table(p: u64, n: u32) -> Result<String> {
        let ring = cyclic_pn(p, n).map_err(|e| e.to_string())?;
        let ids = ring.basis_ids().map_err(|e| e.to_string())?;
        if ids.len() > MAX_RANK {
            return Err(format!("Z/{} has more than {MAX_RANK} indecomposables", p.pow(n)));
        }
        let order = p.pow(n);
        let mut rows = Vec::with_capacity(ids.len());
        for &a in &ids {
            let mut row = Vec::with_capacity(ids.len());
            for &b in &ids {
                let prod = ring.multiply(&Element::basis(a), &Element::basis(b)).map_err(|e| e.to_string())?;
                row.push(render_compact(&prod, order));
            }
            rows.push(row.join("|"));
        }
        Ok(rows.join("\n"))
    }
}

fn js(r: ops::Result<String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = speciesTable)]
pub fn species_table(params: &str) -> Result<String, JsValue> {
    js(ops::species_table(params))
}

#[wasm_bindgen]
pub fn gamma(params: &str, element: &str, ideal: &str) -> Result<String, JsValue> {
    js(ops::gamma(params, element, ideal).map(|v| v.to_string()))
}

#[wasm_bindgen(js_name = tensorTable)]
pub fn tensor_table(p: u32, n: u32) -> Result<String, JsValue> {
    js(ops::tensor_table(p.into(), n))
}

#[cfg(test)]
mod tests {
    use super::ops;

    #[test]
    fn oversized_rings_are_refused() {
        let err = ops::ring_from_json(r#"{"family": "cyclic-pn", "p": 3, "n": 4}"#).unwrap_err();
        assert!(err.contains("demo limit"), "{err}");
        assert!(ops::ring_from_json(r#"{"family": "sweedler"}"#).is_ok());
    }
}
