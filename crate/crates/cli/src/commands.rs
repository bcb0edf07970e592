use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_complex::Complex64;
use repring::banach::{max_or_empty, norm_l1, norm_l2, norm_max, norm_quotient, sup_norm_estimate};
use repring::cyclo::Cyclotomic;
use repring::expr::parse_element;
use repring::families::{catalog, render_compact, sl2_quotient, FamilyParams};
use repring::gamma::{endotrivial_test, gamma_estimate, gamma_pf_in, is_positive, GammaMethod};
use repring::homs::{chain_rows, cyclic_ring, psi as adams, s_hat};
use repring::ideals::{core, parse_ideal, RepIdeal};
use repring::io::{parse_json, ring_to_json};
use repring::ring::verify_axioms;
use repring::species::{enumerate_species_seeded, format_complex, nilradical, render_table, species_json, SpeciesTable, TableFormat};
use repring::{Element, RingSpec, Scalar};
use serde_json::{json, Value};

use crate::output::{csv_row, real, Output};
use crate::source::RingArgs;
use crate::{CliError, Target};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Certified value when available, otherwise the sequence bound.
    Auto,
    /// Fekete upper bound from the core dimension sequence only.
    Sequence,
    /// Perron-Frobenius eigenvalue on the subring generated by x and x~.
    Pf,
    /// Maximum of |s(x)| over core bounded species.
    Species,
}

fn big(v: &BigInt) -> Value {
    repring::gamma::big_to_json(v)
}

fn element_and_ideal(ring: &RingSpec, target: &Target) -> Result<(Element, RepIdeal), CliError> {
    let x = parse_element(&target.element, ring)?;
    let ideal = parse_ideal(&target.ideal, ring, target.close)?;
    Ok((x, ideal))
}

pub fn families() -> Output {
    let entries = catalog();
    let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
    let pwidth = entries.iter().map(|e| e.params.len()).max().unwrap_or(0);
    let mut text = String::new();
    let mut csv = csv_row(["family", "params", "description"]);
    for e in &entries {
        let _ = writeln!(text, "{:width$}  {:pwidth$}  {}", e.name, e.params, e.description);
        csv.push_str(&csv_row([e.name, e.params, e.description]));
    }
    Output { text, csv, json: serde_json::to_value(&entries).expect("serialisable") }
}

pub fn build(args: &RingArgs, out: Option<&Path>) -> Result<String, CliError> {
    let ring = args.ring()?;
    let json = ring_to_json(&ring)?;
    match out {
        Some(path) => {
            std::fs::write(path, &json).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            Ok(format!("wrote {} (rank {}) to {}\n", ring.name(), ring.rank().unwrap_or(0), path.display()))
        }
        None => Ok(json),
    }
}

/// Runs the axiom checks; files are loaded without the implicit check so
/// that failures can be reported in full.
pub fn verify(args: &RingArgs, budget: usize) -> Result<(Output, bool), CliError> {
    let ring = match args.params()? {
        FamilyParams::Custom { path } => {
            let src = std::fs::read_to_string(&path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
            parse_json(&src)?.to_ring_unchecked()?
        }
        _ => args.ring()?,
    };
    let report = verify_axioms(&ring, budget);
    let passed = report.all_passed();
    let mut text = format!("{} ({})\n", ring.name(), report.mode);
    let mut csv = csv_row(["check", "passed", "witness"]);
    for c in &report.checks {
        let witness = c.witness.clone().unwrap_or_default();
        let _ = writeln!(text, "  {:<28} {}{}", c.name, if c.passed { "pass" } else { "FAIL" }, if witness.is_empty() { String::new() } else { format!("  ({witness})") });
        csv.push_str(&csv_row([c.name, if c.passed { "true" } else { "false" }, witness.as_str()]));
    }
    let _ = writeln!(text, "{}", if passed { "all checks passed" } else { "some checks failed" });
    let json = json!({
        "ring": ring.name(),
        "mode": report.mode,
        "all_passed": passed,
        "observed_closed": report.observed_closed,
        "checks": report.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "witness": c.witness})).collect::<Vec<_>>(),
    });
    Ok((Output { text, csv, json }, passed))
}

fn gamma_output(element: &str, ideal: &str, value: f64, method: &str, extra: Value) -> Output {
    let mut text = format!("gamma({element} mod {ideal}) = {}\nmethod: {method}\n", real(value));
    if let Some(obj) = extra.as_object() {
        for (k, v) in obj {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(text, "{k}: {v}");
        }
    }
    let csv = csv_row(["element", "ideal", "value", "method"]) + &csv_row([element, ideal, &real(value), method]);
    let mut json = json!({"element": element, "ideal": ideal, "value": value, "method": method});
    if let (Some(obj), Some(more)) = (json.as_object_mut(), extra.as_object()) {
        obj.extend(more.clone());
    }
    Output { text, csv, json }
}

pub fn gamma(args: &RingArgs, target: &Target, method: Method, terms: usize, seed: u64) -> Result<Output, CliError> {
    if let FamilyParams::Sl2Quotient { q } = args.params()? {
        let quotient = sl2_quotient(q)?;
        if target.element.trim() != "L1" {
            return Err(CliError::Usage("sl2-quotient supports only the element L1".into()));
        }
        let extra = json!({"descriptor": format!("largest root of f_{q}")});
        return Ok(gamma_output("L1", "tilting quotient", quotient.gamma(), &GammaMethod::ClosedForm.to_string(), extra));
    }
    let ring = args.ring()?;
    let (x, ideal) = element_and_ideal(&ring, target)?;
    let shown = ring.format_int(&x);
    let trichotomy = |x: &Element| {
        if is_positive(x) || x.is_zero() {
            endotrivial_test(&ring, x, &ideal).ok().map(|e| e.to_string())
        } else {
            None
        }
    };
    let out = match method {
        Method::Auto | Method::Sequence => {
            let report = gamma_estimate(&ring, &x, &ideal, terms)?;
            let (value, name) = match (&report.certified, method) {
                (Some(c), Method::Auto) => (c.value, c.method.to_string()),
                _ => (report.upper, "sequence".to_string()),
            };
            let mut extra = report.to_json();
            if method == Method::Sequence {
                extra["certified"] = Value::Null;
            }
            let obj = extra.as_object_mut().expect("object");
            obj.remove("element");
            obj.remove("ideal");
            obj.insert("endotriviality".into(), json!(trichotomy(&x)));
            let mut out = gamma_output(&shown, ideal.name(), value, &name, Value::Null);
            let _ = writeln!(out.text, "fekete upper bound (N = {terms}): {}", real(report.upper));
            if let Some(lower) = report.heuristic_lower {
                let _ = writeln!(out.text, "heuristic ratio estimate: {}", real(lower));
            }
            if let Some(t) = trichotomy(&x) {
                let _ = writeln!(out.text, "endotriviality: {t}");
            }
            if let (Some(o), Some(more)) = (out.json.as_object_mut(), extra.as_object()) {
                o.extend(more.clone());
            }
            out
        }
        Method::Pf => {
            let pf = gamma_pf_in(&ring, &x, &ideal)?;
            let extra = json!({
                "eigenvalue": pf.eigenvalue,
                "subring": pf.subring.iter().map(|&i| ring.label(i)).collect::<Vec<_>>(),
                "residual": pf.residual,
                "iterations": pf.iterations,
                "endotriviality": trichotomy(&x),
            });
            gamma_output(&shown, ideal.name(), pf.value, &GammaMethod::PerronFrobenius.to_string(), extra)
        }
        Method::Species => {
            let table = SpeciesTable { species: enumerate_species_seeded(&ring, seed)? };
            let value = if core(&x, &ideal).is_zero() { Some(0.0) } else { table.gamma(&x, &ideal).map(|g| g.value) };
            let value = value.ok_or_else(|| CliError::Compute(repring::RingError::NumericalFailure("no core bounded species".into())))?;
            let extra = json!({"species": table.species.len(), "endotriviality": trichotomy(&x)});
            gamma_output(&shown, ideal.name(), value, &GammaMethod::Species.to_string(), extra)
        }
    };
    Ok(out)
}

pub fn core_sequence(args: &RingArgs, target: &Target, terms: usize) -> Result<Output, CliError> {
    let ring = args.ring()?;
    let (x, ideal) = element_and_ideal(&ring, target)?;
    let cores = repring::gamma::core_power_sequence(&ring, &x, &ideal, terms)?;
    let mut text = format!("cores of ({})^n modulo {}\n", ring.format_int(&x), ideal.name());
    let mut csv = csv_row(["n", "c_n", "core"]);
    let mut rows = Vec::new();
    for (n, c) in cores.iter().enumerate() {
        let dim = ring.dim(c)?;
        let shown = ring.format_int(c);
        let _ = writeln!(text, "{n:>4}  {dim:>12}  {shown}");
        csv.push_str(&csv_row([n.to_string(), dim.to_string(), shown.clone()]));
        rows.push(json!({"n": n, "c": big(&dim), "core": shown}));
    }
    let json = json!({"element": ring.format_int(&x), "ideal": ideal.name(), "terms": rows});
    Ok(Output { text, csv, json })
}

pub fn ideal(args: &RingArgs, literal: &str, close: bool) -> Result<Output, CliError> {
    let ring = args.ring()?;
    let ideal = parse_ideal(literal, &ring, close)?;
    let labels = ideal.labels().ok();
    let shown = labels.as_ref().map_or_else(|| "(membership by predicate)".to_string(), |l| format!("{{{}}}", l.join(", ")));
    let text = format!("{}: {shown}\ncertified: {}\n", ideal.name(), ideal.certified());
    let mut csv = csv_row(["member"]);
    for l in labels.iter().flatten() {
        csv.push_str(&csv_row([l]));
    }
    let json = json!({"ideal": ideal.name(), "members": labels, "certified": ideal.certified()});
    Ok(Output { text, csv, json })
}

pub fn species(args: &RingArgs, seed: u64) -> Result<Output, CliError> {
    let ring = args.ring()?;
    let list = enumerate_species_seeded(&ring, seed)?;
    let rank = nilradical(&ring)?.rank;
    Ok(Output {
        text: render_table(&ring, &list, rank, TableFormat::Text)?,
        csv: render_table(&ring, &list, rank, TableFormat::Csv)?,
        json: species_json(&ring, &list, rank)?,
    })
}

pub fn radical(args: &RingArgs) -> Result<Output, CliError> {
    let ring = args.ring()?;
    let rad = nilradical(&ring)?;
    let basis: Vec<String> = rad.basis.iter().map(|b| ring.format(b, |c| c.to_string())).collect();
    let mut text = format!("nil radical of {}: rank {}\n", ring.name(), rad.rank);
    let mut csv = csv_row(["basis"]);
    for b in &basis {
        let _ = writeln!(text, "  {b}");
        csv.push_str(&csv_row([b]));
    }
    let json = json!({"ring": ring.name(), "rank": rad.rank, "semisimple": rad.is_semisimple(), "basis": basis});
    Ok(Output { text, csv, json })
}

pub fn psi(p: u64, power: u64, element: &str) -> Result<Output, CliError> {
    let ring = cyclic_ring(p, 1)?;
    let x = parse_element(element, &ring)?;
    let image = adams(&ring, power, &x)?;
    let (from, to) = (ring.format_int(&x), ring.format_int(&image));
    Ok(Output {
        text: format!("psi^{power}({from}) = {to}\n"),
        csv: csv_row(["p", "power", "element", "image"]) + &csv_row([p.to_string(), power.to_string(), from.clone(), to.clone()]),
        json: json!({"p": p, "power": power, "element": from, "image": to}),
    })
}

fn exact(c: &Cyclotomic) -> String {
    c.as_integer().map_or_else(|| format!("{c:?}"), |v| v.to_string())
}

pub fn shat(p: u64, n: u32, ell: u64, element: &str) -> Result<Output, CliError> {
    let big_ring = cyclic_ring(p, n + 1)?;
    let x = parse_element(element, &big_ring)?;
    let image = s_hat(p, n, ell, &x)?;
    let from = big_ring.format_int(&x);
    let to = if image.is_zero() {
        "0".to_string()
    } else {
        image
            .iter()
            .map(|(id, c)| format!("({}) J{}", format_complex(c.to_c64()), id.0 + 1))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    let mut csv = csv_row(["block", "value", "exact"]);
    let mut terms = Vec::new();
    for (id, c) in image.iter() {
        let v = c.to_c64();
        csv.push_str(&csv_row([format!("J{}", id.0 + 1), format_complex(v), exact(c)]));
        terms.push(json!({"block": format!("J{}", id.0 + 1), "re": v.re, "im": v.im, "exact": exact(c)}));
    }
    let text = format!(
        "shat_{ell}: a(Z/{}) -> a(Z/{})\nshat_{ell}({from}) = {to}\n(exact coefficients are written in powers of z = exp(pi i/{p}))\n",
        p.pow(n + 1),
        p.pow(n)
    );
    Ok(Output { text, csv, json: json!({"p": p, "n": n, "ell": ell, "element": from, "terms": terms}) })
}

pub fn species_chain(p: u64, n: u32) -> Result<Output, CliError> {
    let rows = chain_rows(p, n)?;
    let q = p.checked_pow(n).unwrap_or(0) as usize;
    let name = |ells: &[u64]| ells.iter().map(u64::to_string).collect::<Vec<_>>().join(".");
    let mut text = format!("species of a(Z/{q}) as chains (first index: the species of a(Z/{p}))\n");
    let mut header = vec!["chain".to_string()];
    header.extend((1..=q).map(|j| format!("J{j}")));
    let mut csv = csv_row(&header);
    for row in &rows {
        let cells: Vec<String> = row.values.iter().map(|v| format_complex(Complex64::new(v[0], v[1]))).collect();
        let _ = writeln!(text, "{:>8}: {}", name(&row.ells), cells.join("  "));
        let mut line = vec![name(&row.ells)];
        line.extend(cells);
        csv.push_str(&csv_row(&line));
    }
    Ok(Output { text, csv, json: json!({"p": p, "n": n, "chains": rows}) })
}

pub fn norms(args: &RingArgs, target: &Target) -> Result<Output, CliError> {
    let ring = args.ring()?;
    let (x, ideal) = element_and_ideal(&ring, target)?;
    let l1 = norm_l1(&ring, &x)?;
    let quotient = norm_quotient(&ring, &x, &ideal)?;
    let max = norm_max(&ring, &x)?;
    let l2 = norm_l2(&ring, &x).ok();
    let sup = sup_norm_estimate(&ring, &x, &max_or_empty(&ring)?, 2000, 6)?;
    let mut text = format!("element: {}\n", ring.format_int(&x));
    let _ = writeln!(text, "l1: {l1}");
    let _ = writeln!(text, "quotient ({}): {quotient}", ideal.name());
    let _ = writeln!(text, "max quotient: {max}");
    let _ = writeln!(text, "l2: {}", l2.map_or("undefined (support meets the maximal ideal)".to_string(), real));
    let _ = writeln!(text, "sup estimate: {}{}", real(sup.value), if sup.truncated { " (lower bound, truncated space)" } else { "" });
    let csv = csv_row(["l1", "quotient", "max", "l2", "sup_estimate"])
        + &csv_row([l1.to_string(), quotient.to_string(), max.to_string(), l2.map_or(String::new(), real), real(sup.value)]);
    let json = json!({
        "element": ring.format_int(&x),
        "ideal": ideal.name(),
        "l1": big(&l1),
        "quotient": big(&quotient),
        "max": big(&max),
        "l2": l2,
        "sup_estimate": {"value": sup.value, "truncated": sup.truncated, "basis_size": sup.basis_size},
    });
    Ok(Output { text, csv, json })
}

pub fn table(args: &RingArgs) -> Result<Output, CliError> {
    let ring = args.ring()?;
    let ids = ring.basis_ids()?;
    let cyclic_order = match ring.family() {
        Some(FamilyParams::CyclicP { p }) => Some(*p),
        Some(FamilyParams::CyclicPn { p, n }) => Some(p.pow(*n)),
        _ => None,
    };
    let labels: Vec<String> = ids.iter().map(|&i| ring.label(i)).collect();
    let mut cells = Vec::with_capacity(ids.len());
    for &a in &ids {
        let mut row = Vec::with_capacity(ids.len());
        for &b in &ids {
            let prod = ring.multiply(&Element::basis(a), &Element::basis(b))?;
            row.push(match cyclic_order {
                Some(q) => render_compact(&prod, q),
                None => ring.format_int(&prod),
            });
        }
        cells.push(row);
    }
    let mut text = String::new();
    match cyclic_order {
        Some(q) => {
            let _ = writeln!(text, "# a(Z/{q}): row a, column b lists the blocks of J_a J_b");
            for row in &cells {
                let _ = writeln!(text, "{}", row.join("|"));
            }
        }
        None => {
            for (x, row) in cells.iter().enumerate() {
                for (y, c) in row.iter().enumerate().skip(x) {
                    let _ = writeln!(text, "{} * {} = {c}", labels[x], labels[y]);
                }
            }
        }
    }
    let mut header = vec![String::new()];
    header.extend(labels.iter().cloned());
    let mut csv = csv_row(&header);
    for (label, row) in labels.iter().zip(&cells) {
        let mut line = vec![label.clone()];
        line.extend(row.iter().cloned());
        csv.push_str(&csv_row(&line));
    }
    let json = json!({"ring": ring.name(), "labels": labels, "products": cells, "compact": cyclic_order.is_some()});
    Ok(Output { text, csv, json })
}
