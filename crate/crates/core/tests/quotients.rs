//! The layers `F_i` and the quotient maps against the printed tables, and
//! the chain species against the species found by the general solver.

mod common;

use num_bigint::BigInt;
use num_complex::Complex64;
use repring::homs::{all_chain_species, cyclic_ring, f_spectrum, s_hat};
use repring::species::enumerate_species;
use repring::{Element, Scalar};

use common::{block_combination, csv, int_combination, match_columns};

fn check_quotient_table(file: &str, p: u64, n: u32) {
    let table = csv(file);
    let small = p.pow(n) as usize;
    for (r, (label, cells)) in table.rows.iter().enumerate() {
        let j = r as u64 + 1;
        assert_eq!(*label, format!("J{j}"));
        let spectrum = f_spectrum(p, n, j).unwrap();
        let block: Element = Element::basis(repring::BasisId(j as i64 - 1));
        for (col, cell) in table.columns.iter().zip(cells) {
            if let Some(i) = col.strip_prefix('F') {
                let i: usize = i.parse().unwrap();
                assert_eq!(spectrum.layer(i), &int_combination(cell), "{file}: F{i}(J{j})");
            } else {
                let ell: u64 = col.strip_prefix("shat").unwrap().parse().unwrap();
                let image = s_hat(p, n, ell, &block).unwrap();
                let printed = block_combination(cell, small);
                for (k, want) in printed.iter().enumerate() {
                    let got = image.coeff(repring::BasisId(k as i64)).to_c64();
                    assert!((got - want).norm() < 1e-9, "{file}: shat{ell}(J{j}) at J{}: {got} vs {want}", k + 1);
                }
            }
        }
        assert_eq!(spectrum.weighted_dim(), BigInt::from(j), "{file}: weighted dimension of J{j}");
    }
    assert_eq!(table.rows.len() as u64, p.pow(n + 1), "{file} covers every block");
}

#[test]
fn z4_quotients_match_printed_table() {
    check_quotient_table("quotient_z4.csv", 2, 1);
}

#[test]
fn z8_quotients_match_printed_table() {
    check_quotient_table("quotient_z8.csv", 2, 2);
}

#[test]
fn z9_quotients_match_printed_table() {
    check_quotient_table("quotient_z9.csv", 3, 1);
}

#[test]
fn z25_quotients_match_printed_table() {
    check_quotient_table("quotient_z25.csv", 5, 1);
}

#[test]
fn chain_species_are_all_species() {
    for (p, n) in [(2u64, 2u32), (2, 3), (3, 2), (5, 2)] {
        let ring = cyclic_ring(p, n).unwrap();
        let chains: Vec<Vec<Complex64>> = all_chain_species(p, n).unwrap().into_iter().map(|(_, v)| v).collect();
        let solved: Vec<Vec<Complex64>> = enumerate_species(&ring).unwrap().into_iter().map(|s| s.values).collect();
        assert_eq!(chains.len(), solved.len(), "Z/{}", p.pow(n));
        assert!(match_columns(&chains, &solved, 1e-7).is_some(), "Z/{}: chain species differ from solved species", p.pow(n));
    }
}
