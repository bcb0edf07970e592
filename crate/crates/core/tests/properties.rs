mod common;

use common::props::{self, CASES, SEED};

#[test]
fn gamma_properties_hold() {
    assert_eq!(props::gamma_properties(CASES, SEED), Ok(CASES));
}

#[test]
fn core_and_ideal_properties_hold() {
    assert_eq!(props::core_ideal_properties(CASES, SEED + 1), Ok(CASES));
}

#[test]
fn norm_properties_hold() {
    assert_eq!(props::norm_properties(CASES, SEED + 2), Ok(CASES));
}

#[test]
fn psi_properties_hold() {
    assert_eq!(props::psi_properties(CASES, SEED + 3), Ok(CASES));
}

#[test]
fn s_hat_properties_hold() {
    assert_eq!(props::s_hat_properties(CASES, SEED + 4), Ok(CASES));
}
