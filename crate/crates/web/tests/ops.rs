use repring_web::ops;

#[test]
fn gamma_of_j2_over_z5_is_the_golden_ratio() {
    let r = ops::gamma(r#"{"family": "cyclic-p", "p": 5}"#, "J2", "proj").unwrap();
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((r["perron_frobenius"].as_f64().unwrap() - golden).abs() < 1e-9);
    assert!(r["sequence_bound"].as_f64().unwrap() >= golden - 1e-9);
    let dims: Vec<&str> = r["core_dims"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(&dims[..5], ["1", "2", "4", "8", "11"]);
}

#[test]
fn gamma_modulo_an_explicit_set_closes_it() {
    let r = ops::gamma(r#"{"family": "cyclic-pn", "p": 2, "n": 2}"#, "J2", "{J4}").unwrap();
    assert_eq!(r["ideal"], "generated");
    // J2 J2 = 2 J2 over Z/4.
    assert!((r["perron_frobenius"].as_f64().unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn species_table_lists_every_species() {
    let text = ops::species_table(r#"{"family": "cyclic-p", "p": 5}"#).unwrap();
    assert!(text.starts_with("a(Z/5)"));
    assert!(text.contains("s5"));
    assert!(text.contains("1.618034"));
    assert!(text.contains("semisimple"));
}

#[test]
fn species_table_reports_the_radical() {
    let text = ops::species_table(r#"{"family": "z2-z4"}"#).unwrap();
    assert!(text.contains("nil radical: rank 1"), "{text}");
}

#[test]
fn tensor_table_for_z4() {
    assert_eq!(ops::tensor_table(2, 2).unwrap(), "1|2|3|4\n2|2^2|42|4^2\n3|42|4^21|4^3\n4|4^2|4^3|4^4");
}

#[test]
fn bad_input_is_an_error_not_a_panic() {
    assert!(ops::gamma("{}", "J2", "proj").is_err());
    assert!(ops::gamma(r#"{"family": "cyclic-p", "p": 5}"#, "J7", "proj").is_err());
    assert!(ops::species_table(r#"{"family": "custom", "path": "/etc/passwd"}"#).is_err());
    assert!(ops::tensor_table(6, 1).is_err());
    assert!(ops::tensor_table(3, 4).is_err());
}
