//! Lie-algebra models against tables produced by the independent brute-force
//! script in `tests/oracle/lie_oracle.py`.

mod common;

use common::golden;
use ddx_core::cohomology::{self, hodge::filtration_dims};
use ddx_core::complex::Bidegree;
use ddx_core::models::builtin;

fn check_model(name: &str) {
    let g = golden::load(name);
    let k = builtin(name).unwrap();
    golden::compare_tables(&k, &g).unwrap();
    let fdims = filtration_dims(&k);
    for e in g["hodge_filtration"].as_array().unwrap() {
        let key = (e["k"].as_i64().unwrap(), e["p"].as_i64().unwrap());
        assert_eq!(fdims.get(&key).copied().unwrap_or(0), e["dim"].as_u64().unwrap() as usize, "F^{} H^{}", key.1, key.0);
    }
}

#[test]
fn iwasawa_matches_oracle() {
    check_model("iwasawa");
}

#[test]
fn kodaira_thurston_matches_oracle() {
    check_model("kodaira-thurston");
}

#[test]
fn iwasawa_headline_numbers() {
    let k = builtin("iwasawa").unwrap();
    let dol = cohomology::dolbeault(&k);
    assert_eq!(dol.get(Bidegree::new(1, 0)), 3);
    assert_eq!(dol.get(Bidegree::new(0, 1)), 2);
    assert_eq!(cohomology::de_rham(&k).get(1), 4);
    assert_eq!(dol.diagonal_sum(1), 5);
}

#[test]
fn atoms_match_hand_derived_tables() {
    for name in ["square", "dot", "zigzag-h2"] {
        let g = golden::load(&format!("atoms/{name}"));
        golden::compare_tables(&builtin(name).unwrap(), &g).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
