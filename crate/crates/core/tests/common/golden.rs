//! Golden table files: bigraded tables as `[{p, q, dim}]`, Betti numbers as
//! `[{k, dim}]`.

use std::collections::BTreeMap;

use ddx_core::cohomology;
use ddx_core::complex::{Bidegree, DoubleComplex};
use serde_json::Value;

pub fn load(relative: &str) -> Value {
    let path = format!("{}/tests/golden/{relative}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    serde_json::from_str(&text).unwrap()
}

pub fn bigraded(v: &Value, key: &str) -> BTreeMap<Bidegree, usize> {
    v[key]
        .as_array()
        .unwrap_or_else(|| panic!("missing table {key}"))
        .iter()
        .map(|e| (Bidegree::new(e["p"].as_i64().unwrap(), e["q"].as_i64().unwrap()), e["dim"].as_u64().unwrap() as usize))
        .collect()
}

pub fn betti(v: &Value) -> BTreeMap<i64, usize> {
    v["betti"].as_array().unwrap().iter().map(|e| (e["k"].as_i64().unwrap(), e["dim"].as_u64().unwrap() as usize)).collect()
}

/// Compares spaces, the four bigraded tables and Betti numbers; returns the
/// first mismatch.
pub fn compare_tables(k: &DoubleComplex, g: &Value) -> Result<(), String> {
    let check = |name: &str, ours: &BTreeMap<Bidegree, usize>| {
        let theirs = bigraded(g, name);
        if ours == &theirs {
            Ok(())
        } else {
            Err(format!("{name}: computed {ours:?}, golden {theirs:?}"))
        }
    };
    check("spaces", k.spaces())?;
    check("dolbeault", &cohomology::dolbeault(k).dims)?;
    check("conjugate_dolbeault", &cohomology::conjugate_dolbeault(k).dims)?;
    check("bott_chern", &cohomology::bott_chern(k).dims)?;
    check("aeppli", &cohomology::aeppli(k).dims)?;
    let ours = cohomology::de_rham(k).dims;
    let theirs = betti(g);
    if ours != theirs {
        return Err(format!("betti: computed {ours:?}, golden {theirs:?}"));
    }
    Ok(())
}
