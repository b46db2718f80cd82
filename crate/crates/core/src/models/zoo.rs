use std::collections::BTreeMap;

use super::lie::{from_lie_model, GeneratorDifferential, LieModel, Term};
use crate::complex::builtin::{builtin_square, builtin_zigzag, dot};
use crate::complex::ops::{direct_sum, shift_diag, tensor};
use crate::complex::{Bidegree, DoubleComplex};
use crate::error::ModelError;
use crate::linalg::GaussRat;
use crate::zigzag::ZigzagShape;

const CATALOG: &[(&str, &str)] = &[
    ("dot", "one-dimensional space at (0,0)"),
    ("square", "square a, d1a, d2a, d1d2a anchored at (0,0)"),
    ("zigzag-h2", "a at (0,0) with d2a spanning (0,1)"),
    ("zigzag-v2", "a at (0,0) with d1a spanning (1,0)"),
    ("zigzag-3", "a at (0,0) with d1a at (1,0) and d2a at (0,1)"),
    ("torus-1", "invariant forms on a complex 1-torus"),
    ("torus-2", "invariant forms on a complex 2-torus"),
    ("torus-3", "invariant forms on a complex 3-torus"),
    ("iwasawa", "Iwasawa manifold: d phi^3 = -phi^1 ^ phi^2"),
    ("kodaira-thurston", "Kodaira-Thurston surface: d phi^2 = phi^1 ^ conj(phi^1)"),
];

pub fn builtin_names() -> Vec<&'static str> {
    CATALOG.iter().map(|(n, _)| *n).collect()
}

pub fn describe(name: &str) -> Option<&'static str> {
    CATALOG.iter().find(|(n, _)| *n == name).map(|(_, d)| *d)
}

fn lie(n: usize, k: usize, holomorphic: Vec<Term>, mixed: Vec<Term>) -> LieModel {
    let mut structure = BTreeMap::new();
    structure.insert(k, GeneratorDifferential { holomorphic, mixed });
    LieModel { complex_dim: n, structure }
}

pub fn iwasawa_model() -> LieModel {
    lie(3, 3, vec![Term { i: 1, j: 2, c: GaussRat::from_int(-1) }], Vec::new())
}

pub fn kodaira_thurston_model() -> LieModel {
    lie(2, 2, Vec::new(), vec![Term { i: 1, j: 1, c: GaussRat::ONE }])
}

fn shape(spots: &[(i64, i64)]) -> ZigzagShape {
    ZigzagShape::from_spots(spots.iter().map(|&(p, q)| Bidegree::new(p, q)).collect()).expect("well-formed")
}

pub fn builtin(name: &str) -> Result<DoubleComplex, ModelError> {
    let k = match name {
        "dot" => dot(Bidegree::new(0, 0)),
        "square" => builtin_square(0, 0),
        "zigzag-h2" => builtin_zigzag(&shape(&[(0, 0), (0, 1)])),
        "zigzag-v2" => builtin_zigzag(&shape(&[(1, 0), (0, 0)])),
        "zigzag-3" => builtin_zigzag(&shape(&[(1, 0), (0, 0), (0, 1)])),
        "torus-1" => from_lie_model(&LieModel::closed(1))?,
        "torus-2" => from_lie_model(&LieModel::closed(2))?,
        "torus-3" => from_lie_model(&LieModel::closed(3))?,
        "iwasawa" => from_lie_model(&iwasawa_model())?,
        "kodaira-thurston" => from_lie_model(&kodaira_thurston_model())?,
        other => return Err(ModelError::UnknownModel(other.to_string())),
    };
    Ok(k)
}

/// `⊕_{i=0}^{r−1} K[i,i]`.
pub fn projbundle_model(k: &DoubleComplex, r: usize) -> Result<DoubleComplex, ModelError> {
    if r < 1 {
        return Err(ModelError::InvalidRank(r));
    }
    let parts: Vec<DoubleComplex> = (0..r as i64).map(|i| shift_diag(k, i)).collect();
    Ok(direct_sum(&parts.iter().collect::<Vec<_>>())?)
}

/// `K_X ⊕ ⊕_{i=1}^{r−1} K_Y[i,i]`.
pub fn blowup_model(kx: &DoubleComplex, ky: &DoubleComplex, r: usize) -> Result<DoubleComplex, ModelError> {
    if r < 2 {
        return Err(ModelError::InvalidRank(r));
    }
    let mut parts = vec![kx.clone()];
    parts.extend((1..r as i64).map(|i| shift_diag(ky, i)));
    Ok(direct_sum(&parts.iter().collect::<Vec<_>>())?)
}

pub fn product_model(a: &DoubleComplex, b: &DoubleComplex) -> DoubleComplex {
    tensor(a, b)
}
