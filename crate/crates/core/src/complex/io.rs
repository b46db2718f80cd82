//! JSON encoding of complexes and morphisms.
//!
//! Matrices are row-major lists of coefficient strings; omitted maps are zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Bidegree, ComplexMorphism, DoubleComplex};
use crate::error::ComplexError;
use crate::linalg::{ExactMatrix, GaussRat};

#[derive(Debug, Serialize, Deserialize)]
pub struct SpaceEntry {
    pub p: i64,
    pub q: i64,
    pub dim: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MapEntry {
    pub p: i64,
    pub q: i64,
    pub matrix: Vec<Vec<GaussRat>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub spaces: Vec<SpaceEntry>,
    #[serde(default)]
    pub d1: Vec<MapEntry>,
    #[serde(default)]
    pub d2: Vec<MapEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<MapEntry>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub source: ComplexFile,
    pub target: ComplexFile,
    #[serde(default)]
    pub components: Vec<MapEntry>,
}

fn entries(blocks: &BTreeMap<Bidegree, ExactMatrix>) -> Vec<MapEntry> {
    blocks
        .iter()
        .filter(|(_, m)| m.rows() > 0 && m.cols() > 0)
        .map(|(b, m)| MapEntry { p: b.p, q: b.q, matrix: m.to_rows() })
        .collect()
}

fn parse_maps(
    what: &'static str,
    list: &[MapEntry],
    spaces: &BTreeMap<Bidegree, usize>,
    target: fn(Bidegree) -> Bidegree,
) -> Result<BTreeMap<Bidegree, ExactMatrix>, ComplexError> {
    let mut out = BTreeMap::new();
    for e in list {
        let b = Bidegree::new(e.p, e.q);
        let rows = spaces.get(&target(b)).copied().unwrap_or(0);
        let cols = spaces.get(&b).copied().unwrap_or(0);
        let found_cols = e.matrix.first().map_or(0, |r| r.len());
        if e.matrix.len() != rows || e.matrix.iter().any(|r| r.len() != cols) {
            return Err(ComplexError::Shape { what, at: b, expected: (rows, cols), found: (e.matrix.len(), found_cols) });
        }
        let m = ExactMatrix::from_rows(rows, cols, &e.matrix).map_err(|err| ComplexError::Format(err.to_string()))?;
        if out.insert(b, m).is_some() {
            return Err(ComplexError::Format(format!("{what} given twice at {b}")));
        }
    }
    Ok(out)
}

impl ComplexFile {
    pub fn from_complex(k: &DoubleComplex) -> Self {
        ComplexFile {
            spaces: k.spaces().iter().map(|(b, d)| SpaceEntry { p: b.p, q: b.q, dim: *d }).collect(),
            d1: entries(k.d1_blocks()),
            d2: entries(k.d2_blocks()),
            sigma: k.sigma_blocks().map(entries),
        }
    }

    /// Builds the complex and validates it.
    pub fn to_complex(&self) -> Result<DoubleComplex, ComplexError> {
        let mut spaces = BTreeMap::new();
        for s in &self.spaces {
            let b = Bidegree::new(s.p, s.q);
            if spaces.insert(b, s.dim).is_some() {
                return Err(ComplexError::Format(format!("space {b} given twice")));
            }
        }
        let d1 = parse_maps("d1", &self.d1, &spaces, Bidegree::d1_target)?;
        let d2 = parse_maps("d2", &self.d2, &spaces, Bidegree::d2_target)?;
        let sigma = match &self.sigma {
            Some(list) => Some(parse_maps("sigma", list, &spaces, Bidegree::swap)?),
            None => None,
        };
        DoubleComplex::validated(spaces, d1, d2, sigma)
    }
}

pub fn complex_to_json(k: &DoubleComplex) -> String {
    serde_json::to_string_pretty(&ComplexFile::from_complex(k)).expect("serializable")
}

pub fn complex_from_json(text: &str) -> Result<DoubleComplex, ComplexError> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| ComplexError::Format(e.to_string()))?;
    file.to_complex()
}

pub fn morphism_to_json(f: &ComplexMorphism) -> String {
    let file = MorphismFile {
        source: ComplexFile::from_complex(f.source()),
        target: ComplexFile::from_complex(f.target()),
        components: entries(f.components()),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn morphism_from_json(text: &str) -> Result<ComplexMorphism, ComplexError> {
    let file: MorphismFile = serde_json::from_str(text).map_err(|e| ComplexError::Format(e.to_string()))?;
    let source = file.source.to_complex()?;
    let target = file.target.to_complex()?;
    let mut components = BTreeMap::new();
    for e in &file.components {
        let b = Bidegree::new(e.p, e.q);
        let (rows, cols) = (target.dim(b), source.dim(b));
        let found_cols = e.matrix.first().map_or(0, |r| r.len());
        if e.matrix.len() != rows || e.matrix.iter().any(|r| r.len() != cols) {
            return Err(ComplexError::Shape {
                what: "morphism",
                at: b,
                expected: (rows, cols),
                found: (e.matrix.len(), found_cols),
            });
        }
        let m = ExactMatrix::from_rows(rows, cols, &e.matrix).map_err(|err| ComplexError::Format(err.to_string()))?;
        components.insert(b, m);
    }
    ComplexMorphism::new(source, target, components)
}
