//! Maps between cohomologies induced by the identity, and maps induced by
//! morphisms of complexes.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::total::Totalization;
use super::{cohomology_quotient, Theory};
use crate::complex::{Bidegree, ComplexMorphism, DoubleComplex};
use crate::linalg::{ExactMatrix, Quotient, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    BcToDolbeault,
    BcToDeRham,
    BcToAeppli,
    DolbeaultToAeppli,
    DeRhamToAeppli,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::BcToDolbeault => "BC -> Dolbeault",
            MapKind::BcToDeRham => "BC -> de Rham",
            MapKind::BcToAeppli => "BC -> Aeppli",
            MapKind::DolbeaultToAeppli => "Dolbeault -> Aeppli",
            MapKind::DeRhamToAeppli => "de Rham -> Aeppli",
        })
    }
}

/// One component of a natural map. For maps to or from de Rham cohomology
/// `at` is the bigraded end; the other end is `H^{p+q}`.
#[derive(Clone, Debug)]
pub struct NaturalMap {
    pub kind: MapKind,
    pub at: Bidegree,
    pub matrix: ExactMatrix,
    pub injective: bool,
    pub surjective: bool,
}

impl NaturalMap {
    fn new(kind: MapKind, at: Bidegree, matrix: ExactMatrix) -> Self {
        let rank = matrix.rank();
        NaturalMap { kind, at, injective: rank == matrix.cols(), surjective: rank == matrix.rows(), matrix }
    }

    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.surjective
    }
}

#[derive(Clone, Debug, Default)]
pub struct NaturalMapReport {
    pub maps: Vec<NaturalMap>,
}

impl NaturalMapReport {
    pub fn get(&self, kind: MapKind, at: Bidegree) -> Option<&NaturalMap> {
        self.maps.iter().find(|m| m.kind == kind && m.at == at)
    }

    pub fn of_kind(&self, kind: MapKind) -> impl Iterator<Item = &NaturalMap> {
        self.maps.iter().filter(move |m| m.kind == kind)
    }

    /// Whether every component of `kind` is an isomorphism.
    pub fn all_isomorphisms(&self, kind: MapKind) -> bool {
        self.of_kind(kind).all(|m| m.is_isomorphism())
    }
}

fn induced(source: &Quotient, target: &Quotient, f: impl Fn(&SparseVec) -> SparseVec) -> ExactMatrix {
    source.induced_matrix(target, f).expect("well-defined on classes")
}

pub fn natural_maps(k: &DoubleComplex) -> NaturalMapReport {
    let tot = Totalization::new(k);
    let mut maps = Vec::new();
    let quot = |theory, b| cohomology_quotient(k, theory, b);
    let de_rham: BTreeMap<i64, Quotient> = tot.degrees().into_iter().map(|t| (t, tot.cohomology(t))).collect();
    for b in k.support() {
        let bc = quot(Theory::BottChern, b);
        let dol = quot(Theory::Dolbeault, b);
        let a = quot(Theory::Aeppli, b);
        let dr = &de_rham[&b.total()];
        let id = |v: &SparseVec| v.clone();
        maps.push(NaturalMap::new(MapKind::BcToDolbeault, b, induced(&bc, &dol, id)));
        maps.push(NaturalMap::new(MapKind::BcToDeRham, b, induced(&bc, dr, |v| tot.embed(b, v))));
        maps.push(NaturalMap::new(MapKind::BcToAeppli, b, induced(&bc, &a, id)));
        maps.push(NaturalMap::new(MapKind::DolbeaultToAeppli, b, induced(&dol, &a, id)));
        maps.push(NaturalMap::new(MapKind::DeRhamToAeppli, b, induced(dr, &a, |x| tot.component(b, x))));
    }
    NaturalMapReport { maps }
}

/// Matrix of `H(f)` at `b` in the representative bases of source and target.
pub fn induced_map(f: &ComplexMorphism, theory: Theory, b: Bidegree) -> ExactMatrix {
    let src = cohomology_quotient_or_zero(f.source(), theory, b);
    let tgt = cohomology_quotient_or_zero(f.target(), theory, b);
    let m = f.component(b);
    induced(&src, &tgt, |v| m.apply(v))
}

fn cohomology_quotient_or_zero(k: &DoubleComplex, theory: Theory, b: Bidegree) -> Quotient {
    if k.dim(b) == 0 {
        let zero = crate::linalg::Subspace::zero(0);
        return Quotient::new(&zero, &zero).expect("trivial");
    }
    cohomology_quotient(k, theory, b)
}

/// Whether `f` induces isomorphisms on the given bigraded theory everywhere.
pub fn induces_isomorphisms(f: &ComplexMorphism, theory: Theory) -> bool {
    let mut spots: Vec<Bidegree> = f.source().support().chain(f.target().support()).collect();
    spots.sort();
    spots.dedup();
    spots.into_iter().all(|b| {
        let m = induced_map(f, theory, b);
        m.rows() == m.cols() && m.rank() == m.cols()
    })
}

/// An isomorphism on Dolbeault cohomology, i.e. on the `E_1` page.
pub fn is_e1_quasi_iso(f: &ComplexMorphism) -> bool {
    induces_isomorphisms(f, Theory::Dolbeault)
}

/// Whether `H_BC → H_∂̄` is an isomorphism at every bidegree, checking
/// dimensions before building any matrix.
pub fn bc_to_dolbeault_isomorphic(k: &DoubleComplex) -> bool {
    let bc = super::bott_chern(k);
    let dol = super::dolbeault(k);
    if bc.dims != dol.dims {
        return false;
    }
    k.support().filter(|b| bc.get(*b) > 0).all(|b| {
        let src = cohomology_quotient(k, Theory::BottChern, b);
        let tgt = cohomology_quotient(k, Theory::Dolbeault, b);
        induced(&src, &tgt, |v| v.clone()).rank() == src.dim()
    })
}
