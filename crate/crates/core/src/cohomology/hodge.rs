//! The Hodge filtration `F^p H^k` and the weight-`k` Hodge structure test.

use std::collections::BTreeMap;

use super::total::Totalization;
use crate::complex::{Bidegree, DoubleComplex};
use crate::error::ComplexError;
use crate::linalg::{Quotient, SparseVec, Subspace};

/// `F^p H^k` as subspaces of `H^k`, in the coordinates of `cohomology`.
#[derive(Clone, Debug)]
pub struct FiltrationData {
    pub degree: i64,
    pub cohomology: Quotient,
    /// `F^p H^k` for `p` from the lowest column (where it is all of `H^k`)
    /// to one past the highest (where it is zero).
    pub steps: BTreeMap<i64, Subspace>,
}

impl FiltrationData {
    pub fn dim(&self, p: i64) -> usize {
        match self.steps.get(&p) {
            Some(s) => s.dim(),
            None if self.steps.keys().next().is_some_and(|lo| p < *lo) => self.cohomology.dim(),
            None => 0,
        }
    }
}

/// Cocycles of `Tot^t` lying in `F^p`, from the canonical cocycle basis.
fn filtered_cocycles(cocycles: &Subspace, offset: usize) -> impl Iterator<Item = &SparseVec> {
    cocycles.basis().iter().filter(move |v| v.leading().expect("nonzero").0 >= offset)
}

fn column_range(k: &DoubleComplex) -> (i64, i64) {
    k.bounds().map_or((0, 0), |b| (b.pmin, b.pmax + 1))
}

pub fn hodge_filtration(k: &DoubleComplex, degree: i64) -> FiltrationData {
    let tot = Totalization::new(k);
    filtration_in(&tot, degree)
}

fn filtration_in(tot: &Totalization<'_>, degree: i64) -> FiltrationData {
    let cocycles = tot.cocycles(degree);
    let cohomology = Quotient::new(&cocycles, &tot.coboundaries(degree)).expect("d² = 0");
    let (lo, hi) = column_range(tot.complex());
    let mut steps = BTreeMap::new();
    for p in lo..=hi {
        let off = tot.filtration_offset(degree, p);
        let coords: Vec<SparseVec> = filtered_cocycles(&cocycles, off)
            .map(|z| cohomology.coords(z).expect("cocycle"))
            .collect();
        steps.insert(p, Subspace::span(cohomology.dim(), coords.iter()));
    }
    FiltrationData { degree, cohomology, steps }
}

/// `dim F^p H^k` keyed by `(k, p)`, for `p` from the lowest column to one past
/// the highest. Uses pivot counts only: `dim(Z ∩ F^p) − dim(B ∩ F^p)`.
pub fn filtration_dims(k: &DoubleComplex) -> BTreeMap<(i64, i64), usize> {
    let tot = Totalization::new(k);
    let (lo, hi) = column_range(k);
    let mut out = BTreeMap::new();
    for t in tot.degrees() {
        let cocycles = tot.cocycles(t);
        let boundaries = tot.coboundaries(t);
        for p in lo..=hi {
            let off = tot.filtration_offset(t, p);
            out.insert((t, p), cocycles.dim_from(off) - boundaries.dim_from(off));
        }
    }
    out
}

/// Outcome of the Hodge-structure test in one degree.
#[derive(Clone, Debug)]
pub struct HodgeCheck {
    pub degree: i64,
    pub holds: bool,
    pub cohomology_dim: usize,
    /// `V^{p,q} = F^p H^k ∩ σ(F^q H^k)` in the coordinates of `H^k`.
    pub pieces: BTreeMap<Bidegree, Subspace>,
}

impl HodgeCheck {
    pub fn piece_dims(&self) -> BTreeMap<Bidegree, usize> {
        self.pieces.iter().map(|(b, s)| (*b, s.dim())).collect()
    }
}

/// `σ` on `H^k`, in quotient coordinates (conjugate-linear).
fn sigma_on_classes(tot: &Totalization<'_>, f: &FiltrationData, v: &SparseVec) -> SparseVec {
    let lifted = f.cohomology.lift(v);
    let image = tot.apply_sigma(f.degree, &lifted).expect("real structure");
    f.cohomology.coords(&image).expect("σ maps cocycles to cocycles")
}

/// Decides whether `H^k = ⊕_{p+q=k} V^{p,q}` with `σ(V^{p,q}) = V^{q,p}`.
pub fn hodge_structure_check(k: &DoubleComplex, degree: i64) -> Result<HodgeCheck, ComplexError> {
    if !k.has_real_structure() {
        return Err(ComplexError::NoRealStructure);
    }
    let tot = Totalization::new(k);
    let f = filtration_in(&tot, degree);
    let n = f.cohomology.dim();
    let conj_step = |q: i64| -> Subspace {
        let imgs: Vec<SparseVec> = match f.steps.get(&q) {
            Some(s) => s.basis().iter().map(|v| sigma_on_classes(&tot, &f, v)).collect(),
            None if f.steps.keys().next().is_some_and(|lo| q < *lo) => {
                (0..n).map(|i| sigma_on_classes(&tot, &f, &SparseVec::unit(i))).collect()
            }
            None => Vec::new(),
        };
        Subspace::span(n, imgs.iter())
    };
    let step = |p: i64| -> Subspace {
        match f.steps.get(&p) {
            Some(s) => s.clone(),
            None if f.steps.keys().next().is_some_and(|lo| p < *lo) => Subspace::full(n),
            None => Subspace::zero(n),
        }
    };
    let (lo, hi) = column_range(k);
    let mut pieces = BTreeMap::new();
    for p in (degree - hi)..=hi {
        let q = degree - p;
        let v = step(p).intersection(&conj_step(q)).expect("same ambient");
        if v.dim() > 0 || (p >= lo && q >= lo) {
            pieces.insert(Bidegree::new(p, q), v);
        }
    }
    let total: usize = pieces.values().map(|v| v.dim()).sum();
    let sum = pieces.values().fold(Subspace::zero(n), |acc, v| acc.sum(v).expect("same ambient"));
    let symmetric = pieces.iter().all(|(b, v)| {
        let imgs: Vec<SparseVec> = v.basis().iter().map(|x| sigma_on_classes(&tot, &f, x)).collect();
        let image = Subspace::span(n, imgs.iter());
        let mirror = pieces.get(&b.swap()).cloned().unwrap_or_else(|| Subspace::zero(n));
        image == mirror
    });
    let holds = total == n && sum.dim() == n && symmetric;
    Ok(HodgeCheck { degree, holds, cohomology_dim: n, pieces })
}
