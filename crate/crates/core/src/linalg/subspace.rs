//! Subspaces with canonical bases, and quotients with explicit coordinates.

use super::echelon::{Echelon, Insert};
use super::gauss::GaussRat;
use super::matrix::ExactMatrix;
use super::sparse::{combine, SparseVec};
use crate::error::LinalgError;

/// A subspace of `k^ambient`, stored by its fully reduced echelon basis so
/// that equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(SparseVec::unit).collect() }
    }

    pub fn span<'a, I: IntoIterator<Item = &'a SparseVec>>(ambient: usize, vecs: I) -> Self {
        let mut e = Echelon::new(ambient);
        for v in vecs {
            e.insert(v);
        }
        Self::from_echelon(&e)
    }

    pub fn from_echelon(e: &Echelon) -> Self {
        Subspace { ambient: e.dim(), basis: e.canonical_basis() }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &ExactMatrix) -> Self {
        Self::span(m.rows(), m.columns().iter())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_columns(self.ambient, self.basis.clone())
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.leading().expect("nonzero").0).collect()
    }

    /// An echelon structure over the basis (rows are already reduced).
    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient);
        for b in &self.basis {
            e.insert(b);
        }
        e
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.echelon().contains(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        let e = other.echelon();
        self.ambient == other.ambient && self.basis.iter().all(|b| e.contains(b))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        Ok(Self::span(self.ambient, self.basis.iter().chain(other.basis.iter())))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let (small, large) = if self.dim() <= other.dim() { (self, other) } else { (other, self) };
        let large_e = large.echelon();
        let residuals: Vec<SparseVec> = small.basis.iter().map(|b| large_e.reduce(b).residual).collect();
        let relations = relations_among(self.ambient, &residuals);
        let vecs: Vec<SparseVec> = relations.iter().map(|r| combine(&small.basis, r)).collect();
        Ok(Self::span(self.ambient, vecs.iter()))
    }

    /// `{x : map·x ∈ target}`.
    pub fn preimage(map: &ExactMatrix, target: &Subspace) -> Result<Subspace, LinalgError> {
        if map.rows() != target.ambient {
            return Err(LinalgError::AmbientMismatch { left: map.rows(), right: target.ambient });
        }
        let te = target.echelon();
        let residuals: Vec<SparseVec> = map.columns().iter().map(|c| te.reduce(c).residual).collect();
        let relations = relations_among(map.rows(), &residuals);
        Ok(Self::span(map.cols(), relations.iter()))
    }

    /// `map(self)`.
    pub fn image_under(&self, map: &ExactMatrix) -> Result<Subspace, LinalgError> {
        if map.cols() != self.ambient {
            return Err(LinalgError::AmbientMismatch { left: map.cols(), right: self.ambient });
        }
        let imgs: Vec<SparseVec> = self.basis.iter().map(|b| map.apply(b)).collect();
        Ok(Self::span(map.rows(), imgs.iter()))
    }

    /// `dim(self / sub)`; `sub` must be contained in `self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize, LinalgError> {
        self.check_ambient(sub)?;
        if !sub.is_subspace_of(self) {
            return Err(LinalgError::NotSubspace);
        }
        Ok(self.dim() - sub.dim())
    }

    /// Vectors from `sup`'s basis that extend `self` to a basis of `sup`
    /// (or of `self + sup` when `self` is not contained in `sup`).
    pub fn complement_in(&self, sup: &Subspace) -> Vec<SparseVec> {
        let mut e = self.echelon();
        sup.basis.iter().filter(|b| matches!(e.insert(b), Insert::Independent(_))).cloned().collect()
    }

    /// Standard basis vectors completing `self` to the whole ambient space.
    pub fn coordinate_complement(&self) -> Vec<SparseVec> {
        let piv: std::collections::BTreeSet<usize> = self.pivots().into_iter().collect();
        (0..self.ambient).filter(|i| !piv.contains(i)).map(SparseVec::unit).collect()
    }

    /// Dimension of `self ∩ {x : x_i = 0 for i < coord}`.
    pub fn dim_from(&self, coord: usize) -> usize {
        self.basis.iter().filter(|b| b.leading().expect("nonzero").0 >= coord).count()
    }
}

/// Basis of linear relations among `vecs` (as coefficient vectors).
pub fn relations_among(dim: usize, vecs: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::with_tracking(dim);
    let mut out = Vec::new();
    for v in vecs {
        if let Insert::Dependent(rel) = e.insert(v) {
            out.push(rel);
        }
    }
    out
}

/// The quotient `numerator / denominator` with chosen representatives.
///
/// Representatives are the numerator basis vectors (in canonical order) that
/// are independent modulo the denominator.
#[derive(Clone, Debug)]
pub struct Quotient {
    ambient: usize,
    reps: Vec<SparseVec>,
    echelon: Echelon,
    rep_of_generator: Vec<Option<usize>>,
}

impl Quotient {
    pub fn new(numerator: &Subspace, denominator: &Subspace) -> Result<Quotient, LinalgError> {
        numerator.check_ambient(denominator)?;
        let mut e = Echelon::with_tracking(numerator.ambient);
        let mut rep_of_generator = Vec::new();
        for b in denominator.basis() {
            e.insert(b);
            rep_of_generator.push(None);
        }
        let mut reps = Vec::new();
        for b in numerator.basis() {
            match e.insert(b) {
                Insert::Independent(_) => {
                    rep_of_generator.push(Some(reps.len()));
                    reps.push(b.clone());
                }
                Insert::Dependent(_) => rep_of_generator.push(None),
            }
        }
        if e.rank() != numerator.dim() {
            return Err(LinalgError::NotSubspace);
        }
        Ok(Quotient { ambient: numerator.ambient, reps, echelon: e, rep_of_generator })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[SparseVec] {
        &self.reps
    }

    /// Coordinates of the class of `v` in the representative basis, or `None`
    /// if `v` is not in the numerator.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let comb = self.echelon.express(v)?;
        Some(comb.remap(|g| self.rep_of_generator[g]))
    }

    /// A vector representing the class with the given coordinates.
    pub fn lift(&self, coords: &SparseVec) -> SparseVec {
        combine(&self.reps, coords)
    }

    /// Matrix (in representative coordinates) of the map induced by `f` into
    /// `target`. `None` if some image leaves the target numerator.
    pub fn induced_matrix(&self, target: &Quotient, f: impl Fn(&SparseVec) -> SparseVec) -> Option<ExactMatrix> {
        let mut cols = Vec::with_capacity(self.reps.len());
        for r in &self.reps {
            cols.push(target.coords(&f(r))?);
        }
        Some(ExactMatrix::from_columns(target.dim(), cols))
    }
}

/// `Σ c·v` helper for callers that hold a basis and coefficients.
pub fn lincomb(basis: &[SparseVec], coeffs: &[GaussRat]) -> SparseVec {
    let c = SparseVec::from_dense(coeffs);
    combine(basis, &c)
}
