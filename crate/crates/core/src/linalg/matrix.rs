//! Exact matrices over the Gaussian rationals.
//!
//! Storage is column-major with sparse columns: the differentials of the
//! larger models (tensor products reach a few thousand generators) are
//! overwhelmingly zero. The public interface is the usual dense one.

use std::collections::BTreeMap;

use super::echelon::{Echelon, Insert};
use super::gauss::GaussRat;
use super::sparse::SparseVec;
use super::subspace::Subspace;
use crate::error::LinalgError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, columns: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix { rows: n, cols: n, columns: (0..n).map(SparseVec::unit).collect() }
    }

    /// From row-major nested rows. All rows must have length `cols`.
    pub fn from_rows(rows: usize, cols: usize, data: &[Vec<GaussRat>]) -> Result<Self, LinalgError> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Shape { rows, cols });
        }
        let mut pairs: Vec<Vec<(usize, GaussRat)>> = vec![Vec::new(); cols];
        for (i, row) in data.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    pairs[j].push((i, x.clone()));
                }
            }
        }
        Ok(ExactMatrix {
            rows,
            cols,
            columns: pairs.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        })
    }

    /// Convenience constructor from integer rows; panics on ragged input.
    pub fn from_int_rows(data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let conv: Vec<Vec<GaussRat>> =
            data.iter().map(|r| r.iter().map(|x| GaussRat::from_int(*x)).collect()).collect();
        Self::from_rows(rows, cols, &conv).expect("rectangular")
    }

    /// Columns must only use indices below `rows`.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_index().is_none_or(|m| m < rows)));
        ExactMatrix { rows, cols: columns.len(), columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> GaussRat {
        self.columns[j].get(i)
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussRat>> {
        let mut out = vec![vec![GaussRat::ZERO; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col.iter() {
                out[*i][j] = x.clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    /// `M·v` for a sparse vector `v` of length `cols`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        if v.nnz() == 1 {
            let (j, c) = &v.entries()[0];
            return self.columns[*j].scale(c);
        }
        let mut acc: BTreeMap<usize, GaussRat> = BTreeMap::new();
        for (j, c) in v.iter() {
            for (i, x) in self.columns[*j].iter() {
                let e = acc.entry(*i).or_default();
                *e += &(x * c);
            }
        }
        SparseVec::from_map(acc)
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape { rows: other.rows, cols: self.cols });
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        })
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.check_same(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.check_same(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    fn check_same(&self, other: &ExactMatrix) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::Shape { rows: other.rows, cols: other.cols });
        }
        Ok(())
    }

    pub fn scale(&self, c: &GaussRat) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|col| col.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> ExactMatrix {
        self.scale(&-GaussRat::ONE)
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut pairs: Vec<Vec<(usize, GaussRat)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col.iter() {
                pairs[*i].push((j, x.clone()));
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: pairs.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::Shape { rows: other.rows, cols: other.cols });
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(ExactMatrix { rows: self.rows, cols: columns.len(), columns })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::Shape { rows: other.rows, cols: other.cols });
        }
        Ok(ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.add(&b.shifted(self.rows)))
                .collect(),
        })
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&ExactMatrix]) -> ExactMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut columns = Vec::new();
        let mut off = 0;
        for b in blocks {
            columns.extend(b.columns.iter().map(|c| c.shifted(off)));
            off += b.rows;
        }
        ExactMatrix { rows, cols: columns.len(), columns }
    }

    fn column_echelon(&self, tracking: bool) -> (Echelon, Vec<SparseVec>) {
        let mut e = if tracking { Echelon::with_tracking(self.rows) } else { Echelon::new(self.rows) };
        let mut relations = Vec::new();
        for c in &self.columns {
            if let Insert::Dependent(rel) = e.insert(c) {
                if tracking {
                    relations.push(rel);
                }
            }
        }
        (e, relations)
    }

    pub fn rank(&self) -> usize {
        self.column_echelon(false).0.rank()
    }

    /// Null space as a subspace of the source (dimension `cols − rank`).
    pub fn kernel(&self) -> Subspace {
        let (_, relations) = self.column_echelon(true);
        Subspace::span(self.cols, relations.iter())
    }

    /// Column space as a subspace of the target.
    pub fn image(&self) -> Subspace {
        Subspace::from_echelon(&self.column_echelon(false).0)
    }

    /// Some `x` with `M·x = b`, if one exists.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        self.column_echelon(true).0.express(b)
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let (e, _) = self.column_echelon(true);
        if e.rank() != self.cols {
            return None;
        }
        let columns = (0..self.rows).map(|i| e.express(&SparseVec::unit(i)).expect("full rank")).collect();
        Some(ExactMatrix { rows: self.rows, cols: self.cols, columns })
    }

    /// The submatrix of rows in `[lo, hi)`.
    pub fn row_window(&self, lo: usize, hi: usize) -> ExactMatrix {
        ExactMatrix {
            rows: hi - lo,
            cols: self.cols,
            columns: self.columns.iter().map(|c| c.window(lo, hi)).collect(),
        }
    }

    /// The submatrix of columns in `[lo, hi)`.
    pub fn col_window(&self, lo: usize, hi: usize) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: hi - lo, columns: self.columns[lo..hi].to_vec() }
    }
}
