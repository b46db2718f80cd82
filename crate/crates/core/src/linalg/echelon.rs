//! Incremental row echelon basis.
//!
//! Every stored row has its pivot at its smallest nonzero coordinate and the
//! pivot coefficient is 1. Rows are only semi-reduced: reduction walks
//! coordinates in ascending order, which is all the incremental operations
//! need, and [`Echelon::canonical_basis`] produces the fully reduced form. Optionally
//! each row remembers which combination of inserted vectors produced it, which
//! turns the same structure into a kernel, solve and coordinate engine.

use std::collections::BTreeMap;

use super::gauss::GaussRat;
use super::sparse::SparseVec;

const NO_ROW: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<u32>,
    tracks: Option<Vec<SparseVec>>,
    inserted: usize,
}

/// Outcome of [`Echelon::insert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    /// The vector was independent and created the given row.
    Independent(usize),
    /// The vector was dependent. When tracking, the payload is a nonzero
    /// relation `Σ c_g · v_g = 0` among inserted vectors (its own id included).
    Dependent(SparseVec),
}

/// Result of reducing a vector against the basis: `v = Σ c_r·row_r + residual`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub residual: SparseVec,
    pub used: Vec<(usize, GaussRat)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivot_row: vec![NO_ROW; dim], tracks: None, inserted: 0 }
    }

    pub fn with_tracking(dim: usize) -> Self {
        Echelon { tracks: Some(Vec::new()), ..Echelon::new(dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivot(&self, row: usize) -> usize {
        self.rows[row].leading().expect("rows are nonzero").0
    }

    pub fn row_with_pivot(&self, coord: usize) -> Option<usize> {
        match self.pivot_row[coord] {
            NO_ROW => None,
            r => Some(r as usize),
        }
    }

    /// Combination of inserted vectors equal to the given row (tracking only).
    pub fn track(&self, row: usize) -> Option<&SparseVec> {
        self.tracks.as_ref().map(|t| &t[row])
    }

    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut acc: BTreeMap<usize, GaussRat> = v.iter().cloned().collect();
        let mut used = Vec::new();
        let mut residual = Vec::new();
        let mut cursor = 0usize;
        loop {
            let Some((&k, _)) = acc.range(cursor..).next() else { break };
            let c = acc.remove(&k).expect("present");
            cursor = k + 1;
            match self.row_with_pivot(k) {
                Some(r) => {
                    for (j, x) in &self.rows[r].entries()[1..] {
                        let prod = x * &c;
                        match acc.get_mut(j) {
                            Some(e) => {
                                *e -= &prod;
                                if e.is_zero() {
                                    acc.remove(j);
                                }
                            }
                            None => {
                                acc.insert(*j, -prod);
                            }
                        }
                    }
                    used.push((r, c));
                }
                None => residual.push((k, c)),
            }
        }
        Reduction { residual: SparseVec::from_sorted_unchecked(residual), used }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).residual.is_zero()
    }

    /// Combination of tracked inserted vectors for a reduction's `used` list.
    fn combination(&self, used: &[(usize, GaussRat)]) -> SparseVec {
        let tracks = self.tracks.as_ref().expect("tracking enabled");
        let mut acc: BTreeMap<usize, GaussRat> = BTreeMap::new();
        for (r, c) in used {
            for (g, x) in tracks[*r].iter() {
                let e = acc.entry(*g).or_default();
                *e += &(x * c);
            }
        }
        SparseVec::from_map(acc)
    }

    pub fn insert(&mut self, v: &SparseVec) -> Insert {
        let id = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        let relation = self.tracks.as_ref().map(|_| {
            let comb = self.combination(&red.used);
            SparseVec::unit(id).sub(&comb)
        });
        if red.residual.is_zero() {
            return Insert::Dependent(relation.unwrap_or_default());
        }
        let (lead, c) = red.residual.leading().cloned().expect("nonzero");
        let inv = c.inv();
        let row = red.residual.scale(&inv);
        let r = self.rows.len();
        self.pivot_row[lead] = r as u32;
        self.rows.push(row);
        if let (Some(tracks), Some(rel)) = (self.tracks.as_mut(), relation) {
            tracks.push(rel.scale(&inv));
        }
        Insert::Independent(r)
    }

    /// Coordinates of `v` in terms of the inserted vectors, if `v` lies in
    /// their span (tracking only). Dependent inserts get coefficient zero.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        let red = self.reduce(v);
        if !red.residual.is_zero() {
            return None;
        }
        Some(self.combination(&red.used))
    }

    /// Number of rows whose pivot is at least `coord`; this is the dimension
    /// of the span intersected with the coordinate subspace `{x_i = 0, i < coord}`.
    pub fn count_pivots_from(&self, coord: usize) -> usize {
        self.pivot_row[coord.min(self.dim)..].iter().filter(|r| **r != NO_ROW).count()
    }

    /// The unique fully reduced basis: sorted by pivot, pivot 1, zeros at
    /// every other pivot.
    pub fn canonical_basis(&self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|r| std::cmp::Reverse(self.pivot(*r)));
        let mut canon: Vec<SparseVec> = Vec::with_capacity(order.len());
        let mut canon_of_pivot: BTreeMap<usize, usize> = BTreeMap::new();
        for r in order {
            let row = &self.rows[r];
            let piv = self.pivot(r);
            let mut acc: BTreeMap<usize, GaussRat> = row.iter().cloned().collect();
            let mut cursor = piv + 1;
            loop {
                let Some((&k, _)) = acc.range(cursor..).next() else { break };
                cursor = k + 1;
                if let Some(&cr) = canon_of_pivot.get(&k) {
                    let c = acc.remove(&k).expect("present");
                    for (j, x) in &canon[cr].entries()[1..] {
                        let e = acc.entry(*j).or_default();
                        *e -= &(x * &c);
                        if e.is_zero() {
                            acc.remove(j);
                        }
                    }
                }
            }
            canon_of_pivot.insert(piv, canon.len());
            canon.push(SparseVec::from_map(acc));
        }
        canon.reverse();
        canon
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|x| GaussRat::from_int(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn relations_are_tracked() {
        let mut e = Echelon::with_tracking(3);
        assert_eq!(e.insert(&v(&[1, 2, 0])), Insert::Independent(0));
        assert_eq!(e.insert(&v(&[0, 1, 1])), Insert::Independent(1));
        let Insert::Dependent(rel) = e.insert(&v(&[1, 4, 2])) else { panic!() };
        // v2 = v0 + 2 v1
        assert_eq!(rel, SparseVec::from_pairs([(0, GaussRat::from_int(-1)), (1, GaussRat::from_int(-2)), (2, GaussRat::ONE)]));
        let coords = e.express(&v(&[2, 5, 1])).unwrap();
        assert_eq!(coords, SparseVec::from_pairs([(0, GaussRat::from_int(2)), (1, GaussRat::ONE)]));
        assert!(e.express(&v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn canonical_basis_is_reduced() {
        let mut e = Echelon::new(3);
        e.insert(&v(&[1, 1, 1]));
        e.insert(&v(&[0, 1, 2]));
        let c = e.canonical_basis();
        assert_eq!(c, vec![v(&[1, 0, -1]), v(&[0, 1, 2])]);
        assert_eq!(e.count_pivots_from(1), 1);
        assert_eq!(e.count_pivots_from(0), 2);
        assert_eq!(e.count_pivots_from(3), 0);
    }
}
