//! Sparse coordinate vectors: sorted `(index, value)` pairs with no zeros.

use std::collections::BTreeMap;

use super::gauss::GaussRat;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct SparseVec {
    entries: Vec<(usize, GaussRat)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, GaussRat::ONE)] }
    }

    /// Builds from arbitrary pairs: sorts, merges duplicates, drops zeros.
    pub fn from_pairs<I: IntoIterator<Item = (usize, GaussRat)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, GaussRat> = BTreeMap::new();
        for (i, v) in pairs {
            let e = acc.entry(i).or_default();
            *e += &v;
        }
        SparseVec { entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(values: &[GaussRat]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, GaussRat)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub(crate) fn from_map(map: BTreeMap<usize, GaussRat>) -> Self {
        SparseVec { entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn to_dense(&self, n: usize) -> Vec<GaussRat> {
        let mut out = vec![GaussRat::ZERO; n];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, GaussRat)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, GaussRat)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> GaussRat {
        match self.entries.binary_search_by_key(&i, |(k, _)| *k) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => GaussRat::ZERO,
        }
    }

    pub fn leading(&self) -> Option<&(usize, GaussRat)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &GaussRat) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        if c.is_one() {
            return self.clone();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect() }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: &GaussRat, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, y * c));
                }
                (Some((i, _)), Some((j, _))) => {
                    if i < j {
                        out.push(a.next().unwrap().clone());
                    } else if j < i {
                        let (j, y) = b.next().unwrap();
                        out.push((*j, y * c));
                    } else {
                        let (i, x) = a.next().unwrap();
                        let (_, y) = b.next().unwrap();
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                    }
                }
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&GaussRat::ONE, other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&-GaussRat::ONE, other)
    }

    pub fn conj(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.conj())).collect() }
    }

    /// Reindexes every coordinate by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect() }
    }

    /// Keeps coordinates in `[lo, hi)`, reindexed to start at zero.
    pub fn window(&self, lo: usize, hi: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, v)| (i - lo, v.clone()))
                .collect(),
        }
    }

    /// Reindexes through `map`; indices mapped to `None` are dropped.
    pub fn remap(&self, map: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().filter_map(|(i, v)| map(*i).map(|j| (j, v.clone()))))
    }
}

/// Linear combination `Σ c_k · vecs[k]` for sparse coefficient vector `coeffs`.
pub fn combine(vecs: &[SparseVec], coeffs: &SparseVec) -> SparseVec {
    let mut acc: BTreeMap<usize, GaussRat> = BTreeMap::new();
    for (k, c) in coeffs.iter() {
        for (i, v) in vecs[*k].iter() {
            let e = acc.entry(*i).or_default();
            *e += &(v * c);
        }
    }
    SparseVec::from_map(acc)
}
