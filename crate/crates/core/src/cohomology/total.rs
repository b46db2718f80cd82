//! The total complex `Tot^k = ⊕_{p+q=k} K^{p,q}` with `d = d1 + d2`.
//!
//! Blocks of `Tot^k` are ordered by ascending `p`, so the column filtration
//! `F^p Tot^k = ⊕_{r≥p} K^{r,k−r}` is a suffix of coordinates.

use std::borrow::Cow;
use std::collections::BTreeMap;

use super::BettiNumbers;
use crate::complex::{Bidegree, DoubleComplex};
use crate::linalg::{ExactMatrix, Quotient, SparseVec, Subspace};

#[derive(Clone, Debug)]
struct Degree {
    blocks: Vec<(Bidegree, usize)>,
    dim: usize,
    d: Option<ExactMatrix>,
}

#[derive(Clone, Debug)]
pub struct Totalization<'a> {
    complex: &'a DoubleComplex,
    degrees: BTreeMap<i64, Degree>,
}

impl<'a> Totalization<'a> {
    pub fn new(k: &'a DoubleComplex) -> Self {
        let mut degrees: BTreeMap<i64, Degree> = BTreeMap::new();
        if let Some((lo, hi)) = k.degree_range() {
            for t in lo..=hi + 1 {
                let mut blocks = Vec::new();
                let mut off = 0;
                for b in k.diagonal(t) {
                    blocks.push((b, off));
                    off += k.dim(b);
                }
                degrees.insert(t, Degree { blocks, dim: off, d: None });
            }
            for t in lo..=hi {
                let rows = degrees[&(t + 1)].dim;
                let mut columns = Vec::with_capacity(degrees[&t].dim);
                for &(b, _) in &degrees[&t].blocks {
                    let t1 = block_offset(&degrees[&(t + 1)], b.d1_target());
                    let t2 = block_offset(&degrees[&(t + 1)], b.d2_target());
                    for j in 0..k.dim(b) {
                        let unit = SparseVec::unit(j);
                        let mut col = SparseVec::new();
                        if let Some(o) = t1 {
                            col = col.add(&k.apply_d1(b, &unit).shifted(o));
                        }
                        if let Some(o) = t2 {
                            col = col.add(&k.apply_d2(b, &unit).shifted(o));
                        }
                        columns.push(col);
                    }
                }
                degrees.get_mut(&t).expect("present").d = Some(ExactMatrix::from_columns(rows, columns));
            }
        }
        Totalization { complex: k, degrees }
    }

    pub fn complex(&self) -> &DoubleComplex {
        self.complex
    }

    /// Degrees `k` of the complex (the range of total degrees of its support).
    pub fn degrees(&self) -> Vec<i64> {
        match self.complex.degree_range() {
            Some((lo, hi)) => (lo..=hi).collect(),
            None => Vec::new(),
        }
    }

    pub fn dim(&self, t: i64) -> usize {
        self.degrees.get(&t).map_or(0, |d| d.dim)
    }

    pub fn blocks(&self, t: i64) -> &[(Bidegree, usize)] {
        self.degrees.get(&t).map_or(&[], |d| &d.blocks)
    }

    /// `d: Tot^t → Tot^{t+1}`.
    pub fn differential(&self, t: i64) -> Cow<'_, ExactMatrix> {
        match self.degrees.get(&t).and_then(|d| d.d.as_ref()) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(ExactMatrix::zeros(self.dim(t + 1), self.dim(t))),
        }
    }

    /// First coordinate of `F^p Tot^t`.
    pub fn filtration_offset(&self, t: i64, p: i64) -> usize {
        let Some(d) = self.degrees.get(&t) else { return 0 };
        d.blocks.iter().find(|(b, _)| b.p >= p).map_or(d.dim, |(_, o)| *o)
    }

    /// Places `v ∈ K^b` into `Tot^{p+q}`.
    pub fn embed(&self, b: Bidegree, v: &SparseVec) -> SparseVec {
        let off = self.degrees.get(&b.total()).and_then(|d| block_offset(d, b)).expect("bidegree in support");
        v.shifted(off)
    }

    /// The `K^b` component of `x ∈ Tot^{p+q}`.
    pub fn component(&self, b: Bidegree, x: &SparseVec) -> SparseVec {
        let off = self.degrees.get(&b.total()).and_then(|d| block_offset(d, b)).expect("bidegree in support");
        x.window(off, off + self.complex.dim(b))
    }

    /// The conjugate-linear `σ` on `Tot^t`, blockwise.
    pub fn apply_sigma(&self, t: i64, x: &SparseVec) -> Option<SparseVec> {
        let mut out = SparseVec::new();
        for &(b, _) in self.blocks(t) {
            let part = self.complex.apply_sigma(b, &self.component(b, x))?;
            out = out.add(&self.embed(b.swap(), &part));
        }
        Some(out)
    }

    pub fn cocycles(&self, t: i64) -> Subspace {
        self.differential(t).kernel()
    }

    pub fn coboundaries(&self, t: i64) -> Subspace {
        self.differential(t - 1).image()
    }

    /// `H^t` with explicit representatives.
    pub fn cohomology(&self, t: i64) -> Quotient {
        Quotient::new(&self.cocycles(t), &self.coboundaries(t)).expect("d² = 0")
    }

    pub fn betti(&self, t: i64) -> usize {
        self.dim(t) - self.differential(t).rank() - self.differential(t - 1).rank()
    }
}

fn block_offset(d: &Degree, b: Bidegree) -> Option<usize> {
    d.blocks.iter().find(|(x, _)| *x == b).map(|(_, o)| *o)
}

/// `H^k(Tot K, d)` for every `k` in the degree range.
pub fn de_rham(k: &DoubleComplex) -> BettiNumbers {
    let tot = Totalization::new(k);
    BettiNumbers { dims: tot.degrees().into_iter().map(|t| (t, tot.betti(t))).collect() }
}
