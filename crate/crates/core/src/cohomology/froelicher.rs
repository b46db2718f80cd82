//! The Frölicher spectral sequence of the column filtration on `Tot K`.
//!
//! With `F^p` the column filtration of the total complex,
//! `Z_r^p = {x ∈ F^p : dx ∈ F^{p+r}}` (and `Z_r^p = F^p` for `r ≤ 0`),
//! `E_r^p = Z_r^p / (Z_{r−1}^{p+1} + d Z_{r−1}^{p−r+1})`, and the kernel of
//! `d_r` on `E_r^p` is the image of `Z_{r+1}^p + Z_{r−1}^{p+1}`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::hodge::{filtration_dims, hodge_filtration, FiltrationData, HodgeCheck};
use super::total::Totalization;
use super::{de_rham, dolbeault};
use crate::complex::{Bidegree, DoubleComplex};
use crate::linalg::{SparseVec, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Page {
    pub r: usize,
    /// `dim E_r^{p,q}` at every support bidegree.
    pub dims: BTreeMap<Bidegree, usize>,
    /// Rank of `d_r: E_r^{p,q} → E_r^{p+r,q−r+1}`, keyed by source.
    pub ranks: BTreeMap<Bidegree, usize>,
}

#[derive(Clone, Debug)]
pub struct SpectralSequenceData {
    pub pages: Vec<Page>,
    /// `dim gr_F^p H^{p+q}`, which the pages reach once `r` exceeds the
    /// width of the support.
    pub e_infinity: BTreeMap<Bidegree, usize>,
    pub degenerates_at_e1: bool,
    /// `F^p H^k` for every degree `k`.
    pub hodge_filtration: BTreeMap<i64, FiltrationData>,
    /// `V^{p,q} = F^p ∩ σ(F^q)` for every degree, when a real structure exists.
    pub hodge_pieces: Option<BTreeMap<i64, HodgeCheck>>,
}

/// Number of pages after which the sequence is stationary.
pub fn default_page_count(k: &DoubleComplex) -> usize {
    k.bounds().map_or(1, |b| (b.pmax - b.pmin + 1) as usize)
}

struct Filtered<'a> {
    tot: Totalization<'a>,
    cache: HashMap<(i64, i64, i64), Subspace>,
}

impl<'a> Filtered<'a> {
    /// `Z_r^p` inside `Tot^t`.
    fn z(&mut self, t: i64, p: i64, r: i64) -> Subspace {
        if let Some(s) = self.cache.get(&(t, p, r)) {
            return s.clone();
        }
        let n = self.tot.dim(t);
        let lo = self.tot.filtration_offset(t, p);
        let s = if r <= 0 {
            Subspace::span(n, (lo..n).map(SparseVec::unit).collect::<Vec<_>>().iter())
        } else {
            let hi = self.tot.filtration_offset(t + 1, p + r);
            let restricted = self.tot.differential(t).col_window(lo, n).row_window(0, hi);
            let kernel = restricted.kernel();
            let shifted: Vec<SparseVec> = kernel.basis().iter().map(|v| v.shifted(lo)).collect();
            Subspace::span(n, shifted.iter())
        };
        self.cache.insert((t, p, r), s.clone());
        s
    }

    fn e_dim(&mut self, b: Bidegree, r: i64) -> usize {
        let (t, p) = (b.total(), b.p);
        let z = self.z(t, p, r);
        let lower = self.z(t, p + 1, r - 1);
        let source = self.z(t - 1, p - r + 1, r - 1);
        let boundaries = source.image_under(&self.tot.differential(t - 1)).expect("shape");
        let den = lower.sum(&boundaries).expect("same ambient");
        z.dim() - den.dim()
    }

    fn d_rank(&mut self, b: Bidegree, r: i64) -> usize {
        let (t, p) = (b.total(), b.p);
        let z = self.z(t, p, r);
        let kernel = self.z(t, p, r + 1).sum(&self.z(t, p + 1, r - 1)).expect("same ambient");
        z.dim() - kernel.dim()
    }
}

/// Pages `E_1 … E_{pages}` (all pages up to stabilization when `None`).
pub fn froelicher(k: &DoubleComplex, pages: Option<usize>) -> SpectralSequenceData {
    let out = page_dims(k, pages);
    let fdims = filtration_dims(k);
    let e_infinity = k
        .support()
        .map(|b| {
            let at = |p: i64| fdims.get(&(b.total(), p)).copied().unwrap_or(0);
            (b, at(b.p) - at(b.p + 1))
        })
        .collect();
    let degrees: Vec<i64> = k.degree_range().map_or(Vec::new(), |(lo, hi)| (lo..=hi).collect());
    let hodge_filtration = degrees.iter().map(|t| (*t, hodge_filtration(k, *t))).collect();
    let hodge_pieces = k.has_real_structure().then(|| {
        degrees
            .iter()
            .map(|t| (*t, super::hodge_structure_check(k, *t).expect("real structure present")))
            .collect()
    });
    SpectralSequenceData { pages: out, e_infinity, degenerates_at_e1: degenerates_at_e1(k), hodge_filtration, hodge_pieces }
}

/// Page dimensions only, without the filtration data.
pub fn page_dims(k: &DoubleComplex, pages: Option<usize>) -> Vec<Page> {
    let r_max = pages.unwrap_or_else(|| default_page_count(k)).max(1);
    let mut f = Filtered { tot: Totalization::new(k), cache: HashMap::new() };
    (1..=r_max as i64)
        .map(|r| {
            let mut dims = BTreeMap::new();
            let mut ranks = BTreeMap::new();
            for b in k.support() {
                dims.insert(b, f.e_dim(b, r));
                ranks.insert(b, f.d_rank(b, r));
            }
            Page { r: r as usize, dims, ranks }
        })
        .collect()
}

/// `Σ_{p+q=k} dim E_1^{p,q} = b_k` for all `k`.
pub fn degenerates_at_e1(k: &DoubleComplex) -> bool {
    let betti = de_rham(k);
    let dol = dolbeault(k);
    betti.dims.iter().all(|(t, d)| dol.diagonal_sum(*t) == *d)
}
