//! Bounded double complexes over the Gaussian rationals, optionally with a
//! real structure.
//!
//! `K^{p,q}` is stored by dimension only; `d1: K^{p,q} → K^{p+1,q}` and
//! `d2: K^{p,q} → K^{p,q+1}` are matrices keyed by their source bidegree. A
//! real structure is a conjugate-linear involution `σ: K^{p,q} → K^{q,p}`
//! with `σ(v) = S·conj(v)`, again keyed by source bidegree.

pub mod builtin;
pub mod io;
pub mod morphism;
pub mod ops;

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ComplexError;
use crate::linalg::{ExactMatrix, SparseVec};

pub use morphism::ComplexMorphism;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: i64,
    pub q: i64,
}

impl Bidegree {
    pub const fn new(p: i64, q: i64) -> Self {
        Bidegree { p, q }
    }

    pub fn total(self) -> i64 {
        self.p + self.q
    }

    /// `(q, p)`: where conjugation sends this bidegree.
    pub fn swap(self) -> Self {
        Bidegree { p: self.q, q: self.p }
    }

    pub fn offset(self, dp: i64, dq: i64) -> Self {
        Bidegree { p: self.p + dp, q: self.q + dq }
    }

    pub fn d1_target(self) -> Self {
        self.offset(1, 0)
    }

    pub fn d2_target(self) -> Self {
        self.offset(0, 1)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Inclusive bounding rectangle of the support.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub pmin: i64,
    pub pmax: i64,
    pub qmin: i64,
    pub qmax: i64,
}

impl Bounds {
    pub fn kmin(&self) -> i64 {
        self.pmin + self.qmin
    }

    pub fn kmax(&self) -> i64 {
        self.pmax + self.qmax
    }

    pub fn union(&self, other: &Bounds) -> Bounds {
        Bounds {
            pmin: self.pmin.min(other.pmin),
            pmax: self.pmax.max(other.pmax),
            qmin: self.qmin.min(other.qmin),
            qmax: self.qmax.max(other.qmax),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    spaces: BTreeMap<Bidegree, usize>,
    d1: BTreeMap<Bidegree, ExactMatrix>,
    d2: BTreeMap<Bidegree, ExactMatrix>,
    sigma: Option<BTreeMap<Bidegree, ExactMatrix>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ViolationKind {
    /// `d1∘d1 ≠ 0`
    D1Squared,
    /// `d2∘d2 ≠ 0`
    D2Squared,
    /// `d1∘d2 + d2∘d1 ≠ 0`
    AntiCommute,
    /// `σ∘σ ≠ id`
    SigmaInvolution,
    /// `σ∘d2 ≠ d1∘σ` or `σ∘d1 ≠ d2∘σ`
    SigmaIntertwine,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::D1Squared => "d1∘d1 ≠ 0",
            ViolationKind::D2Squared => "d2∘d2 ≠ 0",
            ViolationKind::AntiCommute => "d1∘d2 + d2∘d1 ≠ 0",
            ViolationKind::SigmaInvolution => "σ∘σ ≠ id",
            ViolationKind::SigmaIntertwine => "σ does not exchange d1 and d2",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub at: Bidegree,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.kind, self.at)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn check_map(
    what: &'static str,
    spaces: &BTreeMap<Bidegree, usize>,
    maps: BTreeMap<Bidegree, ExactMatrix>,
    target: impl Fn(Bidegree) -> Bidegree,
) -> Result<BTreeMap<Bidegree, ExactMatrix>, ComplexError> {
    let mut out = BTreeMap::new();
    for (b, m) in maps {
        let src = spaces.get(&b).copied().unwrap_or(0);
        let tgt = spaces.get(&target(b)).copied().unwrap_or(0);
        let zero_sided = src == 0 || tgt == 0;
        let shape_ok = (m.rows() == tgt && m.cols() == src) || (zero_sided && m.is_zero());
        if !shape_ok {
            return Err(ComplexError::Shape {
                what,
                at: b,
                expected: (tgt, src),
                found: (m.rows(), m.cols()),
            });
        }
        if !zero_sided && !m.is_zero() {
            out.insert(b, m);
        }
    }
    Ok(out)
}

impl DoubleComplex {
    /// Builds a complex after checking matrix shapes. Zero spaces and zero
    /// maps are dropped. Algebraic identities are not checked here; see
    /// [`DoubleComplex::validate`] and [`DoubleComplex::validated`].
    pub fn new(
        spaces: BTreeMap<Bidegree, usize>,
        d1: BTreeMap<Bidegree, ExactMatrix>,
        d2: BTreeMap<Bidegree, ExactMatrix>,
        sigma: Option<BTreeMap<Bidegree, ExactMatrix>>,
    ) -> Result<Self, ComplexError> {
        let spaces: BTreeMap<Bidegree, usize> = spaces.into_iter().filter(|(_, d)| *d > 0).collect();
        let d1 = check_map("d1", &spaces, d1, Bidegree::d1_target)?;
        let d2 = check_map("d2", &spaces, d2, Bidegree::d2_target)?;
        let sigma = match sigma {
            None => None,
            Some(s) => {
                let checked = check_map("sigma", &spaces, s, Bidegree::swap)?;
                let mut full = BTreeMap::new();
                for b in spaces.keys() {
                    let m = checked.get(b).cloned().unwrap_or_else(|| {
                        ExactMatrix::zeros(spaces.get(&b.swap()).copied().unwrap_or(0), spaces[b])
                    });
                    full.insert(*b, m);
                }
                Some(full)
            }
        };
        Ok(DoubleComplex { spaces, d1, d2, sigma })
    }

    /// [`DoubleComplex::new`] followed by validation.
    pub fn validated(
        spaces: BTreeMap<Bidegree, usize>,
        d1: BTreeMap<Bidegree, ExactMatrix>,
        d2: BTreeMap<Bidegree, ExactMatrix>,
        sigma: Option<BTreeMap<Bidegree, ExactMatrix>>,
    ) -> Result<Self, ComplexError> {
        let k = Self::new(spaces, d1, d2, sigma)?;
        let report = k.validate();
        if !report.is_valid() {
            return Err(ComplexError::Invalid(report));
        }
        Ok(k)
    }

    pub fn empty() -> Self {
        DoubleComplex { spaces: BTreeMap::new(), d1: BTreeMap::new(), d2: BTreeMap::new(), sigma: None }
    }

    /// Same complex with the real structure removed.
    pub fn without_real_structure(&self) -> Self {
        DoubleComplex { sigma: None, ..self.clone() }
    }

    pub fn dim(&self, b: Bidegree) -> usize {
        self.spaces.get(&b).copied().unwrap_or(0)
    }

    pub fn spaces(&self) -> &BTreeMap<Bidegree, usize> {
        &self.spaces
    }

    pub fn support(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.spaces.keys().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn bounds(&self) -> Option<Bounds> {
        let mut it = self.spaces.keys();
        let first = it.next()?;
        let mut b = Bounds { pmin: first.p, pmax: first.p, qmin: first.q, qmax: first.q };
        for x in it {
            b.pmin = b.pmin.min(x.p);
            b.pmax = b.pmax.max(x.p);
            b.qmin = b.qmin.min(x.q);
            b.qmax = b.qmax.max(x.q);
        }
        Some(b)
    }

    /// Total degrees `k` with `Tot^k ≠ 0`, as a contiguous range covering them.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.spaces.keys().map(|b| b.total()).min()?;
        let hi = self.spaces.keys().map(|b| b.total()).max()?;
        Some((lo, hi))
    }

    /// Bidegrees of total degree `k` in ascending `p`.
    pub fn diagonal(&self, k: i64) -> Vec<Bidegree> {
        self.spaces.keys().filter(|b| b.total() == k).copied().collect()
    }

    pub fn d1(&self, b: Bidegree) -> Cow<'_, ExactMatrix> {
        match self.d1.get(&b) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(ExactMatrix::zeros(self.dim(b.d1_target()), self.dim(b))),
        }
    }

    pub fn d2(&self, b: Bidegree) -> Cow<'_, ExactMatrix> {
        match self.d2.get(&b) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(ExactMatrix::zeros(self.dim(b.d2_target()), self.dim(b))),
        }
    }

    /// Nonzero `d1` blocks keyed by source.
    pub fn d1_blocks(&self) -> &BTreeMap<Bidegree, ExactMatrix> {
        &self.d1
    }

    pub fn d2_blocks(&self) -> &BTreeMap<Bidegree, ExactMatrix> {
        &self.d2
    }

    pub fn apply_d1(&self, b: Bidegree, v: &SparseVec) -> SparseVec {
        self.d1.get(&b).map(|m| m.apply(v)).unwrap_or_default()
    }

    pub fn apply_d2(&self, b: Bidegree, v: &SparseVec) -> SparseVec {
        self.d2.get(&b).map(|m| m.apply(v)).unwrap_or_default()
    }

    /// `d1 ∘ d2: K^{p,q} → K^{p+1,q+1}`.
    pub fn d1d2(&self, b: Bidegree) -> ExactMatrix {
        let top = self.d1(b.d2_target());
        top.mul(&self.d2(b)).expect("composable")
    }

    pub fn has_real_structure(&self) -> bool {
        self.sigma.is_some()
    }

    /// The matrix `S` of `σ` on `K^b` (into `K^{b.swap()}`).
    pub fn sigma(&self, b: Bidegree) -> Option<Cow<'_, ExactMatrix>> {
        let s = self.sigma.as_ref()?;
        Some(match s.get(&b) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(ExactMatrix::zeros(self.dim(b.swap()), self.dim(b))),
        })
    }

    pub fn sigma_blocks(&self) -> Option<&BTreeMap<Bidegree, ExactMatrix>> {
        self.sigma.as_ref()
    }

    /// `σ(v) = S·conj(v)` for `v ∈ K^b`.
    pub fn apply_sigma(&self, b: Bidegree, v: &SparseVec) -> Option<SparseVec> {
        let s = self.sigma.as_ref()?;
        Some(s.get(&b).map(|m| m.apply(&v.conj())).unwrap_or_default())
    }

    /// Checks `d1² = 0`, `d2² = 0`, anticommutation and, if present, the
    /// involution and intertwining identities of the real structure.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for &b in self.spaces.keys() {
            let d1 = self.d1(b);
            let d2 = self.d2(b);
            if !self.d1(b.d1_target()).mul(&d1).expect("shape").is_zero() {
                violations.push(Violation { kind: ViolationKind::D1Squared, at: b });
            }
            if !self.d2(b.d2_target()).mul(&d2).expect("shape").is_zero() {
                violations.push(Violation { kind: ViolationKind::D2Squared, at: b });
            }
            let a = self.d1(b.d2_target()).mul(&d2).expect("shape");
            let c = self.d2(b.d1_target()).mul(&d1).expect("shape");
            if !a.add(&c).expect("shape").is_zero() {
                violations.push(Violation { kind: ViolationKind::AntiCommute, at: b });
            }
            if self.sigma.is_some() {
                let s = self.sigma(b).expect("present");
                let back = self.sigma(b.swap()).expect("present");
                let twice = back.mul(&s.conj()).expect("shape");
                if twice != ExactMatrix::identity(self.dim(b)) {
                    violations.push(Violation { kind: ViolationKind::SigmaInvolution, at: b });
                }
                // σ∘d2 = d1∘σ and σ∘d1 = d2∘σ on K^b
                let lhs = self.d1(b.swap()).mul(&s).expect("shape");
                let rhs = self.sigma(b.d2_target()).expect("present").mul(&d2.conj()).expect("shape");
                let lhs2 = self.d2(b.swap()).mul(&s).expect("shape");
                let rhs2 = self.sigma(b.d1_target()).expect("present").mul(&d1.conj()).expect("shape");
                if lhs != rhs || lhs2 != rhs2 {
                    violations.push(Violation { kind: ViolationKind::SigmaIntertwine, at: b });
                }
            }
        }
        violations.sort_by_key(|v| (v.at, v.kind));
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }
}
