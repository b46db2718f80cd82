use std::borrow::Cow;
use std::collections::BTreeMap;

use super::{ops, Bidegree, DoubleComplex};
use crate::error::ComplexError;
use crate::linalg::{ExactMatrix, SparseVec};

/// A bidegree-preserving linear map between two double complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMorphism {
    source: DoubleComplex,
    target: DoubleComplex,
    components: BTreeMap<Bidegree, ExactMatrix>,
}

impl ComplexMorphism {
    /// Checks shapes and that the map commutes with `d1` and `d2`.
    pub fn new(
        source: DoubleComplex,
        target: DoubleComplex,
        components: BTreeMap<Bidegree, ExactMatrix>,
    ) -> Result<Self, ComplexError> {
        let mut kept = BTreeMap::new();
        for (b, m) in components {
            let expected = (target.dim(b), source.dim(b));
            if (m.rows(), m.cols()) != expected {
                if m.is_zero() && (expected.0 == 0 || expected.1 == 0) {
                    continue;
                }
                return Err(ComplexError::Shape { what: "morphism", at: b, expected, found: (m.rows(), m.cols()) });
            }
            if !m.is_zero() {
                kept.insert(b, m);
            }
        }
        let f = ComplexMorphism { source, target, components: kept };
        f.check_chain_map()?;
        Ok(f)
    }

    fn check_chain_map(&self) -> Result<(), ComplexError> {
        for b in self.source.support() {
            let f = self.component(b);
            let left = self.target.d1(b).mul(&f).expect("shape");
            let right = self.component(b.d1_target()).mul(&self.source.d1(b)).expect("shape");
            if left != right {
                return Err(ComplexError::NotChainMap { which: "d1", at: b });
            }
            let left = self.target.d2(b).mul(&f).expect("shape");
            let right = self.component(b.d2_target()).mul(&self.source.d2(b)).expect("shape");
            if left != right {
                return Err(ComplexError::NotChainMap { which: "d2", at: b });
            }
        }
        Ok(())
    }

    pub fn identity(k: &DoubleComplex) -> Self {
        let components = k.spaces().iter().map(|(b, d)| (*b, ExactMatrix::identity(*d))).collect();
        ComplexMorphism { source: k.clone(), target: k.clone(), components }
    }

    pub fn zero(source: &DoubleComplex, target: &DoubleComplex) -> Self {
        ComplexMorphism { source: source.clone(), target: target.clone(), components: BTreeMap::new() }
    }

    /// Inclusion of summand `index` into `direct_sum(ks)`.
    pub fn summand_inclusion(ks: &[&DoubleComplex], index: usize) -> Result<Self, ComplexError> {
        let sum = ops::direct_sum(ks)?;
        let part = ks[index];
        let mut components = BTreeMap::new();
        for (&b, &d) in part.spaces() {
            let off: usize = ks[..index].iter().map(|k| k.dim(b)).sum();
            let cols = (0..d).map(|j| SparseVec::unit(off + j)).collect();
            components.insert(b, ExactMatrix::from_columns(sum.dim(b), cols));
        }
        Ok(ComplexMorphism { source: part.clone(), target: sum, components })
    }

    /// `⊕ f_i : ⊕ source_i → ⊕ target_i`.
    pub fn direct_sum(fs: &[&ComplexMorphism]) -> Result<Self, ComplexError> {
        let sources: Vec<&DoubleComplex> = fs.iter().map(|f| &f.source).collect();
        let targets: Vec<&DoubleComplex> = fs.iter().map(|f| &f.target).collect();
        let source = ops::direct_sum(&sources)?;
        let target = ops::direct_sum(&targets)?;
        let mut components = BTreeMap::new();
        for (&b, &d) in source.spaces() {
            let blocks: Vec<ExactMatrix> = fs.iter().map(|f| f.component(b).into_owned()).collect();
            let refs: Vec<&ExactMatrix> = blocks.iter().collect();
            let m = ExactMatrix::block_diag(&refs);
            debug_assert_eq!((m.rows(), m.cols()), (target.dim(b), d));
            components.insert(b, m);
        }
        Ok(ComplexMorphism { source, target, components })
    }

    /// The same map between diagonally shifted complexes.
    pub fn shift_diag(&self, i: i64) -> Self {
        ComplexMorphism {
            source: ops::shift_diag(&self.source, i),
            target: ops::shift_diag(&self.target, i),
            components: self.components.iter().map(|(b, m)| (b.offset(i, i), m.clone())).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &ComplexMorphism) -> Result<Self, ComplexError> {
        let mut components = BTreeMap::new();
        for b in first.source.support() {
            components.insert(b, self.component(b).mul(&first.component(b)).expect("shape"));
        }
        ComplexMorphism::new(first.source.clone(), self.target.clone(), components)
    }

    pub fn source(&self) -> &DoubleComplex {
        &self.source
    }

    pub fn target(&self) -> &DoubleComplex {
        &self.target
    }

    pub fn components(&self) -> &BTreeMap<Bidegree, ExactMatrix> {
        &self.components
    }

    pub fn component(&self, b: Bidegree) -> Cow<'_, ExactMatrix> {
        match self.components.get(&b) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(ExactMatrix::zeros(self.target.dim(b), self.source.dim(b))),
        }
    }

    /// Whether `f∘σ = σ∘f`; false when either side lacks a real structure.
    pub fn commutes_with_sigma(&self) -> bool {
        if !self.source.has_real_structure() || !self.target.has_real_structure() {
            return false;
        }
        self.source.support().all(|b| {
            let lhs = self.component(b.swap()).mul(&self.source.sigma(b).expect("real")).expect("shape");
            let rhs = self.target.sigma(b).expect("real").mul(&self.component(b).conj()).expect("shape");
            lhs == rhs
        })
    }
}
