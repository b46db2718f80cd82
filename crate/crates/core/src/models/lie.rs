//! Double complexes of invariant forms from nilpotent Lie-algebra data.
//!
//! The generators are `φ^1 … φ^n` and their conjugates `φ̄^1 … φ̄^n`. A model
//! prescribes `dφ^k = Σ c φ^i∧φ^j + Σ c φ^i∧φ̄^j`; then `dφ̄^k = conj(dφ^k)` and
//! `d` extends to the exterior algebra by the Leibniz rule. Indices in the
//! JSON format are 1-based.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{Bidegree, DoubleComplex};
use crate::error::ModelError;
use crate::linalg::{ExactMatrix, GaussRat, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub i: usize,
    pub j: usize,
    pub c: GaussRat,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDifferential {
    /// `c φ^i∧φ^j` with `i < j`.
    #[serde(rename = "20", default, skip_serializing_if = "Vec::is_empty")]
    pub holomorphic: Vec<Term>,
    /// `c φ^i∧φ̄^j`.
    #[serde(rename = "11", default, skip_serializing_if = "Vec::is_empty")]
    pub mixed: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieModel {
    #[serde(rename = "dim")]
    pub complex_dim: usize,
    /// Keyed by the 1-based generator index; omitted generators are closed.
    #[serde(rename = "d", default)]
    pub structure: BTreeMap<usize, GeneratorDifferential>,
}

/// Sums of monomials in the exterior algebra; a monomial is a bitmask of
/// generator ids (`φ^k ↦ k−1`, `φ̄^k ↦ n+k−1`) read in increasing order.
type Form = BTreeMap<u64, GaussRat>;

fn add_to(form: &mut Form, mono: u64, c: GaussRat) {
    let e = form.entry(mono).or_default();
    *e += &c;
    if e.is_zero() {
        form.remove(&mono);
    }
}

/// `a ∧ b` for monomials, with the sign of sorting; `None` on repeats.
fn wedge(a: u64, b: u64) -> Option<(u64, bool)> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        swaps += (a >> y).count_ones();
        rest &= rest - 1;
    }
    Some((a | b, swaps % 2 == 1))
}

impl LieModel {
    pub fn closed(n: usize) -> Self {
        LieModel { complex_dim: n, structure: BTreeMap::new() }
    }

    fn check(&self) -> Result<(), ModelError> {
        let n = self.complex_dim;
        if n == 0 || n > 16 {
            return Err(ModelError::Malformed(format!("dimension {n} outside 1..=16")));
        }
        for (&k, g) in &self.structure {
            if k == 0 || k > n {
                return Err(ModelError::Malformed(format!("generator index {k} outside 1..={n}")));
            }
            for t in g.holomorphic.iter().chain(&g.mixed) {
                if t.i == 0 || t.i > n || t.j == 0 || t.j > n {
                    return Err(ModelError::Malformed(format!("term index outside 1..={n} in d phi^{k}")));
                }
            }
            if g.holomorphic.iter().any(|t| t.i >= t.j) {
                return Err(ModelError::Malformed(format!("(2,0) term of d phi^{k} needs i < j")));
            }
        }
        Ok(())
    }

    /// `d` of each generator id, as a 2-form.
    fn generator_differentials(&self) -> Vec<Form> {
        let n = self.complex_dim;
        let mut d = vec![Form::new(); 2 * n];
        for (&k, g) in &self.structure {
            let (hol, anti) = (k - 1, n + k - 1);
            for t in &g.holomorphic {
                let (a, b) = (t.i - 1, t.j - 1);
                add_to(&mut d[hol], (1 << a) | (1 << b), t.c.clone());
                add_to(&mut d[anti], (1 << (n + a)) | (1 << (n + b)), t.c.conj());
            }
            for t in &g.mixed {
                let (a, b) = (t.i - 1, n + t.j - 1);
                add_to(&mut d[hol], (1 << a) | (1 << b), t.c.clone());
                // conj(φ^i∧φ̄^j) = φ̄^i∧φ^j = −φ^j∧φ̄^i
                add_to(&mut d[anti], (1 << (t.j - 1)) | (1 << (n + t.i - 1)), -t.c.conj());
            }
        }
        d
    }
}

fn apply_d(mono: u64, dgen: &[Form]) -> Form {
    let mut out = Form::new();
    let mut rest = mono;
    let mut position = 0;
    while rest != 0 {
        let g = rest.trailing_zeros();
        rest &= rest - 1;
        let below = mono & ((1u64 << g) - 1);
        let above = mono & !((1u64 << (g + 1)) - 1);
        for (&two, c) in &dgen[g as usize] {
            let Some((m1, s1)) = wedge(below, two) else { continue };
            let Some((m2, s2)) = wedge(m1, above) else { continue };
            let negative = s1 ^ s2 ^ (position % 2 == 1);
            add_to(&mut out, m2, if negative { -c.clone() } else { c.clone() });
        }
        position += 1;
    }
    out
}

fn bidegree_of(mono: u64, n: usize) -> Bidegree {
    let low = mono & ((1u64 << n) - 1);
    Bidegree::new(low.count_ones() as i64, (mono >> n).count_ones() as i64)
}

fn subsets(n: usize, size: usize) -> Vec<u64> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for x in start..n {
            current.push(x);
            rec(x + 1, n, size, current, out);
            current.pop();
        }
    }
    rec(0, n, size, &mut current, &mut out);
    out.into_iter().map(|s| s.iter().fold(0u64, |m, x| m | (1 << x))).collect()
}

/// Builds `Λ^{p,q}` with basis `φ^I∧φ̄^J`, `I` then `J` in lexicographic
/// order, the induced `d1 = ∂`, `d2 = ∂̄`, and the real structure
/// `σ(φ^I∧φ̄^J) = (−1)^{|I||J|} φ^J∧φ̄^I`.
pub fn from_lie_model(m: &LieModel) -> Result<DoubleComplex, ModelError> {
    m.check()?;
    let n = m.complex_dim;
    let dgen = m.generator_differentials();
    for (g, form) in dgen.iter().enumerate().take(n) {
        let mut dd = Form::new();
        for (&mono, c) in form {
            for (m2, e) in apply_d(mono, &dgen) {
                add_to(&mut dd, m2, c * &e);
            }
        }
        if !dd.is_empty() {
            return Err(ModelError::NotIntegrable { generator: g + 1 });
        }
    }
    let mut basis: BTreeMap<Bidegree, Vec<u64>> = BTreeMap::new();
    let mut index: BTreeMap<u64, usize> = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let mut monos = Vec::new();
            for i in subsets(n, p) {
                for j in subsets(n, q) {
                    let mono = i | (j << n);
                    index.insert(mono, monos.len());
                    monos.push(mono);
                }
            }
            basis.insert(Bidegree::new(p as i64, q as i64), monos);
        }
    }
    let spaces: BTreeMap<Bidegree, usize> = basis.iter().map(|(b, v)| (*b, v.len())).collect();
    let mut d1 = BTreeMap::new();
    let mut d2 = BTreeMap::new();
    let mut sigma = BTreeMap::new();
    for (&b, monos) in &basis {
        let mut c1 = Vec::with_capacity(monos.len());
        let mut c2 = Vec::with_capacity(monos.len());
        let mut cs = Vec::with_capacity(monos.len());
        for &mono in monos {
            let mut v1 = Vec::new();
            let mut v2 = Vec::new();
            for (m2, c) in apply_d(mono, &dgen) {
                let target = bidegree_of(m2, n);
                if target == b.d1_target() {
                    v1.push((index[&m2], c));
                } else if target == b.d2_target() {
                    v2.push((index[&m2], c));
                } else {
                    return Err(ModelError::Malformed(format!("d leaves bidegree {b} toward {target}")));
                }
            }
            c1.push(SparseVec::from_pairs(v1));
            c2.push(SparseVec::from_pairs(v2));
            let (i, j) = (mono & ((1u64 << n) - 1), mono >> n);
            let image = j | (i << n);
            let sign = (i.count_ones() * j.count_ones()) % 2 == 1;
            let one = if sign { -GaussRat::ONE } else { GaussRat::ONE };
            cs.push(SparseVec::from_pairs([(index[&image], one)]));
        }
        if let Some(&rows) = spaces.get(&b.d1_target()) {
            d1.insert(b, ExactMatrix::from_columns(rows, c1));
        }
        if let Some(&rows) = spaces.get(&b.d2_target()) {
            d2.insert(b, ExactMatrix::from_columns(rows, c2));
        }
        sigma.insert(b, ExactMatrix::from_columns(spaces[&b.swap()], cs));
    }
    Ok(DoubleComplex::validated(spaces, d1, d2, Some(sigma))?)
}

pub fn lie_model_from_json(text: &str) -> Result<LieModel, ModelError> {
    serde_json::from_str(text).map_err(|e| ModelError::Malformed(e.to_string()))
}

pub fn lie_model_to_json(m: &LieModel) -> String {
    serde_json::to_string_pretty(m).expect("serializable")
}
