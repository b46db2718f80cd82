//! Integer polynomials in `T_1..T_n` and the family `P_0..P_{r-1}`.
//!
//! The family is defined top-down by
//! `P_{r-1} = (-1)^{r-1}` and `P_i = (-1)^r Σ_{k=1}^{r-1-i} T_k P_{k+i}`,
//! and the combinations `H_k = Σ_{i=r-1}^{r-1+k} T_{i-(r-1)} P_{i-k}` (with
//! `T_0 = (-1)^{r-1}`) collapse to `1` for `k = 0` and to `0` otherwise.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("rank must be at least 1 (got {0})")]
    InvalidRank(usize),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
}

/// Exponent vector `(d_1, …, d_n)`.
///
/// Ordered so that iteration runs in graded-lexicographic order from the
/// largest monomial down: higher total degree first, then larger exponent of
/// `T_1`, then of `T_2`, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `Σ k·d_k` with `T_k` of weight `k`.
    pub fn weight(&self) -> u32 {
        self.0.iter().enumerate().map(|(k, d)| (k as u32 + 1) * d).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPolynomial {
    pub fn zero(num_vars: usize) -> Self {
        IntPolynomial { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::one(num_vars), c.into());
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, 1)
    }

    /// The variable `T_k`, `1 ≤ k ≤ num_vars`.
    pub fn var(num_vars: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= num_vars, "T_{k} out of range");
        let mut e = vec![0; num_vars];
        e[k - 1] = 1;
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial(e), BigInt::one());
        p
    }

    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(m, c)| m.degree() == 0 && c.is_one())
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Monomial::one(self.num_vars)).cloned().unwrap_or_default()
    }

    /// True iff every term with a nonzero coefficient only involves `T_1..T_k`.
    pub fn uses_only_first(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.0.iter().skip(k).all(|d| *d == 0))
    }

    /// The common weight of all terms, if the polynomial is weighted
    /// homogeneous (`None` for mixed weights; zero is homogeneous of every weight).
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.terms.keys().map(|m| m.weight()).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn is_weighted_homogeneous(&self, weight: u32) -> bool {
        self.terms.keys().all(|m| m.weight() == weight)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        IntPolynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.num_vars, other.num_vars, "polynomials over different variable sets");
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.check_vars(rhs);
        let mut out = IntPolynomial::zero(self.num_vars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        self.scale(&-BigInt::one())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, d)| **d > 0)
                .map(|(k, d)| if *d == 1 { format!("T{}", k + 1) } else { format!("T{}^{}", k + 1, d) })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// `P_0, …, P_{r-1}` in `T_1..T_{r-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFamily {
    rank: usize,
    polys: Vec<IntPolynomial>,
}

fn sign(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

impl PolyFamily {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_vars(&self) -> usize {
        self.rank - 1
    }

    pub fn polys(&self) -> &[IntPolynomial] {
        &self.polys
    }

    pub fn p(&self, i: usize) -> &IntPolynomial {
        &self.polys[i]
    }

    /// For mutation tests: a family with `P_i` replaced.
    pub fn with_replaced(&self, i: usize, poly: IntPolynomial) -> PolyFamily {
        let mut polys = self.polys.clone();
        polys[i] = poly;
        PolyFamily { rank: self.rank, polys }
    }

    /// `T_k` with the convention `T_0 = (-1)^{r-1}`.
    pub fn t(&self, k: usize) -> IntPolynomial {
        if k == 0 {
            IntPolynomial::constant(self.num_vars(), sign(self.rank - 1))
        } else {
            IntPolynomial::var(self.num_vars(), k)
        }
    }
}

pub fn build_family(r: usize) -> Result<PolyFamily, PolyError> {
    if r < 1 {
        return Err(PolyError::InvalidRank(r));
    }
    let n = r - 1;
    let mut polys = vec![IntPolynomial::zero(n); r];
    polys[r - 1] = IntPolynomial::constant(n, sign(r - 1));
    let s = sign(r);
    for i in (0..r - 1).rev() {
        let mut acc = IntPolynomial::zero(n);
        for k in 1..=(r - 1 - i) {
            acc = &acc + &(&IntPolynomial::var(n, k) * &polys[k + i]);
        }
        polys[i] = acc.scale(&s);
    }
    Ok(PolyFamily { rank: r, polys })
}

/// Each `P_i` only involves `T_1..T_{r-1-i}`.
pub fn check_support(f: &PolyFamily) -> bool {
    f.polys.iter().enumerate().all(|(i, p)| p.uses_only_first(f.rank - 1 - i))
}

/// Every term of `P_i` has weight `r-1-i`.
pub fn check_weighted_homogeneity(f: &PolyFamily) -> bool {
    f.polys
        .iter()
        .enumerate()
        .all(|(i, p)| p.is_weighted_homogeneous((f.rank - 1 - i) as u32))
}

/// `H_k = Σ_{i=r-1}^{r-1+k} T_{i-(r-1)} P_{i-k}`.
pub fn eval_h(f: &PolyFamily, k: usize) -> Result<IntPolynomial, PolyError> {
    let r = f.rank;
    if k > r - 1 {
        return Err(PolyError::IndexOutOfRange { index: k, max: r - 1 });
    }
    let mut acc = IntPolynomial::zero(f.num_vars());
    for i in (r - 1)..=(r - 1 + k) {
        acc = &acc + &(&f.t(i - (r - 1)) * &f.polys[i - k]);
    }
    Ok(acc)
}

/// True iff `H_0 = 1` and `H_k = 0` for `1 ≤ k ≤ r-1`.
pub fn check_h_identity(f: &PolyFamily) -> bool {
    (0..f.rank).all(|k| {
        let h = eval_h(f, k).expect("in range");
        if k == 0 {
            h.is_one()
        } else {
            h.is_zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families_render() {
        let f = build_family(3).unwrap();
        let s: Vec<String> = f.polys().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["T1^2 - T2", "-T1", "1"]);
        let f = build_family(4).unwrap();
        let s: Vec<String> = f.polys().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["-T1^3 - 2*T1*T2 - T3", "-T1^2 - T2", "-T1", "-1"]);
        assert_eq!(build_family(1).unwrap().polys()[0].to_string(), "1");
        assert_eq!(build_family(0), Err(PolyError::InvalidRank(0)));
    }

    #[test]
    fn lemma_checks_and_mutations() {
        let f = build_family(3).unwrap();
        assert!(check_support(&f));
        assert!(check_weighted_homogeneity(&f));
        let bad = f.with_replaced(1, &f.p(1).clone() + &IntPolynomial::var(2, 2));
        assert!(!check_support(&bad));
        let bad = f.with_replaced(2, &f.p(2).clone() + &IntPolynomial::var(2, 1));
        assert!(!check_weighted_homogeneity(&bad));
        assert!(check_support(&build_family(1).unwrap()));
    }

    #[test]
    fn h_values() {
        let f = build_family(8).unwrap();
        assert!(eval_h(&f, 0).unwrap().is_one());
        assert!(eval_h(&f, 5).unwrap().is_zero());
        assert!(eval_h(&f, 8).is_err());
        assert!(eval_h(&build_family(3).unwrap(), 1).unwrap().is_zero());
    }

    #[test]
    fn graded_lex_order() {
        let p = IntPolynomial::from_terms(
            2,
            [(vec![0, 1], BigInt::from(1)), (vec![2, 0], BigInt::from(1)), (vec![1, 1], BigInt::from(-3))],
        );
        assert_eq!(p.to_string(), "T1^2 - 3*T1*T2 + T2");
    }
}
