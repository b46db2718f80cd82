//! Atomic complexes: dots, squares and zigzags with one generator per spot.

use std::collections::BTreeMap;

use super::{Bidegree, DoubleComplex};
use crate::linalg::{ExactMatrix, GaussRat, SparseVec};
use crate::zigzag::{Arrow, ZigzagShape};

/// One-dimensional space at `at`; real (`σ = id`) when `p = q`.
pub fn dot(at: Bidegree) -> DoubleComplex {
    builtin_zigzag(&ZigzagShape::dot(at))
}

fn unit_map(rows: usize, pairs: &[(usize, usize, i64)], cols: usize) -> ExactMatrix {
    let mut columns = vec![SparseVec::new(); cols];
    for &(i, j, c) in pairs {
        columns[j] = SparseVec::from_pairs([(i, GaussRat::from_int(c))]);
    }
    ExactMatrix::from_columns(rows, columns)
}

/// Generators `a ∈ K^{p,q}`, `d1a`, `d2a`, `d1d2a`, with `d2(d1a) = −d1d2a`.
/// Real when `p = q`: `σa = a`, `σ(d1a) = d2a`, `σ(d1d2a) = −d1d2a`.
pub fn builtin_square(p: i64, q: i64) -> DoubleComplex {
    let a = Bidegree::new(p, q);
    let (b, c, e) = (a.d1_target(), a.d2_target(), a.offset(1, 1));
    let spaces = [(a, 1), (b, 1), (c, 1), (e, 1)].into_iter().collect();
    let one = |s| unit_map(1, &[(0, 0, s)], 1);
    let d1 = [(a, one(1)), (c, one(1))].into_iter().collect();
    let d2 = [(a, one(1)), (b, one(-1))].into_iter().collect();
    let sigma = (p == q).then(|| [(a, one(1)), (b, one(1)), (c, one(1)), (e, one(-1))].into_iter().collect());
    DoubleComplex::validated(spaces, d1, d2, sigma).expect("square is a valid complex")
}

/// The minimal complex realizing `shape`: generator `g_i` at spot `i`,
/// `d2 g_i = g_{i+1}` for a `d2` arrow and `d1 g_{i+1} = g_i` for a `d1`
/// arrow. Self-conjugate shapes get `σ g_i = g_{L−1−i}`.
pub fn builtin_zigzag(shape: &ZigzagShape) -> DoubleComplex {
    let spots = shape.spots();
    let spaces: BTreeMap<Bidegree, usize> = spots.iter().map(|b| (*b, 1)).collect();
    let one = || unit_map(1, &[(0, 0, 1)], 1);
    let mut d1 = BTreeMap::new();
    let mut d2 = BTreeMap::new();
    for (i, arrow) in shape.arrows().iter().enumerate() {
        match arrow {
            Arrow::D2 => d2.insert(spots[i], one()),
            Arrow::D1 => d1.insert(spots[i + 1], one()),
        };
    }
    let sigma = shape.is_self_conjugate().then(|| spots.iter().map(|b| (*b, one())).collect());
    DoubleComplex::validated(spaces, d1, d2, sigma).expect("zigzag is a valid complex")
}
