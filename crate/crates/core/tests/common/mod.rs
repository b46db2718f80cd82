//! Seeded random double complexes with known zigzag content.
#![allow(dead_code)]

pub mod golden;

use std::collections::BTreeMap;

use ddx_core::complex::builtin::{builtin_square, builtin_zigzag};
use ddx_core::complex::ops::{change_basis, conjugate_pair, direct_sum};
use ddx_core::complex::{Bidegree, DoubleComplex};
use ddx_core::linalg::{ExactMatrix, GaussRat, SparseVec};
use ddx_core::zigzag::{Arrow, ZigzagShape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random zigzag of length `1..=max_len` starting inside `[0, span)²`.
pub fn random_shape(rng: &mut ChaCha8Rng, max_len: usize, span: i64) -> ZigzagShape {
    let len = rng.gen_range(1..=max_len);
    let mut at = Bidegree::new(rng.gen_range(0..span) + len as i64, rng.gen_range(0..span));
    let mut spots = vec![at];
    let mut arrows = Vec::new();
    let mut next = if rng.gen_bool(0.5) { Arrow::D2 } else { Arrow::D1 };
    for _ in 1..len {
        at = match next {
            Arrow::D2 => at.offset(0, 1),
            Arrow::D1 => at.offset(-1, 0),
        };
        spots.push(at);
        arrows.push(next);
        next = match next {
            Arrow::D2 => Arrow::D1,
            Arrow::D1 => Arrow::D2,
        };
    }
    ZigzagShape::new(spots, arrows).expect("alternating walk")
}

/// Atoms of a random complex and their expected multiplicities.
#[derive(Clone, Debug, Default)]
pub struct Atoms {
    pub squares: BTreeMap<Bidegree, usize>,
    pub zigzags: BTreeMap<ZigzagShape, usize>,
    pub parts: Vec<DoubleComplex>,
}

impl Atoms {
    fn square(&mut self, at: Bidegree, real: bool) {
        *self.squares.entry(at).or_default() += 1;
        let sq = builtin_square(at.p, at.q);
        if real && at.p != at.q {
            *self.squares.entry(at.swap()).or_default() += 1;
            self.parts.push(conjugate_pair(&sq));
        } else {
            self.parts.push(sq);
        }
    }

    fn zigzag(&mut self, shape: ZigzagShape, real: bool) {
        *self.zigzags.entry(shape.clone()).or_default() += 1;
        let z = builtin_zigzag(&shape);
        if real && !shape.is_self_conjugate() {
            *self.zigzags.entry(shape.conjugate()).or_default() += 1;
            self.parts.push(conjugate_pair(&z));
        } else {
            self.parts.push(z);
        }
    }

    pub fn sum(&self) -> DoubleComplex {
        let parts: Vec<DoubleComplex> = self.parts.to_vec();
        direct_sum(&parts.iter().collect::<Vec<_>>()).expect("uniform real structure")
    }
}

/// Random atoms inside a small box; with `real` every atom is either
/// self-conjugate or paired with its conjugate, so the sum carries `σ`.
pub fn random_atoms(rng: &mut ChaCha8Rng, count: usize, real: bool) -> Atoms {
    let mut atoms = Atoms::default();
    for _ in 0..count {
        let roll = rng.gen_range(0..10);
        if roll < 3 {
            let at = Bidegree::new(rng.gen_range(0..3), rng.gen_range(0..3));
            atoms.square(at, real);
        } else {
            let shape = random_shape(rng, 4, 3);
            atoms.zigzag(shape, real);
        }
    }
    if !real {
        atoms.parts = atoms.parts.iter().map(|p| p.without_real_structure()).collect();
    }
    atoms
}

fn small(rng: &mut ChaCha8Rng, complex: bool) -> GaussRat {
    let re = GaussRat::from_int(rng.gen_range(-2..=2));
    if complex && rng.gen_bool(0.3) {
        &re + &(&GaussRat::I * &GaussRat::from_int(rng.gen_range(-1..=1)))
    } else {
        re
    }
}

/// Random invertible matrix with small entries.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize, complex: bool) -> ExactMatrix {
    loop {
        let cols = (0..n)
            .map(|_| SparseVec::from_pairs((0..n).map(|i| (i, small(rng, complex)))))
            .collect();
        let m = ExactMatrix::from_columns(n, cols);
        if m.rank() == n {
            return m;
        }
    }
}

/// `k` in random bases at every bidegree.
pub fn scramble(rng: &mut ChaCha8Rng, k: &DoubleComplex) -> DoubleComplex {
    let maps = k.spaces().iter().map(|(b, d)| (*b, random_invertible(rng, *d, true))).collect();
    change_basis(k, &maps).expect("invertible")
}

/// A scrambled random complex together with the atoms it was built from.
pub fn random_complex(seed: u64, count: usize, real: bool) -> (DoubleComplex, Atoms) {
    let mut r = rng(seed);
    let atoms = random_atoms(&mut r, count, real);
    let k = scramble(&mut r, &atoms.sum());
    (k, atoms)
}
