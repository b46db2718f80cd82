//! Splitting a double complex into squares and zigzags.
//!
//! Squares come first: at each bidegree a set of standard basis vectors on
//! which `d1d2` is injective with the same image as all of `K^{p,q}` generates
//! the squares, and an explicit complementary subcomplex `R` (on which
//! `d1d2 = 0`) is cut out by linear functionals. On `R` every total degree
//! `k` gives a representation of a linear quiver
//!
//! ```text
//!   Im(c+1) <-d1- Src(c) -d2-> Im(c-1) <-d1- Src(c-2) -d2-> ...
//! ```
//!
//! where `Src` complements `ker d1 ∩ ker d2` in degree `k` and `Im = im d1 + im d2`
//! in degree `k+1`. Its interval summands are the zigzags of length ≥ 2; a
//! complement of `Im` in `ker d1 ∩ ker d2` gives the dots.

use std::collections::BTreeMap;

use super::shape::ZigzagShape;
use crate::complex::builtin::{builtin_square, builtin_zigzag};
use crate::complex::ops::direct_sum;
use crate::complex::{Bidegree, DoubleComplex};
use crate::linalg::{Echelon, ExactMatrix, GaussRat, Insert, SparseVec, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PieceKind {
    /// Square with its generator `a` at the given bidegree.
    Square(Bidegree),
    Zigzag(ZigzagShape),
}

/// One summand together with the vectors of `K` spanning it, listed in the
/// basis order of the corresponding builtin complex.
#[derive(Clone, Debug)]
pub struct Piece {
    pub kind: PieceKind,
    pub witnesses: Vec<(Bidegree, SparseVec)>,
}

impl Piece {
    /// The standalone complex this summand is isomorphic to.
    pub fn complex(&self) -> DoubleComplex {
        match &self.kind {
            PieceKind::Square(b) => builtin_square(b.p, b.q),
            PieceKind::Zigzag(shape) => builtin_zigzag(shape),
        }
        .without_real_structure()
    }
}

#[derive(Clone, Debug)]
pub struct ZigzagDecomposition {
    pub square_count: BTreeMap<Bidegree, usize>,
    /// Multiplicity of every zigzag shape, dots included.
    pub zigzag_mults: BTreeMap<ZigzagShape, usize>,
    /// Squares first, then dots, then longer zigzags.
    pub pieces: Vec<Piece>,
}

impl ZigzagDecomposition {
    pub fn total_dim(&self) -> usize {
        self.square_count.values().sum::<usize>() * 4
            + self.zigzag_mults.iter().map(|(s, m)| s.len() * m).sum::<usize>()
    }

    /// Whether every zigzag is a dot.
    pub fn only_dots(&self) -> bool {
        self.zigzag_mults.keys().all(|s| s.is_dot())
    }

    pub fn square_total(&self) -> usize {
        self.square_count.values().sum()
    }

    /// The direct sum of the pieces, in piece order (no real structure).
    pub fn reconstruct(&self) -> DoubleComplex {
        let parts: Vec<DoubleComplex> = self.pieces.iter().map(Piece::complex).collect();
        direct_sum(&parts.iter().collect::<Vec<_>>()).expect("no real structures")
    }

    /// Checks that the witnesses form a basis of `K` at every bidegree and
    /// that `K`'s differentials in that basis are those of [`Self::reconstruct`].
    pub fn verify(&self, k: &DoubleComplex) -> bool {
        let sum = self.reconstruct();
        if sum.spaces() != k.spaces() {
            return false;
        }
        let mut columns: BTreeMap<Bidegree, Vec<SparseVec>> = BTreeMap::new();
        for piece in &self.pieces {
            for (b, v) in &piece.witnesses {
                columns.entry(*b).or_default().push(v.clone());
            }
        }
        let w: BTreeMap<Bidegree, ExactMatrix> =
            columns.into_iter().map(|(b, cols)| (b, ExactMatrix::from_columns(k.dim(b), cols))).collect();
        let wm = |b: Bidegree| w.get(&b).cloned().unwrap_or_else(|| ExactMatrix::zeros(k.dim(b), sum.dim(b)));
        k.support().all(|b| {
            let here = wm(b);
            if here.cols() != k.dim(b) || here.rank() != k.dim(b) {
                return false;
            }
            let d1_ok = k.d1(b).mul(&here).expect("shape") == wm(b.d1_target()).mul(&sum.d1(b)).expect("shape");
            let d2_ok = k.d2(b).mul(&here).expect("shape") == wm(b.d2_target()).mul(&sum.d2(b)).expect("shape");
            d1_ok && d2_ok
        })
    }
}

/// A subcomplex given by bases at each bidegree, with its own coordinates.
struct Sub {
    bases: BTreeMap<Bidegree, Vec<SparseVec>>,
    complex: DoubleComplex,
}

impl Sub {
    fn new(k: &DoubleComplex, bases: BTreeMap<Bidegree, Vec<SparseVec>>) -> Self {
        let mut coords: BTreeMap<Bidegree, Echelon> = BTreeMap::new();
        for (b, basis) in &bases {
            let mut e = Echelon::with_tracking(k.dim(*b));
            for v in basis {
                e.insert(v);
            }
            coords.insert(*b, e);
        }
        let spaces: BTreeMap<Bidegree, usize> = bases.iter().map(|(b, v)| (*b, v.len())).collect();
        let induced = |apply: &dyn Fn(Bidegree, &SparseVec) -> SparseVec, target: fn(Bidegree) -> Bidegree| {
            let mut out = BTreeMap::new();
            for (b, basis) in &bases {
                let t = target(*b);
                let Some(e) = coords.get(&t) else { continue };
                let cols = basis.iter().map(|v| e.express(&apply(*b, v)).expect("subcomplex")).collect();
                out.insert(*b, ExactMatrix::from_columns(spaces[&t], cols));
            }
            out
        };
        let d1 = induced(&|b, v| k.apply_d1(b, v), Bidegree::d1_target);
        let d2 = induced(&|b, v| k.apply_d2(b, v), Bidegree::d2_target);
        let complex = DoubleComplex::new(spaces, d1, d2, None).expect("shapes");
        Sub { bases, complex }
    }

    /// Back to the coordinates of the ambient complex.
    fn lift(&self, b: Bidegree, v: &SparseVec) -> SparseVec {
        crate::linalg::sparse::combine(&self.bases[&b], v)
    }
}

/// Linear map giving, for `v ∈ K^{b+(1,1)}`, the coordinates of its
/// projection onto `span d1d2(C^b)` in the basis `d1d2(c)`.
fn square_functional(k: &DoubleComplex, images: &[SparseVec], target: Bidegree) -> ExactMatrix {
    let n = k.dim(target);
    let mut e = Echelon::with_tracking(n);
    for v in images {
        e.insert(v);
    }
    for i in 0..n {
        e.insert(&SparseVec::unit(i));
    }
    let m = images.len();
    let rows: Vec<SparseVec> = (0..n)
        .map(|i| {
            let c = e.express(&SparseVec::unit(i)).expect("full span");
            c.remap(|g| (g < m).then_some(g))
        })
        .collect();
    // `rows[i]` is column `i` of the functional
    ExactMatrix::from_columns(m, rows)
}

fn split_squares(k: &DoubleComplex) -> (Vec<Piece>, Sub) {
    let mut chosen: BTreeMap<Bidegree, Vec<SparseVec>> = BTreeMap::new();
    let mut functionals: BTreeMap<Bidegree, ExactMatrix> = BTreeMap::new();
    let mut pieces = Vec::new();
    for b in k.support() {
        let dd = k.d1d2(b);
        if dd.is_zero() {
            continue;
        }
        let mut e = Echelon::new(dd.rows());
        let mut gens = Vec::new();
        let mut images = Vec::new();
        for i in 0..k.dim(b) {
            if let Insert::Independent(_) = e.insert(dd.column(i)) {
                gens.push(SparseVec::unit(i));
                images.push(dd.column(i).clone());
            }
        }
        functionals.insert(b, square_functional(k, &images, b.offset(1, 1)));
        for a in &gens {
            let x = k.apply_d1(b, a);
            let y = k.apply_d2(b, a);
            let z = k.apply_d1(b.d2_target(), &y);
            pieces.push(Piece {
                kind: PieceKind::Square(b),
                witnesses: vec![(b, a.clone()), (b.d1_target(), x), (b.d2_target(), y), (b.offset(1, 1), z)],
            });
        }
        chosen.insert(b, gens);
    }
    let mut bases = BTreeMap::new();
    for b in k.support() {
        let n = k.dim(b);
        let mut blocks: Vec<ExactMatrix> = Vec::new();
        if let Some(l) = functionals.get(&b) {
            blocks.push(l.mul(&k.d1d2(b)).expect("shape"));
        }
        if let Some(l) = functionals.get(&b.offset(-1, 0)) {
            blocks.push(l.mul(&k.d2(b)).expect("shape"));
        }
        if let Some(l) = functionals.get(&b.offset(0, -1)) {
            blocks.push(l.mul(&k.d1(b)).expect("shape"));
        }
        if let Some(l) = functionals.get(&b.offset(-1, -1)) {
            blocks.push(l.clone());
        }
        let kernel = blocks
            .iter()
            .fold(ExactMatrix::zeros(0, n), |acc, m| acc.vstack(m).expect("same source"))
            .kernel();
        if kernel.dim() > 0 {
            bases.insert(b, kernel.basis().to_vec());
        }
    }
    (pieces, Sub::new(k, bases))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum VertexKind {
    Src,
    Im,
}

struct Vertex {
    kind: VertexKind,
    at: Bidegree,
    basis: Vec<SparseVec>,
}

#[derive(Clone, Debug)]
struct Chain {
    /// Chains may absorb multiples of chains with smaller or equal key.
    key: (u8, i64),
    start: usize,
    vecs: Vec<SparseVec>,
}

impl Chain {
    fn last(&self) -> &SparseVec {
        self.vecs.last().expect("nonempty")
    }

    /// `self + Σ c·other` on the common support, taken from a snapshot.
    fn absorbed(&self, terms: &[(GaussRat, &Chain)]) -> Chain {
        let mut vecs = self.vecs.clone();
        for (c, other) in terms {
            for (t, v) in vecs.iter_mut().enumerate() {
                let at = self.start + t;
                if at >= other.start {
                    *v = v.add_scaled(c, &other.vecs[at - other.start]);
                }
            }
        }
        Chain { key: self.key, start: self.start, vecs }
    }
}

fn birth_in(vertex: usize) -> (u8, i64) {
    (1, vertex as i64)
}

fn birth_out(vertex: usize) -> (u8, i64) {
    (0, -(vertex as i64))
}

/// Interval decomposition of one quiver; returns `(start, vectors)` per interval.
fn sweep(r: &DoubleComplex, vertices: &[Vertex]) -> Vec<(usize, Vec<SparseVec>)> {
    let mut done = Vec::new();
    let mut alive: Vec<Chain> = vertices[0]
        .basis
        .iter()
        .map(|v| Chain { key: birth_out(0), start: 0, vecs: vec![v.clone()] })
        .collect();
    for i in 0..vertices.len() - 1 {
        let (here, next) = (&vertices[i], &vertices[i + 1]);
        let dim_next = r.dim(next.at);
        alive.sort_by_key(|c| c.key);
        let mut survivors = Vec::new();
        if here.kind == VertexKind::Src {
            // forward along d2
            let mut e = Echelon::with_tracking(dim_next);
            for c in &alive {
                let img = r.apply_d2(here.at, c.last());
                match e.insert(&img) {
                    Insert::Independent(_) => {
                        let mut c = c.clone();
                        c.vecs.push(img);
                        survivors.push(c);
                    }
                    Insert::Dependent(rel) => {
                        let own = e.inserted() - 1;
                        let inv = rel.get(own).inv();
                        let terms: Vec<(GaussRat, &Chain)> = rel
                            .iter()
                            .filter(|(g, _)| *g != own)
                            .map(|(g, x)| (x * &inv, &alive[*g]))
                            .collect();
                        let killed = alive[own].absorbed(&terms);
                        done.push((killed.start, killed.vecs));
                    }
                }
            }
            for v in &next.basis {
                if let Insert::Independent(_) = e.insert(v) {
                    survivors.push(Chain { key: birth_in(i + 1), start: i + 1, vecs: vec![v.clone()] });
                }
            }
        } else {
            // backward along d1 from the next (source) vertex
            let dim_here = r.dim(here.at);
            let mut chain_coords = Echelon::with_tracking(dim_here);
            for c in &alive {
                chain_coords.insert(c.last());
            }
            let mut images = Echelon::with_tracking(dim_here);
            let mut kernel = Vec::new();
            for v in &next.basis {
                if let Insert::Dependent(rel) = images.insert(&r.apply_d1(next.at, v)) {
                    kernel.push(crate::linalg::sparse::combine(&next.basis, &rel));
                }
            }
            // highest key first, so that echelon pivots land on the highest key
            let n = alive.len();
            let position = |j: usize| n - 1 - j;
            let mut e = Echelon::new(n);
            for v in &next.basis {
                let img = r.apply_d1(next.at, v);
                let coords = chain_coords.express(&img).expect("image lies in Im");
                e.insert(&coords.remap(|j| Some(position(j))));
            }
            let mut pivots = vec![false; n];
            for row in e.rows() {
                let (pos, _) = row.leading().expect("nonzero");
                let j = n - 1 - pos;
                pivots[j] = true;
                let terms: Vec<(GaussRat, &Chain)> = row
                    .iter()
                    .filter(|(p, _)| *p != *pos)
                    .map(|(p, x)| (x.clone(), &alive[n - 1 - p]))
                    .collect();
                let mut c = alive[j].absorbed(&terms);
                let comb = images.express(c.last()).expect("in the image");
                c.vecs.push(crate::linalg::sparse::combine(&next.basis, &comb));
                survivors.push(c);
            }
            for (j, c) in alive.iter().enumerate() {
                if !pivots[j] {
                    done.push((c.start, c.vecs.clone()));
                }
            }
            for v in kernel {
                survivors.push(Chain { key: birth_out(i + 1), start: i + 1, vecs: vec![v] });
            }
        }
        alive = survivors;
    }
    for c in alive {
        done.push((c.start, c.vecs));
    }
    done.sort_by_key(|a| (a.0, a.1.len()));
    done
}

fn split_zigzags(sub: &Sub) -> Vec<Piece> {
    let r = &sub.complex;
    let mut src: BTreeMap<Bidegree, Vec<SparseVec>> = BTreeMap::new();
    let mut im: BTreeMap<Bidegree, Vec<SparseVec>> = BTreeMap::new();
    let mut dots = Vec::new();
    for b in r.support() {
        let z = r.d1(b).vstack(&r.d2(b)).expect("same source").kernel();
        let into = r.d1(b.offset(-1, 0)).hstack(&r.d2(b.offset(0, -1))).expect("same target");
        let image = Subspace::column_span(&into);
        src.insert(b, z.coordinate_complement());
        for v in image.complement_in(&z) {
            dots.push(Piece {
                kind: PieceKind::Zigzag(ZigzagShape::dot(b)),
                witnesses: vec![(b, sub.lift(b, &v))],
            });
        }
        im.insert(b, image.basis().to_vec());
    }
    let mut zigzags = Vec::new();
    let Some(bounds) = r.bounds() else { return dots };
    for k in bounds.kmin()..=bounds.kmax() {
        let (hi, lo) = (bounds.pmax - bounds.qmin + 1, bounds.pmin - bounds.qmax - 1);
        let mut vertices = Vec::new();
        let mut c = hi;
        while c >= lo {
            let vertex = if (c - k).rem_euclid(2) == 0 {
                let at = Bidegree::new((k + c) / 2, (k - c) / 2);
                Vertex { kind: VertexKind::Src, at, basis: src.get(&at).cloned().unwrap_or_default() }
            } else {
                let at = Bidegree::new((k + 1 + c) / 2, (k + 1 - c) / 2);
                Vertex { kind: VertexKind::Im, at, basis: im.get(&at).cloned().unwrap_or_default() }
            };
            vertices.push(vertex);
            c -= 1;
        }
        for (start, vecs) in sweep(r, &vertices) {
            let spots: Vec<Bidegree> = (start..start + vecs.len()).map(|i| vertices[i].at).collect();
            let shape = ZigzagShape::from_spots(spots.clone()).expect("intervals are zigzags");
            let witnesses = spots.iter().zip(&vecs).map(|(b, v)| (*b, sub.lift(*b, v))).collect();
            zigzags.push(Piece { kind: PieceKind::Zigzag(shape), witnesses });
        }
    }
    dots.extend(zigzags);
    dots
}

pub fn decompose(k: &DoubleComplex) -> ZigzagDecomposition {
    let (mut pieces, rest) = split_squares(k);
    pieces.extend(split_zigzags(&rest));
    let mut square_count = BTreeMap::new();
    let mut zigzag_mults = BTreeMap::new();
    for p in &pieces {
        match &p.kind {
            PieceKind::Square(b) => *square_count.entry(*b).or_insert(0) += 1,
            PieceKind::Zigzag(s) => *zigzag_mults.entry(s.clone()).or_insert(0) += 1,
        }
    }
    ZigzagDecomposition { square_count, zigzag_mults, pieces }
}
