//! Constructors producing new complexes from old ones.

use std::collections::BTreeMap;

use super::{Bidegree, ComplexMorphism, DoubleComplex};
use crate::error::ComplexError;
use crate::linalg::{Echelon, ExactMatrix, GaussRat, Insert, SparseVec};

/// Blockwise direct sum; the basis of `⊕K_i` at each bidegree is the
/// concatenation of the summands' bases in order.
pub fn direct_sum(ks: &[&DoubleComplex]) -> Result<DoubleComplex, ComplexError> {
    let with_sigma = ks.iter().filter(|k| k.has_real_structure()).count();
    if with_sigma != 0 && with_sigma != ks.len() {
        return Err(ComplexError::MixedRealStructure);
    }
    let mut spaces: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for k in ks {
        for (b, d) in k.spaces() {
            *spaces.entry(*b).or_default() += d;
        }
    }
    let offsets = |b: Bidegree| -> Vec<usize> {
        let mut acc = 0;
        ks.iter()
            .map(|k| {
                let o = acc;
                acc += k.dim(b);
                o
            })
            .collect()
    };
    let assemble = |get: &dyn Fn(&DoubleComplex, Bidegree) -> Option<ExactMatrix>,
                    target: fn(Bidegree) -> Bidegree|
     -> BTreeMap<Bidegree, ExactMatrix> {
        let mut out = BTreeMap::new();
        for &b in spaces.keys() {
            let t = target(b);
            let rows = spaces.get(&t).copied().unwrap_or(0);
            if rows == 0 {
                continue;
            }
            let src_off = offsets(b);
            let tgt_off = offsets(t);
            let mut columns = vec![SparseVec::new(); spaces[&b]];
            for (idx, k) in ks.iter().enumerate() {
                if let Some(m) = get(k, b) {
                    for (j, col) in m.columns().iter().enumerate() {
                        columns[src_off[idx] + j] = col.shifted(tgt_off[idx]);
                    }
                }
            }
            out.insert(b, ExactMatrix::from_columns(rows, columns));
        }
        out
    };
    let d1 = assemble(&|k, b| k.d1_blocks().get(&b).cloned(), Bidegree::d1_target);
    let d2 = assemble(&|k, b| k.d2_blocks().get(&b).cloned(), Bidegree::d2_target);
    let sigma = if with_sigma > 0 {
        Some(assemble(&|k, b| k.sigma(b).map(|s| s.into_owned()), Bidegree::swap))
    } else {
        None
    };
    DoubleComplex::new(spaces, d1, d2, sigma)
}

/// Moves `K^{p,q}` to `(p+i, q+i)`; maps and real structure are carried over.
pub fn shift_diag(k: &DoubleComplex, i: i64) -> DoubleComplex {
    let mv = |b: &Bidegree| b.offset(i, i);
    let spaces = k.spaces().iter().map(|(b, d)| (mv(b), *d)).collect();
    let d1 = k.d1_blocks().iter().map(|(b, m)| (mv(b), m.clone())).collect();
    let d2 = k.d2_blocks().iter().map(|(b, m)| (mv(b), m.clone())).collect();
    let sigma = k.sigma_blocks().map(|s| s.iter().map(|(b, m)| (mv(b), m.clone())).collect());
    DoubleComplex::new(spaces, d1, d2, sigma).expect("shift preserves shapes")
}

/// Layout of `(A⊗B)^{p,q}` as blocks `A^{r,s}⊗B^{u,v}` in lexicographic
/// order of `((r,s),(u,v))`, each block indexed `i·dim B^{u,v} + j`.
struct TensorLayout {
    blocks: BTreeMap<Bidegree, Vec<(Bidegree, Bidegree, usize)>>,
    dims: BTreeMap<Bidegree, usize>,
}

impl TensorLayout {
    fn new(a: &DoubleComplex, b: &DoubleComplex) -> Self {
        let mut blocks: BTreeMap<Bidegree, Vec<(Bidegree, Bidegree, usize)>> = BTreeMap::new();
        for &x in a.spaces().keys() {
            for &y in b.spaces().keys() {
                blocks.entry(Bidegree::new(x.p + y.p, x.q + y.q)).or_default().push((x, y, 0));
            }
        }
        let mut dims = BTreeMap::new();
        for (t, list) in blocks.iter_mut() {
            list.sort();
            let mut off = 0;
            for entry in list.iter_mut() {
                entry.2 = off;
                off += a.dim(entry.0) * b.dim(entry.1);
            }
            dims.insert(*t, off);
        }
        TensorLayout { blocks, dims }
    }

    fn offset(&self, x: Bidegree, y: Bidegree) -> usize {
        let t = Bidegree::new(x.p + y.p, x.q + y.q);
        let list = &self.blocks[&t];
        let pos = list.binary_search_by(|e| (e.0, e.1).cmp(&(x, y))).expect("block exists");
        list[pos].2
    }
}

/// Tensor product with Koszul signs:
/// `d(x⊗y) = dx⊗y + (−1)^{r+s} x⊗dy` for `x ∈ A^{r,s}`, and `σ(x⊗y) = σx⊗σy`.
pub fn tensor(a: &DoubleComplex, b: &DoubleComplex) -> DoubleComplex {
    let layout = TensorLayout::new(a, b);
    let mut d1: BTreeMap<Bidegree, Vec<Vec<(usize, GaussRat)>>> = BTreeMap::new();
    let mut d2: BTreeMap<Bidegree, Vec<Vec<(usize, GaussRat)>>> = BTreeMap::new();
    let mut sigma: BTreeMap<Bidegree, Vec<Vec<(usize, GaussRat)>>> = BTreeMap::new();
    for (t, dim) in &layout.dims {
        d1.insert(*t, vec![Vec::new(); *dim]);
        d2.insert(*t, vec![Vec::new(); *dim]);
        sigma.insert(*t, vec![Vec::new(); *dim]);
    }
    let real = a.has_real_structure() && b.has_real_structure();
    for (t, list) in &layout.blocks {
        for &(x, y, off) in list {
            let (na, nb) = (a.dim(x), b.dim(y));
            let sign = if (x.p + x.q) % 2 == 0 { GaussRat::ONE } else { -GaussRat::ONE };
            for (which, da, db) in [
                (0, a.d1_blocks().get(&x), b.d1_blocks().get(&y)),
                (1, a.d2_blocks().get(&x), b.d2_blocks().get(&y)),
            ] {
                let step = |z: Bidegree| if which == 0 { z.d1_target() } else { z.d2_target() };
                let cols = if which == 0 { d1.get_mut(t) } else { d2.get_mut(t) }.expect("layout");
                if let Some(m) = da {
                    let toff = layout.offset(step(x), y);
                    for i in 0..na {
                        for (k, c) in m.column(i).iter() {
                            for j in 0..nb {
                                cols[off + i * nb + j].push((toff + k * nb + j, c.clone()));
                            }
                        }
                    }
                }
                if let Some(m) = db {
                    let ys = step(y);
                    let nbt = b.dim(ys);
                    let toff = layout.offset(x, ys);
                    for i in 0..na {
                        for j in 0..nb {
                            for (l, c) in m.column(j).iter() {
                                cols[off + i * nb + j].push((toff + i * nbt + l, &sign * c));
                            }
                        }
                    }
                }
            }
            if real {
                let sa = a.sigma(x).expect("real");
                let sb = b.sigma(y).expect("real");
                let (xs, ys) = (x.swap(), y.swap());
                let nbs = b.dim(ys);
                let toff = layout.offset(xs, ys);
                let cols = sigma.get_mut(t).expect("layout");
                for i in 0..na {
                    for j in 0..nb {
                        for (k, c) in sa.column(i).iter() {
                            for (l, e) in sb.column(j).iter() {
                                cols[off + i * nb + j].push((toff + k * nbs + l, c * e));
                            }
                        }
                    }
                }
            }
        }
    }
    let finish = |maps: BTreeMap<Bidegree, Vec<Vec<(usize, GaussRat)>>>, target: fn(Bidegree) -> Bidegree| {
        maps.into_iter()
            .filter_map(|(t, cols)| {
                let rows = layout.dims.get(&target(t)).copied().unwrap_or(0);
                if rows == 0 {
                    return None;
                }
                Some((t, ExactMatrix::from_columns(rows, cols.into_iter().map(SparseVec::from_pairs).collect())))
            })
            .collect::<BTreeMap<_, _>>()
    };
    let d1 = finish(d1, Bidegree::d1_target);
    let d2 = finish(d2, Bidegree::d2_target);
    let sigma = if real { Some(finish(sigma, Bidegree::swap)) } else { None };
    DoubleComplex::new(layout.dims.clone(), d1, d2, sigma).expect("tensor shapes")
}

/// `K ⊕ K̄` where `K̄^{p,q} = K^{q,p}` with `d1 = conj(d2)`, `d2 = conj(d1)`,
/// and `σ` swapping the two copies. Any real structure on `K` is ignored.
pub fn conjugate_pair(k: &DoubleComplex) -> DoubleComplex {
    let mut spaces: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for (b, d) in k.spaces() {
        *spaces.entry(*b).or_default() += d;
        *spaces.entry(b.swap()).or_default() += d;
    }
    // copy of K sits first at every bidegree, the conjugate copy after it
    let first = |b: Bidegree| k.dim(b);
    let mut d1 = BTreeMap::new();
    let mut d2 = BTreeMap::new();
    let mut sigma = BTreeMap::new();
    for &b in spaces.keys() {
        let n = spaces[&b];
        let (n1, n2) = (k.dim(b), k.dim(b.swap()));
        for (which, tgt) in [(0, b.d1_target()), (1, b.d2_target())] {
            let rows = spaces.get(&tgt).copied().unwrap_or(0);
            if rows == 0 {
                continue;
            }
            let direct = if which == 0 { k.d1(b) } else { k.d2(b) };
            // conjugate copy: d1 on K̄^{b} is conj(d2 of K at b.swap())
            let mirrored = if which == 0 { k.d2(b.swap()) } else { k.d1(b.swap()) };
            let off_tgt = first(tgt);
            let mut cols = Vec::with_capacity(n);
            for j in 0..n1 {
                cols.push(direct.column(j).clone());
            }
            for j in 0..n2 {
                cols.push(mirrored.column(j).conj().shifted(off_tgt));
            }
            let m = ExactMatrix::from_columns(rows, cols);
            if which == 0 {
                d1.insert(b, m);
            } else {
                d2.insert(b, m);
            }
        }
        let back = b.swap();
        let off_back = first(back);
        let mut cols = Vec::with_capacity(n);
        for j in 0..n1 {
            cols.push(SparseVec::unit(off_back + j));
        }
        for j in 0..n2 {
            cols.push(SparseVec::unit(j));
        }
        sigma.insert(b, ExactMatrix::from_columns(spaces[&back], cols));
    }
    DoubleComplex::new(spaces, d1, d2, Some(sigma)).expect("conjugate pair shapes")
}

/// Re-expresses `K` in new bases: the columns of `maps[b]` (invertible,
/// identity where absent) are the new basis vectors of `K^b`.
pub fn change_basis(
    k: &DoubleComplex,
    maps: &BTreeMap<Bidegree, ExactMatrix>,
) -> Result<DoubleComplex, ComplexError> {
    let mut fwd: BTreeMap<Bidegree, ExactMatrix> = BTreeMap::new();
    let mut inv: BTreeMap<Bidegree, ExactMatrix> = BTreeMap::new();
    for (&b, &d) in k.spaces() {
        let a = maps.get(&b).cloned().unwrap_or_else(|| ExactMatrix::identity(d));
        if a.rows() != d || a.cols() != d {
            return Err(ComplexError::Shape { what: "basis change", at: b, expected: (d, d), found: (a.rows(), a.cols()) });
        }
        let ai = a.inverse().ok_or(ComplexError::NotInvertible { at: b })?;
        fwd.insert(b, a);
        inv.insert(b, ai);
    }
    let conjugate = |m: &ExactMatrix, src: Bidegree, tgt: Bidegree, conj_src: bool| -> ExactMatrix {
        let a = &fwd[&src];
        let a = if conj_src { a.conj() } else { a.clone() };
        inv[&tgt].mul(&m.mul(&a).expect("shape")).expect("shape")
    };
    let d1 = k.d1_blocks().iter().map(|(b, m)| (*b, conjugate(m, *b, b.d1_target(), false))).collect();
    let d2 = k.d2_blocks().iter().map(|(b, m)| (*b, conjugate(m, *b, b.d2_target(), false))).collect();
    let sigma = k
        .sigma_blocks()
        .map(|s| s.iter().filter(|(b, _)| k.dim(b.swap()) > 0).map(|(b, m)| (*b, conjugate(m, *b, b.swap(), true))).collect());
    DoubleComplex::new(k.spaces().clone(), d1, d2, sigma)
}

/// The quotient of `f.target()` by the image of an injective morphism.
///
/// The quotient basis at each bidegree consists of the standard basis
/// vectors completing the image. The real structure is carried over when both
/// ends have one and `σ` preserves the image.
pub fn quotient_by_injection(f: &ComplexMorphism) -> Result<DoubleComplex, ComplexError> {
    let target = f.target();
    struct Piece {
        echelon: Echelon,
        n_image: usize,
        complement: Vec<usize>,
    }
    let mut pieces: BTreeMap<Bidegree, Piece> = BTreeMap::new();
    for (&b, &d) in target.spaces() {
        let m = f.component(b);
        if m.rank() != m.cols() {
            return Err(ComplexError::NotInjective { at: b });
        }
        let mut e = Echelon::with_tracking(d);
        for c in m.columns() {
            e.insert(c);
        }
        let mut complement = Vec::new();
        for i in 0..d {
            if let Insert::Independent(_) = e.insert(&SparseVec::unit(i)) {
                complement.push(i);
            }
        }
        pieces.insert(b, Piece { echelon: e, n_image: m.cols(), complement });
    }
    for b in f.source().support() {
        if target.dim(b) == 0 {
            return Err(ComplexError::NotInjective { at: b });
        }
    }
    let coords = |b: Bidegree, v: &SparseVec| -> SparseVec {
        let piece = &pieces[&b];
        let comb = piece.echelon.express(v).expect("full span");
        let n_img = piece.n_image;
        // generators: image columns, then unit vectors 0..d in order; only
        // the independent unit vectors carry rows, in complement order
        let pos: BTreeMap<usize, usize> = piece
            .complement
            .iter()
            .enumerate()
            .map(|(k, i)| (n_img + *i, k))
            .collect();
        comb.remap(|g| pos.get(&g).copied())
    };
    let spaces: BTreeMap<Bidegree, usize> =
        pieces.iter().map(|(b, p)| (*b, p.complement.len())).collect();
    let induced = |apply: &dyn Fn(Bidegree, &SparseVec) -> SparseVec, tgt: fn(Bidegree) -> Bidegree| {
        let mut out = BTreeMap::new();
        for (&b, p) in &pieces {
            let t = tgt(b);
            let rows = spaces.get(&t).copied().unwrap_or(0);
            if rows == 0 || p.complement.is_empty() {
                continue;
            }
            let cols = p.complement.iter().map(|&i| coords(t, &apply(b, &SparseVec::unit(i)))).collect();
            out.insert(b, ExactMatrix::from_columns(rows, cols));
        }
        out
    };
    let d1 = induced(&|b, v| target.apply_d1(b, v), Bidegree::d1_target);
    let d2 = induced(&|b, v| target.apply_d2(b, v), Bidegree::d2_target);
    let sigma_ok = f.source().has_real_structure()
        && target.has_real_structure()
        && f.source().support().all(|b| {
            let m = f.component(b);
            let tb = b.swap();
            let img = &pieces[&tb];
            m.columns().iter().all(|c| {
                let s = target.apply_sigma(b, c).expect("real");
                let comb = img.echelon.express(&s).expect("full span");
                let inside = comb.iter().all(|(g, _)| *g < img.n_image);
                inside
            })
        });
    let sigma = if sigma_ok {
        Some(induced(&|b, v| target.apply_sigma(b, v).expect("real"), Bidegree::swap))
    } else {
        None
    };
    DoubleComplex::new(spaces, d1, d2, sigma)
}
