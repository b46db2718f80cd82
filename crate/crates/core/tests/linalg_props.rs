use ddx_core::linalg::{ExactMatrix, GaussRat, Quotient, Rat, SparseVec, Subspace};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rat::new(n, d))
}

fn gauss() -> impl Strategy<Value = GaussRat> {
    (rat(), rat()).prop_map(|(re, im)| GaussRat::new(re, im))
}

/// Small entries, mostly zero, so that rank deficiency is common.
fn entry() -> impl Strategy<Value = GaussRat> {
    prop_oneof![
        3 => Just(GaussRat::zero()),
        2 => (-2i64..=2).prop_map(GaussRat::from_int),
        1 => (-2i64..=2, -1i64..=1).prop_map(|(a, b)| GaussRat::new(Rat::from_int(a), Rat::from_int(b))),
    ]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(proptest::collection::vec(entry(), cols), rows)
        .prop_map(move |data| ExactMatrix::from_rows(rows, cols, &data).unwrap())
}

fn any_matrix() -> impl Strategy<Value = ExactMatrix> {
    (0usize..6, 0usize..6).prop_flat_map(|(r, c)| matrix(r, c))
}

fn vector(n: usize) -> impl Strategy<Value = SparseVec> {
    proptest::collection::vec(entry(), n).prop_map(|v| SparseVec::from_dense(&v))
}

proptest! {
    #[test]
    fn field_axioms(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn coefficient_text_round_trips(a in gauss()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<GaussRat>().unwrap(), a);
        prop_assert!(!text.contains(' '));
    }

    #[test]
    fn rank_nullity(m in any_matrix()) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        prop_assert_eq!(m.transpose().rank(), m.rank());
        prop_assert_eq!(m.image().dim(), m.rank());
        for v in k.basis() {
            prop_assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn products_associate_and_transpose(a in matrix(3, 4), b in matrix(4, 2), c in matrix(2, 3)) {
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        prop_assert_eq!(a.mul(&b).unwrap().transpose(), b.transpose().mul(&a.transpose()).unwrap());
        prop_assert!(a.mul(&b).unwrap().rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn inverse_when_full_rank(m in matrix(4, 4)) {
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.rank(), 4);
                prop_assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(4));
                prop_assert_eq!(inv.mul(&m).unwrap(), ExactMatrix::identity(4));
            }
            None => prop_assert!(m.rank() < 4),
        }
    }

    #[test]
    fn solve_finds_preimages(m in matrix(4, 3), x in vector(3), y in vector(4)) {
        let b = m.apply(&x);
        let sol = m.solve(&b).expect("b is in the image");
        prop_assert_eq!(m.apply(&sol), b);
        match m.solve(&y) {
            Some(s) => prop_assert_eq!(m.apply(&s), y),
            None => prop_assert!(!m.image().contains(&y)),
        }
    }

    #[test]
    fn subspace_dimension_formula(a in matrix(5, 3), b in matrix(5, 3)) {
        let (u, v) = (Subspace::column_span(&a), Subspace::column_span(&b));
        let sum = u.sum(&v).unwrap();
        let meet = u.intersection(&v).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
        prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&v));
        prop_assert!(u.is_subspace_of(&sum) && v.is_subspace_of(&sum));
        let complement = u.complement_in(&sum);
        prop_assert_eq!(complement.len(), sum.dim() - u.dim());
        prop_assert_eq!(u.sum(&Subspace::span(5, complement.iter())).unwrap().dim(), sum.dim());
    }

    #[test]
    fn quotient_coordinates_invert_lifts(a in matrix(5, 4), b in matrix(4, 2)) {
        // den = a(b(C^2)) ⊂ num = a(C^4)
        let num = Subspace::column_span(&a);
        let den = Subspace::column_span(&a.mul(&b).unwrap());
        let q = Quotient::new(&num, &den).unwrap();
        prop_assert_eq!(q.dim(), num.dim() - den.dim());
        for i in 0..q.dim() {
            let e = SparseVec::unit(i);
            prop_assert_eq!(q.coords(&q.lift(&e)).unwrap(), e);
        }
        for v in den.basis() {
            prop_assert!(q.coords(v).unwrap().is_zero());
        }
    }

    #[test]
    fn preimage_and_image(m in matrix(4, 5), t in matrix(4, 2)) {
        let target = Subspace::column_span(&t);
        let pre = Subspace::preimage(&m, &target).unwrap();
        prop_assert!(pre.image_under(&m).unwrap().is_subspace_of(&target));
        prop_assert!(m.kernel().is_subspace_of(&pre));
        let reachable = target.intersection(&m.image()).unwrap();
        prop_assert_eq!(pre.dim(), m.kernel().dim() + reachable.dim());
    }
}

#[test]
fn canonical_coefficient_text() {
    for (text, re, im) in [("3", (3, 1), (0, 1)), ("-1/2", (-1, 2), (0, 1)), ("2+1/3i", (2, 1), (1, 3)), ("-i", (0, 1), (-1, 1))] {
        let g = GaussRat::new(Rat::new(re.0, re.1), Rat::new(im.0, im.1));
        assert_eq!(g.to_string(), text);
        assert_eq!(text.parse::<GaussRat>().unwrap(), g);
    }
    assert_eq!("4/6".parse::<GaussRat>().unwrap().to_string(), "2/3");
    for bad in ["", "1/0", "i i", "2+", "abc", "1.5"] {
        assert!(bad.parse::<GaussRat>().is_err(), "{bad:?}");
    }
}
