mod common;

use ddx_core::cohomology::froelicher::{degenerates_at_e1, froelicher, page_dims};
use ddx_core::cohomology::hodge::filtration_dims;
use ddx_core::cohomology::{self, all_tables, hodge_structure_check, natural_maps, MapKind};
use ddx_core::complex::DoubleComplex;
use ddx_core::models::builtin;
use ddx_core::zigzag::{decompose, is_ddbar, Method};
use proptest::prelude::*;

fn per_degree(t: &cohomology::CohomologyTable, k: i64) -> usize {
    t.diagonal_sum(k)
}

fn degrees(k: &DoubleComplex) -> std::ops::RangeInclusive<i64> {
    let (lo, hi) = k.degree_range().unwrap_or((0, -1));
    lo..=hi
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn criteria_agree_with_the_atoms(seed in any::<u64>(), real in any::<bool>()) {
        let (k, atoms) = common::random_complex(seed, 4, real);
        let expected = atoms.zigzags.keys().all(|s| s.is_dot());
        let v = is_ddbar(&k, Method::All).expect("criteria agree");
        prop_assert_eq!(v.holds, expected);
        prop_assert_eq!(v.results.len(), if real { 3 } else { 2 });
        // ddbar exactly when BC + A = 2 b in every degree
        let t = all_tables(&k);
        let mut equality = true;
        for d in degrees(&k) {
            let lhs = per_degree(&t.bott_chern, d) + per_degree(&t.aeppli, d);
            prop_assert!(lhs >= 2 * t.de_rham.get(d));
            equality &= lhs == 2 * t.de_rham.get(d);
        }
        prop_assert_eq!(equality, expected);
    }

    #[test]
    fn spectral_sequence_shrinks_to_betti(seed in any::<u64>()) {
        let (k, _) = common::random_complex(seed, 4, false);
        let pages = page_dims(&k, None);
        let dol = cohomology::dolbeault(&k);
        prop_assert_eq!(&pages[0].dims, &dol.dims);
        for w in pages.windows(2) {
            for (b, d) in &w[1].dims {
                prop_assert!(*d <= w[0].dims[b]);
                // E_{r+1} = ker d_r / im d_r
                let incoming: usize = w[0].ranks.iter().filter(|(s, _)| {
                    let r = w[0].r as i64;
                    s.offset(r, 1 - r) == *b
                }).map(|(_, n)| *n).sum();
                prop_assert_eq!(*d, w[0].dims[b] - w[0].ranks[b] - incoming);
            }
        }
        let last = pages.last().unwrap();
        let betti = cohomology::de_rham(&k);
        for d in degrees(&k) {
            let total: usize = last.dims.iter().filter(|(b, _)| b.total() == d).map(|(_, n)| n).sum();
            prop_assert_eq!(total, betti.get(d));
            prop_assert!(betti.get(d) <= dol.diagonal_sum(d));
        }
        let fd = filtration_dims(&k);
        for ((deg, p), dim) in &fd {
            prop_assert!(*dim <= betti.get(*deg));
            if let Some(next) = fd.get(&(*deg, p + 1)) {
                prop_assert!(next <= dim);
            }
        }
    }

    #[test]
    fn natural_maps_and_ddbar(seed in any::<u64>()) {
        let (k, atoms) = common::random_complex(seed, 3, true);
        let report = natural_maps(&k);
        let ddbar = atoms.zigzags.keys().all(|s| s.is_dot());
        let bc_a_injective = report.of_kind(MapKind::BcToAeppli).all(|m| m.injective);
        prop_assert_eq!(bc_a_injective, ddbar);
        if ddbar {
            for kind in [MapKind::BcToDolbeault, MapKind::BcToAeppli, MapKind::DolbeaultToAeppli] {
                prop_assert!(report.all_isomorphisms(kind), "{}", kind);
            }
            prop_assert!(report.of_kind(MapKind::BcToDeRham).all(|m| m.injective));
            prop_assert!(report.of_kind(MapKind::DeRhamToAeppli).all(|m| m.surjective));
        }
        prop_assert_eq!(decompose(&k).only_dots(), ddbar);
    }
}

#[test]
fn tori_have_hodge_structures() {
    for n in 1..=3 {
        let k = builtin(&format!("torus-{n}")).unwrap();
        assert!(degenerates_at_e1(&k));
        for d in degrees(&k) {
            let h = hodge_structure_check(&k, d).unwrap();
            assert!(h.holds, "torus-{n} H^{d}");
            let dol = cohomology::dolbeault(&k);
            for (b, dim) in h.piece_dims() {
                assert_eq!(dim, dol.get(b));
            }
        }
    }
}

#[test]
fn iwasawa_spectral_sequence() {
    let k = builtin("iwasawa").unwrap();
    let ss = froelicher(&k, None);
    assert!(!ss.degenerates_at_e1);
    // E_∞ totals are the Betti numbers
    let e1 = &ss.pages[0];
    assert_eq!(e1.dims[&ddx_core::complex::Bidegree::new(1, 0)], 3);
    let betti = cohomology::de_rham(&k);
    for d in 0..=6 {
        let einf: usize = ss.e_infinity.iter().filter(|(b, _)| b.total() == d).map(|(_, n)| n).sum();
        assert_eq!(einf, betti.get(d));
    }
    assert!(ss.pages.last().unwrap().dims == ss.e_infinity);
    // every H^k splits into V^{p,q}; the Hodge criterion fails through E_1 alone
    let pieces = ss.hodge_pieces.expect("real structure");
    assert!(pieces.values().all(|h| h.holds));
    assert_eq!(pieces[&1].piece_dims().values().copied().collect::<Vec<_>>(), [2, 2]);
    assert!(!is_ddbar(&k, Method::Hodge).unwrap().holds);
}

#[test]
fn kodaira_thurston_degenerates_without_ddbar() {
    let k = builtin("kodaira-thurston").unwrap();
    let report = natural_maps(&k);
    assert!(!report.all_isomorphisms(MapKind::BcToDolbeault));
    assert!(!report.of_kind(MapKind::BcToAeppli).all(|m| m.injective));
    let t = all_tables(&k);
    assert!(degenerates_at_e1(&k));
    assert_eq!(t.de_rham.get(1), 3);
    assert_eq!(t.dolbeault.diagonal_sum(1), 3);
    assert!(!hodge_structure_check(&k, 1).unwrap().holds);
}

#[test]
fn hodge_criterion_needs_sigma() {
    let k = builtin("torus-1").unwrap().without_real_structure();
    assert!(is_ddbar(&k, Method::Hodge).is_err());
    assert!(hodge_structure_check(&k, 1).is_err());
    assert!(is_ddbar(&k, Method::All).unwrap().holds);
}
