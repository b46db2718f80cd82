use ddx_core::formula::{
    check_blowup, check_projbundle, mu, psi, verify_blowup_inverse, verify_projbundle_inverse, AdjunctionRule,
    FormulaTheory, FreeModuleElement, PushforwardContext, Symbol, Verdict,
};
use ddx_core::poly::IntPolynomial;
use proptest::prelude::*;

fn eval(p: &IntPolynomial, point: &[i128]) -> i128 {
    p.terms()
        .map(|(m, c)| {
            let c: i128 = c.try_into().unwrap();
            m.0.iter().zip(point).fold(c, |acc, (d, x)| acc * x.pow(*d))
        })
        .sum()
}

/// `π_*h^m` at a point, from the pushforward rule alone.
fn push(r: usize, m: usize, point: &[i128]) -> i128 {
    if m + 2 <= r {
        0
    } else if m + 1 == r {
        if (r - 1).is_multiple_of(2) {
            1
        } else {
            -1
        }
    } else {
        point[m - r]
    }
}

/// `P_i` at a point as coefficients of the inverse of `Σ_j π_*(h^{r−1+j}) x^j`.
fn family(r: usize, point: &[i128]) -> Vec<i128> {
    let t0 = push(r, r - 1, point);
    let mut q = vec![t0];
    for k in 1..r {
        let s: i128 = (1..=k).map(|j| push(r, r - 1 + j, point) * q[k - j]).sum();
        q.push(-t0 * s);
    }
    (0..r).map(|i| q[r - 1 - i]).collect()
}

/// Coefficient of `α_l` in `G^{−i}(μ(α))`, numerically.
fn inverse_matrix(r: usize, point: &[i128]) -> Vec<Vec<i128>> {
    let p = family(r, point);
    (0..r)
        .map(|i| (0..r).map(|l| (0..r - i).map(|j| p[i + j] * push(r, j + l, point)).sum()).collect())
        .collect()
}

fn coefficient_at(x: &FreeModuleElement, s: Symbol, point: &[i128]) -> i128 {
    let m = x.max_power().unwrap_or(0);
    (0..=m).map(|k| eval(&x.coefficient(s, k), point)).sum()
}

proptest! {
    #[test]
    fn numeric_composite_is_the_identity(r in 1usize..=8, raw in proptest::collection::vec(-4i128..=4, 7)) {
        let point = &raw[..r - 1];
        let m = inverse_matrix(r, point);
        for (i, row) in m.iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                prop_assert_eq!(*v, i128::from(i == l), "r={} i={} l={}", r, i, l);
            }
        }
    }

    #[test]
    fn symbolic_inverse_matches_numeric(r in 2usize..=8, raw in proptest::collection::vec(-4i128..=4, 7)) {
        let point = &raw[..r - 1];
        let ctx = PushforwardContext::new(r).unwrap();
        for m in 0..=(2 * r - 2) {
            prop_assert_eq!(eval(&ctx.push_h(m as u32), point), push(r, m, point));
        }
        let p = family(r, point);
        for (i, pi) in p.iter().enumerate() {
            prop_assert_eq!(eval(ctx.family().p(i), point), *pi);
        }
        let x = mu(r);
        for i in 0..r {
            let g = ctx.g(i, &x);
            for l in 0..r {
                prop_assert_eq!(coefficient_at(&g, Symbol::Alpha(l), point), i128::from(i == l));
            }
        }
    }
}

#[test]
fn inverse_formulas_hold_in_every_rank() {
    for r in 1..=8 {
        assert!(verify_projbundle_inverse(r).unwrap(), "projbundle r={r}");
    }
    for r in 2..=8 {
        assert!(verify_blowup_inverse(r).unwrap(), "blowup r={r}");
    }
}

#[test]
fn exact_results_are_the_input_symbols() {
    for r in 2..=6 {
        let ctx = PushforwardContext::new(r).unwrap();
        for i in 0..r {
            assert_eq!(ctx.g(i, &mu(r)), FreeModuleElement::symbol(r, Symbol::Alpha(i)));
        }
        let (_, exceptional) = psi(r);
        assert!(ctx.push(&exceptional).is_zero());
        let restricted = FreeModuleElement::symbol(r, Symbol::AlphaOnY).add(&exceptional.times_h(1));
        for i in 1..r {
            assert_eq!(ctx.g(i, &restricted), FreeModuleElement::symbol(r, Symbol::Beta(i)));
        }
    }
}

#[test]
fn reports_per_theory() {
    for theory in [FormulaTheory::DeRham, FormulaTheory::Dolbeault, FormulaTheory::BottChern] {
        let pb = check_projbundle(4, theory).unwrap();
        assert!(pb.holds() && pb.homogeneous && pb.h_consistent && !pb.assumed_adjunction);
        assert_eq!(pb.components.len(), 4);
        let bu = check_blowup(4, theory, AdjunctionRule::SelfIntersection).unwrap();
        assert!(bu.holds() && bu.homogeneous && bu.h_consistent);
        assert_eq!(bu.assumed_adjunction, theory != FormulaTheory::DeRham);
        assert!(bu.summary().ends_with(&format!("({})", theory.name())));
        let blocked = check_blowup(4, theory, AdjunctionRule::Unavailable).unwrap();
        assert_eq!(blocked.verdict, Verdict::Blocked);
        assert!(blocked.summary().contains("expansion blocked without assumption"));
    }
    for r in 2..=8 {
        assert_eq!(check_blowup(r, FormulaTheory::DeRham, AdjunctionRule::Zero).unwrap().verdict, Verdict::Fails);
    }
}

#[test]
fn traces_render_and_serialize() {
    let rep = check_projbundle(3, FormulaTheory::Dolbeault).unwrap();
    let text = rep.render_trace();
    assert_eq!(text.lines().filter(|l| l.starts_with("step ")).count(), rep.trace.len());
    assert!(text.contains("H^{1,1}_dbar"));
    let v = serde_json::to_value(&rep).unwrap();
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["trace"].as_array().unwrap().len(), rep.trace.len());
}
