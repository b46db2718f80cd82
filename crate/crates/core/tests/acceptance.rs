//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::golden;
use ddx_core::cohomology::froelicher::{degenerates_at_e1, page_dims};
use ddx_core::cohomology::hodge::filtration_dims;
use ddx_core::cohomology::natural::induces_isomorphisms;
use ddx_core::cohomology::{self, all_tables, hodge_structure_check, is_e1_quasi_iso, Theory};
use ddx_core::complex::builtin::{builtin_square, dot};
use ddx_core::complex::ops::direct_sum;
use ddx_core::complex::{Bidegree, ComplexMorphism, DoubleComplex};
use ddx_core::formula::{check_blowup, check_projbundle, AdjunctionRule, FormulaTheory, Verdict};
use ddx_core::models::{blowup_model, builtin, builtin_names, product_model, projbundle_model};
use ddx_core::poly::{build_family, check_h_identity, check_support, check_weighted_homogeneity};
use ddx_core::zigzag::{decompose, e1_equivalent, is_ddbar, Method};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:.2?}, limit {limit:?}"))?;
    Ok(spent)
}

fn builtins() -> Vec<(&'static str, DoubleComplex)> {
    builtin_names().into_iter().map(|n| (n, builtin(n).expect("catalog entry builds"))).collect()
}

/// Both complexes with or without `σ`, so that they can be summed.
fn compatible(a: &DoubleComplex, b: &DoubleComplex) -> (DoubleComplex, DoubleComplex) {
    if a.has_real_structure() == b.has_real_structure() {
        (a.clone(), b.clone())
    } else {
        (a.without_real_structure(), b.without_real_structure())
    }
}

fn ddbar(k: &DoubleComplex) -> Result<bool, String> {
    is_ddbar(k, Method::All).map(|v| v.holds).map_err(|e| e.to_string())
}

/// `dim F^p H^k`, extended by `b_k` below the support and `0` above it.
struct Filtration {
    dims: BTreeMap<(i64, i64), usize>,
    betti: BTreeMap<i64, usize>,
    lo: i64,
}

impl Filtration {
    fn of(k: &DoubleComplex) -> Self {
        Filtration {
            dims: filtration_dims(k),
            betti: cohomology::de_rham(k).dims,
            lo: k.bounds().map_or(0, |b| b.pmin),
        }
    }

    fn get(&self, k: i64, p: i64) -> usize {
        match self.dims.get(&(k, p)) {
            Some(d) => *d,
            None if p < self.lo => self.betti.get(&k).copied().unwrap_or(0),
            None => 0,
        }
    }

    fn graded(&self, k: i64, p: i64) -> usize {
        self.get(k, p) - self.get(k, p + 1)
    }
}

fn polynomial_identities() -> Outcome {
    let start = Instant::now();
    for r in 1..=12 {
        let f = build_family(r).map_err(|e| e.to_string())?;
        ensure(check_h_identity(&f), || format!("H-identity fails for r={r}"))?;
        ensure(check_support(&f), || format!("support fails for r={r}"))?;
        ensure(check_weighted_homogeneity(&f), || format!("homogeneity fails for r={r}"))?;
    }
    let t = within(Duration::from_secs(5), start)?;
    Ok(format!("r = 1..12 in {t:.2?}"))
}

fn inverse_formulas() -> Outcome {
    let start = Instant::now();
    for r in 1..=8 {
        let rep = check_projbundle(r, FormulaTheory::DeRham).map_err(|e| e.to_string())?;
        ensure(rep.holds() && rep.homogeneous && rep.h_consistent, || format!("projbundle r={r}: {rep:?}"))?;
    }
    for r in 2..=8 {
        let rep = check_blowup(r, FormulaTheory::DeRham, AdjunctionRule::SelfIntersection).map_err(|e| e.to_string())?;
        ensure(rep.holds() && rep.homogeneous && rep.h_consistent, || format!("blowup r={r}: {rep:?}"))?;
    }
    let mutated = check_blowup(2, FormulaTheory::DeRham, AdjunctionRule::Zero).map_err(|e| e.to_string())?;
    ensure(mutated.verdict == Verdict::Fails, || "replaced adjunction rule still verifies".into())?;
    let t = within(Duration::from_secs(10), start)?;
    Ok(format!("projbundle r = 1..8, blowup r = 2..8 in {t:.2?}"))
}

fn atomic_tables() -> Outcome {
    for name in ["square", "dot", "zigzag-h2"] {
        let g = golden::load(&format!("atoms/{name}"));
        golden::compare_tables(&builtin(name).map_err(|e| e.to_string())?, &g).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok("square, dot, zigzag-h2 match hand-derived tables".into())
}

fn iwasawa() -> Outcome {
    let start = Instant::now();
    let k = builtin("iwasawa").map_err(|e| e.to_string())?;
    golden::compare_tables(&k, &golden::load("iwasawa"))?;
    let dol = cohomology::dolbeault(&k);
    let b1 = cohomology::de_rham(&k).get(1);
    let (h10, h01) = (dol.get(Bidegree::new(1, 0)), dol.get(Bidegree::new(0, 1)));
    ensure(b1 == 4 && h10 == 3 && h01 == 2 && dol.diagonal_sum(1) == 5, || {
        format!("b1={b1}, h10={h10}, h01={h01}, sum={}", dol.diagonal_sum(1))
    })?;
    ensure(!degenerates_at_e1(&k), || "E1 degenerates".into())?;
    let v = is_ddbar(&k, Method::All).map_err(|e| e.to_string())?;
    ensure(!v.holds && v.results.len() == 3, || format!("{v}"))?;
    let t = within(Duration::from_secs(10), start)?;
    Ok(format!("b1=4, h10=3, h01=2, {v} in {t:.2?}"))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn tori() -> Outcome {
    for n in 1..=3u64 {
        let k = builtin(&format!("torus-{n}")).map_err(|e| e.to_string())?;
        let v = is_ddbar(&k, Method::All).map_err(|e| e.to_string())?;
        ensure(v.holds && v.results.len() == 3, || format!("torus-{n}: {v}"))?;
        let betti = cohomology::de_rham(&k);
        let dol = cohomology::dolbeault(&k);
        for deg in 0..=(2 * n) {
            let expected = binomial(2 * n, deg) as usize;
            let (b, h) = (betti.get(deg as i64), dol.diagonal_sum(deg as i64));
            ensure(b == expected && h == expected, || format!("torus-{n} k={deg}: b={b}, sum h={h}, C={expected}"))?;
        }
    }
    Ok("n = 1, 2, 3: all criteria YES, b_k = sum h^{p,q} = C(2n,k)".into())
}

fn theorem_equivalences() -> Outcome {
    let start = Instant::now();
    let all = builtins();
    let mut verdict = BTreeMap::new();
    let mut connected = BTreeMap::new();
    for (name, k) in &all {
        verdict.insert(*name, ddbar(k)?);
        connected.insert(*name, cohomology::de_rham(k).get(0) == 1);
    }
    let mut checked = 0;
    // (model, factors all have b_0 = 1)
    let mut mismatches: Vec<(String, bool)> = Vec::new();
    for (name, k) in &all {
        for r in [2, 3] {
            let pb = projbundle_model(k, r).map_err(|e| e.to_string())?;
            if ddbar(&pb)? != verdict[name] {
                mismatches.push((format!("projbundle({name}, {r})"), connected[name]));
            }
            checked += 1;
        }
    }
    for (x, kx) in &all {
        for (y, ky) in &all {
            let expected = verdict[x] && verdict[y];
            let both = connected[x] && connected[y];
            let (a, b) = compatible(kx, ky);
            for r in [2, 3] {
                let bu = blowup_model(&a, &b, r).map_err(|e| e.to_string())?;
                if ddbar(&bu)? != expected {
                    mismatches.push((format!("blowup({x}, {y}, {r})"), both));
                }
                checked += 1;
            }
            if ddbar(&product_model(kx, ky))? != expected {
                mismatches.push((format!("product({x}, {y})"), both));
            }
            checked += 1;
        }
    }
    let t = within(Duration::from_secs(60), start)?;
    if mismatches.is_empty() {
        return Ok(format!("{checked} models in {t:.2?}"));
    }
    let genuine: Vec<&str> = mismatches.iter().filter(|m| m.1).map(|m| m.0.as_str()).collect();
    let listed: Vec<&str> = mismatches.iter().map(|m| m.0.as_str()).collect();
    Err(format!(
        "{} of {checked} models disagree, {} of them with factors that have b_0 = 1: {}",
        mismatches.len(),
        genuine.len(),
        listed.join(", ")
    ))
}

fn kunneth() -> Outcome {
    let all = builtins();
    for (x, a) in &all {
        let (ba, da) = (cohomology::de_rham(a), cohomology::dolbeault(a).support());
        for (y, b) in &all {
            let (bb, db) = (cohomology::de_rham(b), cohomology::dolbeault(b).support());
            let t = product_model(a, b);
            let bt = cohomology::de_rham(&t);
            let mut expected: BTreeMap<i64, usize> = BTreeMap::new();
            for (h, m) in &ba.dims {
                for (l, n) in &bb.dims {
                    *expected.entry(h + l).or_default() += m * n;
                }
            }
            for (deg, want) in &expected {
                ensure(bt.get(*deg) == *want, || format!("{x}x{y}: b_{deg} = {}, expected {want}", bt.get(*deg)))?;
            }
            ensure(bt.dims.iter().all(|(deg, d)| *d == expected.get(deg).copied().unwrap_or(0)), || format!("{x}x{y}: stray Betti numbers"))?;
            let mut hodge: BTreeMap<Bidegree, usize> = BTreeMap::new();
            for (s, m) in &da {
                for (u, n) in &db {
                    *hodge.entry(s.offset(u.p, u.q)).or_default() += m * n;
                }
            }
            let got = cohomology::dolbeault(&t).support();
            ensure(got == hodge, || format!("{x}x{y}: Hodge numbers {got:?}, expected {hodge:?}"))?;
        }
    }
    Ok(format!("{} pairs", all.len() * all.len()))
}

fn filtration_lemmas() -> Outcome {
    let all = builtins();
    let mut checked = 0usize;
    let range = |k: &DoubleComplex| {
        let (lo, hi) = k.degree_range().unwrap_or((0, 0));
        let b = k.bounds().expect("nonempty");
        (lo, hi, b.pmin - 1, b.pmax + 1)
    };
    for (name, k) in &all {
        let fk = Filtration::of(k);
        for r in [2usize, 3] {
            let pb = projbundle_model(k, r).map_err(|e| e.to_string())?;
            let fp = Filtration::of(&pb);
            let (klo, khi, plo, phi) = range(&pb);
            for deg in klo..=khi {
                for p in plo..=phi {
                    let want: usize = (0..r as i64).map(|i| fk.get(deg - 2 * i, p - i)).sum();
                    ensure(fp.get(deg, p) == want, || format!("projbundle({name},{r}) F^{p}H^{deg}"))?;
                    checked += 1;
                }
            }
        }
    }
    for (x, kx) in &all {
        for (y, ky) in &all {
            let (a, b) = compatible(kx, ky);
            let (fx, fy) = (Filtration::of(&a), Filtration::of(&b));
            for r in [2usize, 3] {
                let bu = blowup_model(&a, &b, r).map_err(|e| e.to_string())?;
                let fb = Filtration::of(&bu);
                let (klo, khi, plo, phi) = range(&bu);
                for deg in klo..=khi {
                    for p in plo..=phi {
                        let want = fx.get(deg, p) + (1..r as i64).map(|i| fy.get(deg - 2 * i, p - i)).sum::<usize>();
                        ensure(fb.get(deg, p) == want, || format!("blowup({x},{y},{r}) F^{p}H^{deg}"))?;
                        checked += 1;
                    }
                }
            }
            let t = product_model(kx, ky);
            let ft = Filtration::of(&t);
            let (fa, fb) = (Filtration::of(kx), Filtration::of(ky));
            let (alo, ahi, aplo, aphi) = range(kx);
            let (blo, bhi, bplo, bphi) = range(ky);
            // V^{r,s} dimensions, when both factors carry a Hodge structure
            let pure = |k: &DoubleComplex, lo: i64, hi: i64| -> Option<BTreeMap<Bidegree, usize>> {
                if !k.has_real_structure() || !ddbar(k).ok()? {
                    return None;
                }
                let mut v = BTreeMap::new();
                for deg in lo..=hi {
                    v.extend(hodge_structure_check(k, deg).ok()?.piece_dims());
                }
                Some(v)
            };
            let hodge = pure(kx, alo, ahi).zip(pure(ky, blo, bhi));
            let (klo, khi, plo, phi) = range(&t);
            for deg in klo..=khi {
                for p in plo..=phi {
                    let mut want = 0;
                    for h in alo..=ahi {
                        for a in aplo..=aphi {
                            for c in (p - a).max(bplo)..=bphi {
                                want += fa.graded(h, a) * fb.graded(deg - h, c);
                            }
                        }
                    }
                    ensure(ft.get(deg, p) == want, || format!("product({x},{y}) F^{p}H^{deg}: {} vs {want}", ft.get(deg, p)))?;
                    if let Some((va, vb)) = &hodge {
                        let literal: usize = va
                            .iter()
                            .flat_map(|(s, m)| vb.iter().map(move |(u, n)| (s, u, m * n)))
                            .filter(|(s, u, _)| s.p + u.p >= p && s.total() + u.total() == deg)
                            .map(|(_, _, c)| c)
                            .sum();
                        ensure(ft.get(deg, p) == literal, || format!("product({x},{y}) F^{p}H^{deg} vs V-sum {literal}"))?;
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} filtration dimensions"))
}

fn random_suite() -> Vec<DoubleComplex> {
    (0..100).map(|seed| common::random_complex(seed, 5, seed % 2 == 0).0).collect()
}

fn reconstruction() -> Outcome {
    let start = Instant::now();
    let mut inputs: Vec<(String, DoubleComplex)> = builtins().into_iter().map(|(n, k)| (n.to_string(), k)).collect();
    for (seed, k) in random_suite().into_iter().enumerate() {
        ensure(k.total_dim() <= 40, || format!("random complex {seed} has dimension {}", k.total_dim()))?;
        inputs.push((format!("random #{seed}"), k));
    }
    for (name, k) in &inputs {
        let d = decompose(k);
        ensure(d.verify(k), || format!("{name}: certificate does not check"))?;
        let rebuilt = d.reconstruct();
        ensure(all_tables(k) == all_tables(&rebuilt), || format!("{name}: tables differ"))?;
        ensure(page_dims(k, None) == page_dims(&rebuilt, None), || format!("{name}: Frölicher pages differ"))?;
    }
    let t = within(Duration::from_secs(120), start)?;
    Ok(format!("{} complexes in {t:.2?}", inputs.len()))
}

fn transfer() -> Outcome {
    let mut maps: Vec<(String, ComplexMorphism)> = Vec::new();
    for (name, k) in builtins() {
        let sq = if k.has_real_structure() { builtin_square(0, 0) } else { builtin_square(0, 0).without_real_structure() };
        let inc = ComplexMorphism::summand_inclusion(&[&k, &sq], 0).map_err(|e| e.to_string())?;
        maps.push((format!("{name} -> {name}+square"), inc.clone()));
        maps.push((format!("shifted {name} -> {name}+square"), inc.shift_diag(1)));
        let id = ComplexMorphism::identity(&k);
        maps.push((format!("id {name}"), id.clone()));
        let sum = ComplexMorphism::direct_sum(&[&inc, &id.shift_diag(2)]).map_err(|e| e.to_string())?;
        maps.push((format!("sum over {name}"), sum));
    }
    for (name, f) in &maps {
        ensure(is_e1_quasi_iso(f), || format!("{name}: not an E1-quasi-isomorphism"))?;
        ensure(induces_isomorphisms(f, Theory::BottChern), || format!("{name}: BC not an isomorphism"))?;
        ensure(induces_isomorphisms(f, Theory::Aeppli), || format!("{name}: Aeppli not an isomorphism"))?;
        ensure(e1_equivalent(f.source(), f.target()), || format!("{name}: zigzag multiplicities differ"))?;
    }
    // a map that is not an E1-quasi-isomorphism, between non-equivalent complexes
    let d = dot(Bidegree::new(0, 0));
    let dd = direct_sum(&[&d, &d]).map_err(|e| e.to_string())?;
    let control = ComplexMorphism::summand_inclusion(&[&d, &d], 0).map_err(|e| e.to_string())?;
    ensure(!is_e1_quasi_iso(&control) && !e1_equivalent(&d, &dd), || "control map misjudged".into())?;
    Ok(format!("{} E1-quasi-isomorphisms plus a negative control", maps.len()))
}

fn froelicher_inequality() -> Outcome {
    let mut touched: Vec<DoubleComplex> = builtins().into_iter().map(|(_, k)| k).collect();
    let base = touched.clone();
    for k in &base {
        for r in [2, 3] {
            touched.push(projbundle_model(k, r).map_err(|e| e.to_string())?);
        }
        for other in &base {
            let (a, b) = compatible(k, other);
            touched.push(blowup_model(&a, &b, 2).map_err(|e| e.to_string())?);
            touched.push(product_model(k, other));
        }
    }
    touched.extend(random_suite());
    for (i, k) in touched.iter().enumerate() {
        let betti = cohomology::de_rham(k);
        let dol = cohomology::dolbeault(k);
        for (deg, b) in &betti.dims {
            ensure(*b <= dol.diagonal_sum(*deg), || format!("complex #{i}: b_{deg} = {b} > {}", dol.diagonal_sum(*deg)))?;
        }
    }
    Ok(format!("{} complexes", touched.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("polynomial identities", polynomial_identities),
        ("inverse-formula verification", inverse_formulas),
        ("atomic tables", atomic_tables),
        ("Iwasawa model", iwasawa),
        ("torus models", tori),
        ("theorem-level equivalences on models", theorem_equivalences),
        ("Kunneth bookkeeping", kunneth),
        ("filtration lemmas", filtration_lemmas),
        ("zigzag reconstruction", reconstruction),
        ("E1-quasi-isomorphism transfer", transfer),
        ("Frolicher inequality", froelicher_inequality),
    ];
    let mut failed = 0;
    for (n, (title, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {title}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {title}: {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
