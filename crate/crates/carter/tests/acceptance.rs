//! One line per acceptance criterion; exits nonzero if any is red.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use carter::cartan::{self, DEFAULT_TOL};
use carter::diagram::{registry, CarterDiagram};
use carter::enhance::{self, CompletionMode};
use carter::rootsys::{Root, RootSystemType};
use carter::transition::{self, CaseId, TransitionCase};
use carter::weyl::{self, ConjugacyMode, GammaSet, Matching};
use common::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

struct Line {
    passed: bool,
    detail: String,
}

fn line(passed: bool, detail: impl Into<String>) -> Line {
    Line { passed, detail: detail.into() }
}

fn m(rows: &[&[i64]]) -> Mat {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn flipped(case: &TransitionCase, b: &Mat) -> Mat {
    let n = b.len();
    let sign: Vec<i64> =
        case.to_labels().iter().map(|l| if case.target_flips.contains(l) { -1 } else { 1 }).collect();
    (0..n).map(|i| (0..n).map(|j| sign[i] * sign[j] * b[i][j]).collect()).collect()
}

fn c1_catalog() -> Line {
    let start = Instant::now();
    let ids = transition::all_cases(carter::diagram::MAX_D_RANK);
    let mut bad = Vec::new();
    let mut with_flips = Vec::new();
    for id in &ids {
        let case = transition::catalog(*id).expect("case");
        let mm = to_mat(&case.matrix.matrix);
        let n = mm.len();
        let src = to_mat(&case.source_gram().expect("source"));
        let tgt = to_mat(&case.target_gram().expect("target"));
        let inv = mat_mul(&mm, &mm) == identity(n);
        let det = case.matrix.matrix.determinant() == -1;
        let image = mat_mul(&mat_mul(&transpose(&mm), &src), &mm);
        let cong = image == flipped(&case, &tgt);
        if !case.target_flips.is_empty() {
            with_flips.push(format!("{}", id.n));
        }
        if !(inv && det && cong) {
            bad.push(id.to_string());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    with_flips.dedup();
    line(
        bad.is_empty() && secs < 1.0,
        format!(
            "{} matrices, M^2 = I, det -1, M^T B M = D B D with D = I except cases {} ({:.3}s){}",
            ids.len(),
            with_flips.join(","),
            secs,
            if bad.is_empty() { String::new() } else { format!("; failing {}", bad.join(" ")) }
        ),
    )
}

fn c2_worked_example() -> Line {
    let printed_m = m(&[
        &[1, 0, 0, 0, 0, -1],
        &[0, 1, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0, -1],
        &[0, 0, 0, 1, 0, -1],
        &[0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 0, -1],
    ]);
    let printed_b = m(&[
        &[2, 0, 0, -1, 0, 0],
        &[0, 2, 0, -1, -1, 1],
        &[0, 0, 2, -1, 0, -1],
        &[-1, -1, -1, 2, 0, 0],
        &[0, -1, 0, 0, 2, 0],
        &[0, 1, -1, 0, 0, 2],
    ]);
    let printed_product = m(&[
        &[2, 0, 0, -1, 0, -1],
        &[0, 2, 0, -1, -1, 0],
        &[0, 0, 2, -1, 0, 0],
        &[-1, -1, -1, 2, 0, 0],
        &[0, -1, 0, 0, 2, 0],
        &[-1, 0, 0, 0, 0, 2],
    ]);
    let case = transition::catalog(CaseId::new(3)).expect("case 3");
    let stored_m = to_mat(&case.matrix.matrix);
    let stored_b = to_mat(&case.source_gram().expect("E6(a1)"));
    let product = to_mat(&case.matrix.matrix.transpose().checked_mul(&case.source_gram().unwrap()).unwrap().checked_mul(&case.matrix.matrix).unwrap());
    let e6 = to_mat(&case.target_gram().expect("E6"));
    let ok = [stored_m == printed_m, stored_b == printed_b, product == printed_product, product == e6];
    line(ok.iter().all(|&x| x), format!("M {}, B(E6(a1)) {}, M^T B M {}, equals B(E6) {}", ok[0], ok[1], ok[2], ok[3]))
}

fn c3_table6() -> Line {
    let printed = [
        ("E8(a8)", 3.73, 12),
        ("E8(a7)", 3.93, 7),
        ("E8(a5)", 3.956, 6),
        ("E8(a4)", 3.969, 5),
        ("E8(a1)", 3.982, 4),
        ("E8", 3.989, 3),
        ("E8(a2)", 3.975, 5),
        ("E8(a3)", 3.93, 6),
    ];
    let tol = 5e-3;
    let max = |n: &str| cartan::spectrum(&registry().get(n).unwrap().gram(), DEFAULT_TOL).unwrap().max;
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for (name, e, c) in printed {
        let d = registry().get(name).unwrap();
        let x = max(name);
        let oracle = power_max(&to_mat(&d.gram()));
        worst = worst.max((x - e).abs());
        ok &= (x - e).abs() <= tol && (x - oracle).abs() < 1e-8;
        ok &= 2 * square_count(d) + endpoint_count(d) == c && carter::diagram::complexity(d).score == c;
    }
    let a6 = max("E8(a6)");
    ok &= (a6 - 3.902).abs() <= tol;
    let chains: [&[&str]; 2] = [&["E8(a8)", "E8(a7)", "E8(a5)", "E8(a4)", "E8(a1)", "E8"], &["E8(a3)", "E8(a2)", "E8"]];
    let ascending = chains.iter().all(|c| c.windows(2).all(|w| max(w[0]) < max(w[1])));
    ok &= ascending;
    line(ok, format!("9 maxima within 5e-3 (worst {worst:.4}, E8(a6) {a6:.4}), 2N+K exact, chains ascending {ascending}"))
}

fn c4_spectral_interval() -> Line {
    let mut n = 0;
    let mut bad = Vec::new();
    let (mut lo, mut hi) = (f64::MAX, f64::MIN);
    for d in registry().diagrams() {
        n += 1;
        let g = d.gram();
        let s = cartan::spectrum(&g, DEFAULT_TOL).unwrap();
        lo = lo.min(s.eigenvalues[0]);
        hi = hi.max(s.max);
        let inside = s.eigenvalues.iter().all(|&x| x > 0.0005 && x < 3.9995);
        let pd = leading_minors(&to_mat(&g)).iter().all(|&x| x > 0) && cartan::is_positive_definite(&g);
        if !(inside && pd) {
            bad.push(d.name.clone());
        }
    }
    line(bad.is_empty(), format!("{n} diagrams, eigenvalues in [{lo:.4}, {hi:.4}], all minors positive{}", fail_list(&bad)))
}

fn fail_list(v: &[String]) -> String {
    if v.is_empty() {
        String::new()
    } else {
        format!("; failing {}", v.join(" "))
    }
}

// oracle for the minimal root: generate Φ_S by reflections, then the lowest root
// is the unique β in Φ_S with β − α ∉ Φ_S ∪ {0} for every sign-normalized simple α
fn lowest_root_oracle(sub: &[Root], b: &Mat) -> Option<Vec<i64>> {
    let k = sub.len();
    let mut s: Vec<Vec<i64>> = sub.iter().map(|r| r.0.clone()).collect();
    let mut fixed = vec![false; k];
    fixed[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..k {
            if !fixed[j] && ip(b, &s[i], &s[j]) != 0 {
                if ip(b, &s[i], &s[j]) > 0 {
                    s[j] = s[j].iter().map(|x| -x).collect();
                }
                fixed[j] = true;
                stack.push(j);
            }
        }
    }
    let mut phi: BTreeSet<Vec<i64>> = s.iter().cloned().collect();
    loop {
        let mut grew = false;
        for r in phi.clone() {
            for a in &s {
                let x = apply(&reflection(b, a), &r);
                grew |= phi.insert(x);
            }
        }
        if !grew {
            break;
        }
    }
    let lows: Vec<Vec<i64>> = phi
        .iter()
        .filter(|r| {
            s.iter().all(|a| {
                let d: Vec<i64> = r.iter().zip(a).map(|(x, y)| x - y).collect();
                d.iter().any(|&x| x != 0) && !phi.contains(&d)
            })
        })
        .cloned()
        .collect();
    (lows.len() == 1).then(|| lows[0].clone())
}

fn c5_minimal_image() -> Line {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    for id in transition::all_cases(carter::diagram::MAX_D_RANK) {
        count += 1;
        let case = transition::catalog(id).unwrap();
        let r = match transition::verify_realized(&case) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("{id} ({e})"));
                continue;
            }
        };
        let amb = carter::build_root_system(RootSystemType::parse(&r.ambient).unwrap());
        let b = to_mat(amb.cartan());
        let i = case.matrix.affected;
        let mut sub = vec![r.realization.roots[i].clone()];
        for l in &case.dynkin_subset {
            let j = case.from_labels().iter().position(|x| x == l).unwrap();
            if j != i {
                sub.push(r.realization.roots[j].clone());
            }
        }
        let oracle = lowest_root_oracle(&sub, &b);
        let image_gram = weyl::gram(&r.image.roots, &amb);
        let exact = to_mat(&image_gram) == flipped(&case, &to_mat(&case.target_gram().unwrap()));
        let ok = r.ok() && oracle.as_ref() == Some(&r.image.roots[i].0) && exact;
        if !ok {
            bad.push(id.to_string());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    line(bad.is_empty() && secs < 60.0, format!("{count} realized cases, image = lowest root of S, image similar to target ({secs:.2}s){}", fail_list(&bad)))
}

fn c6_chain() -> Line {
    let r = transition::verify_chain().expect("chain");
    let mut detail = format!(
        "F^T B(E8(a8)) F = B(E8) {}, realized image roots {} with Gram = B(E8) {}",
        r.congruent, r.image_are_roots, r.image_gram_is_e8
    );
    if !r.congruent {
        detail.push_str(&format!(
            "; product equals D B(E8) D with D negating {:?}, exact without the trailing flips {}",
            r.residual_flips.clone().unwrap_or_default(),
            r.prefix_congruent
        ));
    }
    line(r.ok(), detail)
}

fn c7_cycle_identity() -> Line {
    let d4 = common::system("D4");
    let mut found = None;
    weyl::for_each_realization(&weyl::cycle_gram(), d4, |t| {
        found = Some(t.to_vec());
        false
    });
    let roots = found.expect("4-cycle in D4");
    let report = weyl::verify_cycle_elimination_identity(&roots, d4).expect("identity");
    // independent recomputation of s_(a1+b1) w_o s_(a1+b1) = w_o~
    let b = to_mat(d4.cartan());
    let s = |v: &[i64]| reflection(&b, v);
    let (a1, b1, a2, b2) = (&roots[0].0, &roots[1].0, &roots[2].0, &roots[3].0);
    let add = |x: &[i64], y: &[i64]| x.iter().zip(y).map(|(p, q)| p + q).collect::<Vec<i64>>();
    let a1b1 = add(a1, b1);
    let neg: Vec<i64> = add(&a1b1, b2).iter().map(|x| -x).collect();
    let prod = |ms: &[Mat]| ms.iter().skip(1).fold(ms[0].clone(), |acc, x| mat_mul(&acc, x));
    let w_o = prod(&[s(a1), s(b1), s(a2), s(b2)]);
    let w_ot = prod(&[s(a1), s(a2), s(&neg), s(b2)]);
    let oracle = prod(&[s(&a1b1), w_o, s(&a1b1)]) == w_ot;
    // M over (a1, b1, a2, b2): b1 ↦ −(a1 + b1 + b2); M² b1 = b1
    let mm = m(&[&[1, -1, 0, 0], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, -1, 0, 1]]);
    let sym = apply(&mat_mul(&mm, &mm), &[0, 1, 0, 0]) == vec![0, 1, 0, 0];
    line(
        report.ok() && oracle && sym,
        format!(
            "{} chain steps exact, oracle {oracle}, M^2 b1 = b1 {sym}, bicolored variant differs {}",
            report.steps.iter().filter(|x| x.1).count(),
            report.bicolored_breaks
        ),
    )
}

fn orbit_pairs(sets: &[GammaSet], group: &[Mat]) -> usize {
    let mut n = 0;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let target: BTreeSet<Vec<i64>> = sets[j].roots.iter().map(|r| r.0.clone()).collect();
            if group.iter().any(|w| sets[i].roots.iter().all(|r| target.contains(&apply(w, &r.0)))) {
                n += 1;
            }
        }
    }
    n
}

fn c8_conjugacy() -> Line {
    let d4 = common::system("D4");
    let group = weyl_group(d4);
    let mut ok = group.len() == 192;
    let mut parts = Vec::new();
    for name in ["D4(a1)", "D4"] {
        let d: &CarterDiagram = registry().get(name).unwrap();
        let sets = weyl::distinct_realizations(d, d4, 20);
        let r = weyl::pairwise_conjugacy(&sets, d4, ConjugacyMode::Exhaustive, Matching::Unordered).unwrap();
        let ordered = weyl::pairwise_conjugacy(&sets, d4, ConjugacyMode::Exhaustive, Matching::Ordered).unwrap();
        let oracle = orbit_pairs(&sets, &group);
        let c = weyl::count_realizations(d, d4).unwrap();
        let integral = c.raw_ratio_is_integer();
        ok &= sets.len() == 20 && r.conjugate == r.pairs && oracle == r.conjugate && integral;
        let [x, y, z] = c.ratios();
        parts.push(format!(
            "{name}: W-conjugate sets {}/{} (oracle {oracle}), ordered {}/{}, up to diagram automorphism {}/{}; counts {}/{}/{} ratios {x}/{y}/{z}",
            r.conjugate,
            r.pairs,
            ordered.conjugate,
            ordered.pairs,
            r.conjugate_up_to_diagram_automorphism.unwrap_or(0),
            r.pairs,
            c.raw,
            c.unordered,
            c.mod_automorphism
        ));
    }
    line(ok, parts.join("; "))
}

fn c9_completion() -> Line {
    let table = [
        ("D4", 1),
        ("D5", 1),
        ("D6", 2),
        ("D7", 2),
        ("D8", 3),
        ("D9", 3),
        ("D10", 4),
        ("E6", 2),
        ("E7", 4),
        ("E8", 8),
    ];
    let mut ok = true;
    let mut got = Vec::new();
    for (t, want) in table {
        let n = enhance::extra_node_count(RootSystemType::parse(t).unwrap()).unwrap();
        ok &= n == want;
        got.push(format!("{t}:{n}"));
    }
    let e6 = common::system("E6");
    let e7 = common::system("E7");
    let vectors = |amb: &carter::RootSystem, t: &str| -> Vec<Vec<i64>> {
        let s = enhance::dynkin_set(amb).unwrap();
        let script = enhance::reference_script(RootSystemType::parse(t).unwrap());
        let e = enhance::complete_scripted(&s, amb, CompletionMode::Maximal, &script).unwrap();
        e.extras.iter().map(|x| x.root.0.clone()).collect()
    };
    // published completion vectors, Bourbaki coordinates
    let e6_printed = vec![vec![0, 1, 1, 2, 1, 0], vec![1, 2, 2, 3, 2, 1]];
    let e7_printed =
        vec![vec![0, 1, 1, 2, 1, 0, 0], vec![1, 2, 2, 3, 2, 1, 0], vec![0, 1, 1, 2, 2, 2, 1], vec![2, 2, 3, 4, 3, 2, 1]];
    let appendix = vectors(e6, "E6") == e6_printed && vectors(e7, "E7") == e7_printed;
    // highest root by brute force: the root of maximal coordinate sum
    let highest = e6.roots().iter().max_by_key(|r| r.0.iter().sum::<i64>()).unwrap();
    let m2_highest = highest.0 == e6_printed[1];
    let mut remark = Vec::new();
    for c in ["E6", "E7", "E8", "D4", "D5", "D6", "D7", "D8", "D9", "D10"] {
        if !enhance::check_remark_correspondence(c).unwrap() {
            remark.push(c.to_string());
        }
    }
    ok &= appendix && m2_highest && remark.is_empty();
    line(ok, format!("extras {}, reference vectors {appendix}, m2(E6) highest {m2_highest}, remark holds for all 10 classes{}", got.join(" "), fail_list(&remark)))
}

fn c10_relations() -> Line {
    let mut ok = true;
    let mut parts = Vec::new();
    let e6 = common::system("E6");
    let b = to_mat(e6.cartan());
    for (name, printed) in [
        ("E6(a1)", vec![("a1", 0), ("a2", 0), ("a3", 0), ("b3~", 0), ("b2", -1), ("m2", 0)]),
        ("E6(a2)", vec![("b3~", 0), ("b2~", 0), ("b1", 0), ("a1", 0), ("a2", 0), ("a3", 1), ("m2", 1)]),
    ] {
        let r = enhance::check_conjecture2_relations(name).unwrap();
        let node = |l: &str| if l == "m2" { r.m2.0.clone() } else { r.realization.root(l).unwrap().0.clone() };
        let all = printed.iter().all(|(l, v)| ip(&b, &r.m1.0, &node(l)) == *v);
        let extra = if name == "E6(a1)" {
            ip(&b, &node("a2"), &node("b2")) == -1 && ip(&b, &r.m1.0, &node("b1")) == 1
        } else {
            true
        };
        ok &= r.ok() && all && extra && e6.contains(&r.m1) && e6.contains(&r.m2);
        parts.push(format!(
            "{name}: {} relations {}, (m1, m2) = {}, greedy completion agrees {}",
            r.relations.len(),
            if r.relations.iter().all(|x| x.holds()) { "hold" } else { "FAIL" },
            ip(&b, &r.m1.0, &r.m2.0),
            r.matches_completion
        ));
    }
    line(ok, parts.join("; "))
}

fn c11_alternatives() -> Line {
    let mut ok = true;
    let mut parts = Vec::new();
    for a in transition::alternative_transitions() {
        let r = transition::verify_alternative(&a).unwrap();
        let src = to_mat(&registry().gram_in("E8(a6)", &a.matrix.from_labels).unwrap());
        let mm = to_mat(&a.matrix.matrix);
        let img = mat_mul(&mat_mul(&transpose(&mm), &src), &mm);
        let sign: Vec<i64> = (0..8).map(|i| if a.flips.contains(&i) { -1 } else { 1 }).collect();
        let img: Mat = (0..8).map(|i| (0..8).map(|j| sign[i] * sign[j] * img[i][j]).collect()).collect();
        let pd = leading_minors(&img).iter().all(|&x| x > 0);
        let target = registry().get(&a.target).unwrap().gram();
        let same_form = r.exact_map.as_ref().is_some_and(|p| {
            (0..8).all(|i| (0..8).all(|j| img[i][j] == target[(p[i], p[j])]))
        });
        let good = r.involution && r.image_valid && pd && same_form;
        ok &= good;
        parts.push(format!("{} [{}] {}", a.target, a.flip_labels.join(","), if good { "exact" } else { "FAIL" }));
    }
    line(ok, parts.join("; "))
}

fn run_prop<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&s, f).map_err(|e| e.to_string())
}

fn c12_properties() -> Line {
    let mut results = Vec::new();
    results.push(("reflection", run_prop(512, (type_strategy(), 0usize..240, 0usize..240, 0usize..240), |(t, i, j, k)| prop_reflection(t, i, j, k))));
    results.push(("negation", run_prop(512, (type_strategy(), 0usize..240), |(t, i)| prop_negation(t, i))));
    let counts = TYPES.iter().all(|t| system(t).roots().len() == expected_root_count(t));
    results.push(("root counts", if counts { Ok(()) } else { Err("count mismatch".into()) }));
    let corpus = corpus_check();
    results.push(("validation corpus", corpus));
    results.push((
        "validation flips",
        run_prop(256, (0usize..64, proptest::collection::vec(any::<bool>(), 10), 0usize..16), |(i, f, e)| prop_validation(i, f, e)),
    ));
    results.push(("json", run_prop(256, (0usize..64, proptest::collection::vec(any::<bool>(), 10)), |(i, f)| prop_json_round_trip(i, f))));
    for t in SMALL_TYPES {
        results.push((
            t,
            run_prop(1000, proptest::collection::vec(0usize..8, 1..40), move |w| prop_char_poly(t, w)),
        ));
    }
    let bad: Vec<String> = results.iter().filter(|(_, r)| r.is_err()).map(|(n, r)| format!("{n}: {}", r.clone().unwrap_err())).collect();
    line(bad.is_empty(), format!("{} suites (char_poly: 1000 conjugators for each of {} types){}", results.len(), SMALL_TYPES.len(), fail_list(&bad)))
}

fn corpus_check() -> Result<(), String> {
    use carter::diagram::{Edge, EdgeSign::*};
    let cyc = |signs: &[carter::diagram::EdgeSign]| {
        let n = signs.len();
        let edges = (0..n).map(|i| Edge { a: i, b: (i + 1) % n, sign: signs[i] }).collect();
        CarterDiagram::new("c", (0..n).map(|i| format!("v{i}")).collect(), edges)
    };
    let invalid = [
        ("odd 3-cycle", cyc(&[Solid, Solid, Dotted])),
        ("odd 5-cycle", cyc(&[Solid, Solid, Solid, Solid, Dotted])),
        ("solid 4-cycle", cyc(&[Solid, Solid, Solid, Solid])),
        ("two dotted 4-cycle", cyc(&[Dotted, Solid, Dotted, Solid])),
    ];
    for (n, d) in &invalid {
        if d.validate().ok() {
            return Err(format!("{n} accepted"));
        }
    }
    if !cyc(&[Solid, Solid, Solid, Dotted]).validate().ok() {
        return Err("D4(a1) 4-cycle rejected".into());
    }
    if let Some(d) = registry().diagrams().find(|d| !d.validate().ok()) {
        return Err(format!("{} rejected", d.name));
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Line); 12] = [
        ("catalog soundness", c1_catalog),
        ("worked example E6(a1) -> E6", c2_worked_example),
        ("eigenvalue table", c3_table6),
        ("spectral interval", c4_spectral_interval),
        ("minimal-image property", c5_minimal_image),
        ("chain composition E8(a8) -> E8", c6_chain),
        ("cycle elimination identity", c7_cycle_identity),
        ("conjugacy in W(D4)", c8_conjugacy),
        ("completion procedure", c9_completion),
        ("enhanced E6(a1), E6(a2) relations", c10_relations),
        ("alternative transitions from E8(a6)", c11_alternatives),
        ("property suites", c12_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let l = f();
        if !l.passed {
            failed += 1;
        }
        println!("criterion {:>2} {} {name}: {}", i + 1, if l.passed { "PASS" } else { "FAIL" }, l.detail);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
