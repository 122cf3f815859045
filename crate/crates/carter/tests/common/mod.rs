//! Independent oracles and property bodies shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use carter::cli::DiagramDocument;
use carter::diagram::{registry, CarterDiagram, EdgeSign};
use carter::rootsys::{build_root_system, Root, RootSystem, RootSystemType};
use carter::weyl::{char_poly, WeylElement};
use carter::IntMatrix;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const TYPES: [&str; 16] =
    ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8"];

/// Types of rank at most 6.
pub const SMALL_TYPES: [&str; 10] = ["A1", "A2", "A3", "A4", "A5", "A6", "D4", "D5", "D6", "E6"];

pub fn system(name: &str) -> &'static RootSystem {
    static ALL: OnceLock<Vec<RootSystem>> = OnceLock::new();
    let all = ALL.get_or_init(|| TYPES.iter().map(|t| build_root_system(RootSystemType::parse(t).unwrap())).collect());
    let i = TYPES.iter().position(|t| *t == name).expect("known type");
    &all[i]
}

/// n(n+1), 2n(n−1), 72, 126, 240.
pub fn expected_root_count(name: &str) -> usize {
    let n: usize = name[1..].parse().unwrap();
    match &name[..1] {
        "A" => n * (n + 1),
        "D" => 2 * n * (n - 1),
        _ => [72, 126, 240][n - 6],
    }
}

pub type Mat = Vec<Vec<i64>>;

pub fn to_mat(m: &IntMatrix) -> Mat {
    m.to_rows()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

pub fn transpose(a: &Mat) -> Mat {
    (0..a[0].len()).map(|j| (0..a.len()).map(|i| a[i][j]).collect()).collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn ip(b: &Mat, u: &[i64], v: &[i64]) -> i64 {
    let n = u.len();
    (0..n).map(|i| (0..n).map(|j| u[i] * b[i][j] * v[j]).sum::<i64>()).sum()
}

/// s_m as a matrix on coordinates: I − m·(Bm)ᵀ.
pub fn reflection(b: &Mat, m: &[i64]) -> Mat {
    let n = m.len();
    let bm: Vec<i64> = (0..n).map(|i| (0..n).map(|j| b[i][j] * m[j]).sum()).collect();
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j) - m[i] * bm[j]).collect()).collect()
}

pub fn apply(w: &Mat, v: &[i64]) -> Vec<i64> {
    w.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Leading principal minors by fraction-free elimination.
pub fn leading_minors(a: &Mat) -> Vec<i128> {
    let n = a.len();
    let mut out = Vec::new();
    for k in 1..=n {
        let mut m: Vec<Vec<i128>> = (0..k).map(|i| (0..k).map(|j| a[i][j] as i128).collect()).collect();
        let mut prev = 1i128;
        let mut det = None;
        for p in 0..k {
            if m[p][p] == 0 {
                match (p + 1..k).find(|&r| m[r][p] != 0) {
                    Some(r) => {
                        m.swap(p, r);
                        for x in m[p].iter_mut() {
                            *x = -*x;
                        }
                    }
                    None => {
                        det = Some(0);
                        break;
                    }
                }
            }
            for i in p + 1..k {
                for j in p + 1..k {
                    m[i][j] = (m[i][j] * m[p][p] - m[i][p] * m[p][j]) / prev;
                }
            }
            prev = m[p][p];
        }
        out.push(det.unwrap_or(m[k - 1][k - 1]));
    }
    out
}

/// Characteristic polynomial det(tI − A), ascending, by Faddeev–LeVerrier.
pub fn faddeev(a: &Mat) -> Vec<i64> {
    let n = a.len();
    let mut c = vec![0i64; n + 1];
    c[n] = 1;
    let mut m = vec![vec![0i64; n]; n];
    for k in 1..=n {
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += c[n - k + 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        let tr: i64 = (0..n).map(|i| am[i][i]).sum();
        c[n - k] = -tr / k as i64;
    }
    c
}

/// All of W(ambient) by BFS over simple reflections.
pub fn weyl_group(ambient: &RootSystem) -> Vec<Mat> {
    let b = to_mat(ambient.cartan());
    let n = b.len();
    let gens: Vec<Mat> = (0..n).map(|i| reflection(&b, &Root::simple(n, i).0)).collect();
    let mut seen: HashSet<Mat> = HashSet::from([identity(n)]);
    let mut queue = VecDeque::from([identity(n)]);
    let mut out = vec![identity(n)];
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let x = mat_mul(g, &w);
            if seen.insert(x.clone()) {
                out.push(x.clone());
                queue.push_back(x);
            }
        }
    }
    out
}

/// Number of induced 4-cycles.
pub fn square_count(d: &CarterDiagram) -> usize {
    let n = d.nodes.len();
    let adj = |a: usize, b: usize| d.edges.iter().any(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a));
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for e in c + 1..n {
                    for q in [[a, b, c, e], [a, b, e, c], [a, c, b, e]] {
                        let ring = (0..4).all(|i| adj(q[i], q[(i + 1) % 4]));
                        if ring && !adj(q[0], q[2]) && !adj(q[1], q[3]) {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    count
}

pub fn endpoint_count(d: &CarterDiagram) -> usize {
    (0..d.nodes.len()).filter(|&i| d.edges.iter().filter(|e| e.a == i || e.b == i).count() == 1).count()
}

/// Largest eigenvalue of a positive definite matrix by power iteration on B.
pub fn power_max(b: &Mat) -> f64 {
    let n = b.len();
    let mut v = vec![1.0f64; n];
    let mut lambda = 0.0;
    for _ in 0..20000 {
        let w: Vec<f64> = (0..n).map(|i| (0..n).map(|j| b[i][j] as f64 * v[j]).sum()).collect();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let next: Vec<f64> = w.iter().map(|x| x / norm).collect();
        let bv: Vec<f64> = (0..n).map(|i| (0..n).map(|j| b[i][j] as f64 * next[j]).sum()).collect();
        let l: f64 = bv.iter().zip(&next).map(|(a, b)| a * b).sum();
        if (l - lambda).abs() < 1e-14 {
            return l;
        }
        lambda = l;
        v = next;
    }
    lambda
}

pub fn type_strategy() -> impl Strategy<Value = &'static str> {
    proptest::sample::select(TYPES.to_vec())
}

pub fn small_type_strategy() -> impl Strategy<Value = &'static str> {
    proptest::sample::select(SMALL_TYPES.to_vec())
}

/// s_m is an involution and an isometry, and maps roots to roots.
pub fn prop_reflection(t: &str, i: usize, j: usize, k: usize) -> Result<(), TestCaseError> {
    let amb = system(t);
    let roots = amb.roots();
    let (m, v, w) = (&roots[i % roots.len()], &roots[j % roots.len()], &roots[k % roots.len()]);
    let b = to_mat(amb.cartan());
    let s = reflection(&b, &m.0);
    let sv = apply(&s, &v.0);
    let sw = apply(&s, &w.0);
    prop_assert_eq!(apply(&s, &sv), v.0.clone());
    prop_assert_eq!(ip(&b, &sv, &sw), ip(&b, &v.0, &w.0));
    prop_assert!(amb.contains(&Root(sv.clone())));
    prop_assert_eq!(apply(&s, &m.0), m.neg().0);
    let lib = carter::rootsys::reflect(v, m, amb.cartan()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(lib.0, sv);
    Ok(())
}

pub fn prop_negation(t: &str, i: usize) -> Result<(), TestCaseError> {
    let amb = system(t);
    let r = &amb.roots()[i % amb.roots().len()];
    prop_assert!(amb.contains(&r.neg()));
    prop_assert_eq!(ip(&to_mat(amb.cartan()), &r.0, &r.0), 2);
    Ok(())
}

fn registry_list() -> Vec<&'static CarterDiagram> {
    registry().diagrams().collect()
}

/// Node flips keep a diagram valid; flipping one edge of a cycle breaks it.
pub fn prop_validation(idx: usize, flips: Vec<bool>, edge: usize) -> Result<(), TestCaseError> {
    let all = registry_list();
    let d = all[idx % all.len()];
    let mut x = d.clone();
    for (i, f) in flips.iter().enumerate().take(d.nodes.len()) {
        if *f {
            x = x.flip(i);
        }
    }
    prop_assert!(x.validate().ok(), "{} flipped", d.name);
    let cycles = d.chordless_cycles();
    if let Some(c) = cycles.first() {
        let i = edge % c.len();
        let (a, b) = (c[i], c[(i + 1) % c.len()]);
        let mut y = d.clone();
        for e in y.edges.iter_mut() {
            if (e.a == a && e.b == b) || (e.a == b && e.b == a) {
                e.sign = e.sign.flipped();
            }
        }
        prop_assert!(!y.validate().ok(), "{} with edge {a}-{b} flipped", d.name);
    }
    Ok(())
}

pub fn prop_json_round_trip(idx: usize, flips: Vec<bool>) -> Result<(), TestCaseError> {
    let all = registry_list();
    let mut d = all[idx % all.len()].clone();
    for (i, f) in flips.iter().enumerate().take(d.nodes.len()) {
        if *f {
            d = d.flip(i);
        }
    }
    let doc = DiagramDocument::from_diagram(&d);
    let text = doc.to_json();
    let back = DiagramDocument::parse(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(back.to_json(), text);
    prop_assert_eq!(back.to_diagram().map_err(|e| TestCaseError::fail(e.to_string()))?, d);
    Ok(())
}

/// Coxeter element c = s_1⋯s_n, conjugated by the word `g`.
pub fn prop_char_poly(t: &str, word: Vec<usize>) -> Result<(), TestCaseError> {
    let amb = system(t);
    let n = amb.rank();
    let b = amb.cartan();
    let simple = |i: usize| WeylElement::reflection(&Root::simple(n, i % n), b).unwrap();
    let c = WeylElement::product(&(0..n).map(simple).collect::<Vec<_>>(), n);
    let g = WeylElement::product(&word.iter().map(|&i| simple(i)).collect::<Vec<_>>(), n);
    let conj = c.conjugate_by(&g);
    let p = char_poly(&conj.matrix);
    prop_assert_eq!(&p, &char_poly(&c.matrix));
    prop_assert_eq!(p, faddeev(&to_mat(&conj.matrix)));
    Ok(())
}

pub fn is_dotted(e: EdgeSign) -> bool {
    e == EdgeSign::Dotted
}
