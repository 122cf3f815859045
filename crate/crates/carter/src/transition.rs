//! Transition matrices M_I between homogeneous pairs, similarity flips and chains.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan;
use crate::diagram::{self, registry, signed_isomorphism, CarterDiagram};
use crate::error::CarterError;
use crate::matrix::IntMatrix;
use crate::rootsys::{build_root_system, extremal_root, Extremal, Root, RootSystem, RootSystemType};
use crate::weyl::{gram, realize_diagram, GammaSet};

/// Case number; `l` and `k` are used by case 2 only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseId {
    pub n: u8,
    pub l: usize,
    pub k: usize,
}

impl CaseId {
    pub fn new(n: u8) -> Self {
        CaseId { n, l: 0, k: 0 }
    }

    pub fn d(l: usize, k: usize) -> Self {
        CaseId { n: 2, l, k }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 2 {
            write!(f, "(2) l={} k={}", self.l, self.k)
        } else {
            write!(f, "({})", self.n)
        }
    }
}

/// Identity except for one column, over labeled bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionMatrix {
    pub matrix: IntMatrix,
    pub from_labels: Vec<String>,
    pub to_labels: Vec<String>,
    pub affected: usize,
}

impl TransitionMatrix {
    pub fn new(from_labels: Vec<String>, to_labels: Vec<String>, affected: usize, column: &[i64]) -> Result<Self, CarterError> {
        let n = from_labels.len();
        if to_labels.len() != n || column.len() != n || affected >= n {
            return Err(CarterError::Dimension(format!("transition over {n} labels with column of {}", column.len())));
        }
        Ok(TransitionMatrix {
            matrix: IntMatrix::identity_with_column(n, affected, column),
            from_labels,
            to_labels,
            affected,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn column(&self) -> Vec<i64> {
        self.matrix.column(self.affected)
    }

    /// Columns other than `affected` are those of the identity.
    pub fn single_column(&self) -> bool {
        let n = self.dim();
        (0..n).filter(|&j| j != self.affected).all(|j| (0..n).all(|i| self.matrix[(i, j)] == i64::from(i == j)))
    }

    pub fn determinant(&self) -> i128 {
        self.matrix.determinant()
    }
}

pub fn verify_involution(m: &IntMatrix) -> bool {
    m.is_square() && (m * m) == IntMatrix::identity(m.rows())
}

/// diag(1, …, −1, …, 1)
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilarityMatrix {
    pub dim: usize,
    pub index: usize,
}

impl SimilarityMatrix {
    pub fn matrix(&self) -> IntMatrix {
        let mut d = vec![1; self.dim];
        d[self.index] = -1;
        IntMatrix::diagonal(&d)
    }
}

pub fn flip_matrix(n: usize, flips: &[usize]) -> IntMatrix {
    let mut d = vec![1; n];
    for &i in flips {
        d[i] = -d[i];
    }
    IntMatrix::diagonal(&d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionCase {
    pub id: CaseId,
    /// (Γ̃, Γ)
    pub pair: (String, String),
    pub matrix: TransitionMatrix,
    /// Coefficients tᵢ of the moved root over the source basis.
    pub moved_root_formula: Vec<i64>,
    /// Labels of S(α̃), the support of the moved column.
    pub dynkin_subset: Vec<String>,
    /// Dynkin type of S(α̃) as named for the case.
    pub subset_type: String,
    /// Similarity flips applied to the target after M_I, in target labels.
    pub target_flips: Vec<String>,
    pub eliminated_edges: Vec<(String, String)>,
    pub emerging_edges: Vec<(String, String)>,
    /// Renaming of case labels to registry labels (case 2 with l = 4 only).
    pub alias: Vec<(String, String)>,
}

impl TransitionCase {
    pub fn to_labels(&self) -> &[String] {
        &self.matrix.to_labels
    }

    pub fn from_labels(&self) -> &[String] {
        &self.matrix.from_labels
    }

    fn flip_positions(&self) -> Vec<usize> {
        self.target_flips
            .iter()
            .map(|l| self.to_labels().iter().position(|t| t == l).expect("flip label in target basis"))
            .collect()
    }

    pub fn flips(&self) -> IntMatrix {
        flip_matrix(self.matrix.dim(), &self.flip_positions())
    }

    /// D·B·D for the target form B given in `to_labels` order.
    pub fn flipped_target(&self, target: &IntMatrix) -> IntMatrix {
        let d = self.flips();
        &(&d * target) * &d
    }

    /// Mᵀ·(D·B·D)·M; M is an involution so this inverts the congruence.
    pub fn source_form(&self, target: &IntMatrix) -> Result<IntMatrix, CarterError> {
        self.flipped_target(target).congruent(&self.matrix.matrix)
    }

    fn registry_labels(&self, labels: &[String]) -> Vec<String> {
        labels
            .iter()
            .map(|l| self.alias.iter().find(|(a, _)| a == l).map_or_else(|| l.clone(), |(_, b)| b.clone()))
            .collect()
    }

    pub fn source_gram(&self) -> Result<IntMatrix, CarterError> {
        registry().gram_in(&self.pair.0, &self.registry_labels(self.from_labels()))
    }

    pub fn target_gram(&self) -> Result<IntMatrix, CarterError> {
        registry().gram_in(&self.pair.1, &self.registry_labels(self.to_labels()))
    }

    pub fn source_diagram(&self) -> Result<CarterDiagram, CarterError> {
        CarterDiagram::from_gram(&self.pair.0, self.from_labels().to_vec(), &self.source_gram()?)
    }

    pub fn moved_label(&self) -> (&str, &str) {
        let i = self.matrix.affected;
        (&self.from_labels()[i], &self.to_labels()[i])
    }
}

pub const CASE_COUNT: u8 = 16;

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

const E6_LABELS: [&str; 6] = ["a1", "a2", "a3", "b1", "b2", "b3"];
const E7_LABELS: [&str; 7] = ["a1", "a2", "a3", "b1", "b2", "b3", "b4"];
const E8_LABELS: [&str; 8] = ["a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"];

fn form(labels: &[String], edges: &[(&str, &str)]) -> IntMatrix {
    let n = labels.len();
    let mut b = IntMatrix::zeros(n, n);
    for i in 0..n {
        b[(i, i)] = 2;
    }
    let ix = |s: &str| labels.iter().position(|l| l == s).expect("edge label");
    for (x, y) in edges {
        let (i, j) = (ix(x), ix(y));
        b[(i, j)] = -1;
        b[(j, i)] = -1;
    }
    b
}

fn d_labels(l: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..l).map(|i| format!("t{i}")).collect();
    v.push("b".into());
    v
}

/// Dynkin diagrams of every class in the catalog's labelings.
pub fn dynkin_bases(max_d: usize) -> Vec<(String, Vec<String>, IntMatrix)> {
    let mut out = Vec::new();
    let d4 = labels(&["a1", "a2", "a3", "a4"]);
    let g = form(&d4, &[("a2", "a1"), ("a2", "a3"), ("a2", "a4")]);
    out.push(("D4".to_string(), d4, g));
    for l in 5..=max_d {
        let lab = d_labels(l);
        out.push((format!("D{l}"), lab.clone(), d_form(l)));
    }
    let e6 = labels(&E6_LABELS);
    let g6 = form(&e6, &[("b1", "a1"), ("b1", "a2"), ("b1", "a3"), ("a1", "b3"), ("a2", "b2")]);
    out.push(("E6".into(), e6, g6));
    let e7_edges = [("a2", "b3"), ("a2", "b2"), ("b2", "a3"), ("a2", "b1"), ("b1", "a1"), ("a1", "b4")];
    let e7 = labels(&E7_LABELS);
    let g7 = form(&e7, &e7_edges);
    out.push(("E7".into(), e7, g7));
    let e8 = labels(&E8_LABELS);
    let mut e8_edges = e7_edges.to_vec();
    e8_edges.push(("b4", "a4"));
    let g8 = form(&e8, &e8_edges);
    out.push(("E8".into(), e8, g8));
    out
}

// path t1..t_{l-1} with b attached to t2
fn d_form(l: usize) -> IntMatrix {
    let lab = d_labels(l);
    let names: Vec<(String, String)> = (1..l - 1)
        .map(|i| (format!("t{i}"), format!("t{}", i + 1)))
        .chain(std::iter::once(("t2".to_string(), "b".to_string())))
        .collect();
    let refs: Vec<(&str, &str)> = names.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    form(&lab, &refs)
}

/// Order in which registry members are derived from their targets.
pub fn derivation_order(max_d: usize) -> Vec<CaseId> {
    let mut v = vec![CaseId::new(1)];
    for l in 5..=max_d {
        for k in 1..=(l - 2) / 2 {
            v.push(CaseId::d(l, k));
        }
    }
    v.extend((3..=CASE_COUNT).map(CaseId::new));
    v
}

/// Every concrete case with case 2 swept over l ∈ 4..=max_d.
pub fn all_cases(max_d: usize) -> Vec<CaseId> {
    let mut v = vec![CaseId::new(1)];
    for l in 4..=max_d {
        for k in 1..=(l - 2) / 2 {
            v.push(CaseId::d(l, k));
        }
    }
    v.extend((3..=CASE_COUNT).map(CaseId::new));
    v
}

pub fn pair_names(n: u8) -> (String, String) {
    let (a, b) = match n {
        1 => ("D4(a1)", "D4"),
        2 => ("Dl(ak)", "Dl"),
        3 => ("E6(a1)", "E6"),
        4 => ("E6(a2)", "E6(a1)"),
        5 => ("E7(a1)", "E7"),
        6 => ("E7(a2)", "E7"),
        7 => ("E7(a3)", "E7(a1)"),
        8 => ("E7(a4)", "E7(a3)"),
        9 => ("E8(a1)", "E8"),
        10 => ("E8(a2)", "E8"),
        11 => ("E8(a3)", "E8(a2)"),
        12 => ("E8(a4)", "E8(a1)"),
        13 => ("E8(a5)", "E8(a4)"),
        14 => ("E8(a6)", "E8(a4)"),
        15 => ("E8(a7)", "E8(a5)"),
        _ => ("E8(a8)", "E8(a7)"),
    };
    (a.to_string(), b.to_string())
}

struct Raw {
    src: &'static [&'static str],
    tgt: &'static [&'static str],
    col: usize,
    coeffs: &'static [i64],
    flips: &'static [&'static str],
    subset_type: &'static str,
}

const E8_A3: &[&str] = &["a1~", "a2", "a3", "a4~", "b1", "b2", "b3", "b4"];
const E8_A4: &[&str] = &["a1", "a2", "a3~", "a4~", "b1", "b2", "b3", "b4"];
const E8_A5: &[&str] = &["a1", "a2", "a3~", "a4~", "b1", "b2", "b3", "b4~"];
const E8_A7: &[&str] = &["a1~", "a2", "a3~", "a4~", "b1", "b2", "b3", "b4~"];

fn raw(n: u8) -> Raw {
    match n {
        1 => Raw {
            src: &["a1", "a2", "a3~", "a4"],
            tgt: &["a1", "a2", "a3", "a4"],
            col: 2,
            coeffs: &[-1, -1, -1, 0],
            flips: &[],
            subset_type: "A3",
        },
        3 => Raw {
            src: &["a1", "a2", "a3", "b1", "b2", "b3~"],
            tgt: &E6_LABELS,
            col: 5,
            coeffs: &[-1, 0, -1, -1, 0, -1],
            flips: &[],
            subset_type: "A4",
        },
        4 => Raw {
            src: &["a1", "a2", "a3", "b1", "b2~", "b3~"],
            tgt: &["a1", "a2", "a3", "b1", "b2", "b3~"],
            col: 4,
            coeffs: &[0, -1, -1, -1, -1, 0],
            flips: &[],
            subset_type: "A4",
        },
        5 => Raw {
            src: &["a1", "a2", "a3~", "b1", "b2", "b3", "b4"],
            tgt: &E7_LABELS,
            col: 2,
            coeffs: &[0, -1, -1, 0, -1, -1, 0],
            flips: &[],
            subset_type: "A4",
        },
        6 => Raw {
            src: &["a1~", "a2", "a3", "b1", "b2", "b3", "b4"],
            tgt: &E7_LABELS,
            col: 0,
            coeffs: &[-1, -1, 0, -1, 0, -1, 0],
            flips: &[],
            subset_type: "A4",
        },
        7 => Raw {
            src: &["a1", "a2", "a3~", "a4", "b1", "b2", "b3"],
            tgt: &["a1", "a2", "a3~", "b4", "b1", "b2", "b3"],
            col: 3,
            coeffs: &[-1, -1, 0, -1, -1, 0, -1],
            flips: &[],
            subset_type: "A5",
        },
        8 => Raw {
            src: &["a1~", "a2", "a3~", "a4", "b1", "b2", "b3"],
            tgt: &["a1", "a2", "a3~", "a4", "b1", "b2", "b3"],
            col: 0,
            coeffs: &[-1, -1, -1, 0, -2, 0, 0],
            flips: &["a3~"],
            subset_type: "D4",
        },
        9 => Raw {
            src: &["a1", "a2", "a3~", "a4", "b1", "b2", "b3", "b4"],
            tgt: &E8_LABELS,
            col: 2,
            coeffs: &[0, -1, -1, 0, 0, -1, -1, 0],
            flips: &[],
            subset_type: "A4",
        },
        10 => Raw {
            src: &["a1~", "a2", "a3", "a4", "b1", "b2", "b3", "b4"],
            tgt: &E8_LABELS,
            col: 0,
            coeffs: &[-1, -1, 0, 0, -1, 0, -1, 0],
            flips: &["a4", "b4"],
            subset_type: "A4",
        },
        11 => Raw {
            src: E8_A3,
            tgt: &["a1~", "a2", "a3", "a4", "b1", "b2", "b3", "b4"],
            col: 3,
            coeffs: &[-3, 0, -1, -1, 0, -2, -2, -2],
            flips: &["b2", "a3"],
            subset_type: "E6",
        },
        12 => Raw {
            src: E8_A4,
            tgt: &["a1", "a2", "a3~", "a4", "b1", "b2", "b3", "b4"],
            col: 3,
            coeffs: &[-1, -1, 0, -1, -1, 0, -1, -1],
            flips: &[],
            subset_type: "A6",
        },
        13 => Raw {
            src: E8_A5,
            tgt: E8_A4,
            col: 7,
            coeffs: &[-1, -1, 0, -1, -1, 0, -1, -1],
            flips: &[],
            subset_type: "A6",
        },
        14 => Raw {
            src: E8_A5,
            tgt: E8_A4,
            col: 7,
            coeffs: &[-2, -2, 0, 0, -2, -1, -1, -1],
            flips: &[],
            subset_type: "D6",
        },
        15 => Raw {
            src: E8_A7,
            tgt: E8_A5,
            col: 0,
            coeffs: &[-1, -1, -1, 0, -2, 0, 0, 0],
            flips: &["a3~"],
            subset_type: "D4",
        },
        _ => Raw {
            src: &["a1~", "a2", "a3~", "a4~", "b1", "b2", "b3", "b4"],
            tgt: E8_A7,
            col: 7,
            coeffs: &[0, 0, 0, -2, 0, -1, -1, -1],
            flips: &["b2"],
            subset_type: "D4",
        },
    }
}

fn d_case(l: usize, k: usize) -> Result<TransitionCase, CarterError> {
    if l < 4 || k < 1 || k > (l - 2) / 2 {
        return Err(CarterError::CaseRange(format!("D{l}(a{k})")));
    }
    let mut src: Vec<String> = (1..l).map(|i| format!("t{i}")).collect();
    src.push(format!("t{}~", k + 1));
    let tgt = d_labels(l);
    let mut col = vec![0i64; l];
    col[0] = -1;
    for c in col.iter_mut().take(k).skip(1) {
        *c = -2;
    }
    col[k] = -1;
    col[l - 1] = -1;
    let subset_type = if k == 1 { "A3".to_string() } else { format!("D{}", k + 2) };
    let alias = if l == 4 {
        [("t1", "a1"), ("t2", "a2"), ("t2~", "a3~"), ("t3", "a4"), ("b", "a3")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    } else {
        Vec::new()
    };
    finish(CaseId::d(l, k), (format!("D{l}(a{k})"), format!("D{l}")), src, tgt, l - 1, &col, &[], subset_type, alias)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    id: CaseId,
    pair: (String, String),
    src: Vec<String>,
    tgt: Vec<String>,
    col: usize,
    coeffs: &[i64],
    flips: &[&str],
    subset_type: String,
    alias: Vec<(String, String)>,
) -> Result<TransitionCase, CarterError> {
    let dynkin_subset = src.iter().zip(coeffs).filter(|(_, &c)| c != 0).map(|(l, _)| l.clone()).collect();
    let matrix = TransitionMatrix::new(src, tgt, col, coeffs)?;
    Ok(TransitionCase {
        id,
        pair,
        matrix,
        moved_root_formula: coeffs.to_vec(),
        dynkin_subset,
        subset_type,
        target_flips: labels(flips),
        eliminated_edges: Vec::new(),
        emerging_edges: Vec::new(),
        alias,
    })
}

/// Catalog entry for a case, with the edges eliminated and created at the moved node.
pub fn catalog(id: CaseId) -> Result<TransitionCase, CarterError> {
    let mut case = catalog_raw(id)?;
    let rel = verify_edge_relations(&case)?;
    case.eliminated_edges = rel.eliminated_edges;
    case.emerging_edges = rel.emerging_edges;
    Ok(case)
}

/// Catalog entry without registry-dependent fields.
pub(crate) fn catalog_raw(id: CaseId) -> Result<TransitionCase, CarterError> {
    if id.n == 2 {
        return d_case(id.l, id.k);
    }
    if id.n == 0 || id.n > CASE_COUNT {
        return Err(CarterError::CaseRange(format!("case {}", id.n)));
    }
    let r = raw(id.n);
    finish(id, pair_names(id.n), labels(r.src), labels(r.tgt), r.col, r.coeffs, r.flips, r.subset_type.to_string(), Vec::new())
}

/// Per-case verification record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: CaseId,
    pub involution: bool,
    pub determinant: i128,
    pub single_column: bool,
    pub congruence: bool,
    pub congruence_without_flips: bool,
    pub formula_matches_column: bool,
    pub subset_type_matches: bool,
    pub computed_subset_type: String,
}

impl CaseReport {
    pub fn ok(&self) -> bool {
        self.involution
            && self.determinant == -1
            && self.single_column
            && self.congruence
            && self.formula_matches_column
            && self.subset_type_matches
    }
}

/// Involution, determinant, congruence with the registry and formula agreement.
pub fn verify_case(case: &TransitionCase) -> Result<CaseReport, CarterError> {
    let m = &case.matrix.matrix;
    let src = case.source_gram()?;
    let tgt = case.target_gram()?;
    let image = src.congruent(m)?;
    let sub_ix: Vec<usize> = case.dynkin_subset.iter().map(|l| case.from_labels().iter().position(|x| x == l).expect("subset label")).collect();
    let computed = dynkin_type(&src.permuted(&sub_ix)).unwrap_or_else(|| "not Dynkin".into());
    Ok(CaseReport {
        id: case.id,
        involution: verify_involution(m),
        determinant: m.determinant(),
        single_column: case.matrix.single_column(),
        congruence: image == case.flipped_target(&tgt),
        congruence_without_flips: cartan::congruence_check(m, &src, &tgt)?,
        formula_matches_column: case.matrix.column() == case.moved_root_formula,
        subset_type_matches: computed == case.subset_type,
        computed_subset_type: computed,
    })
}

/// Dynkin type of a connected positive definite form with a tree graph.
pub fn dynkin_type(g: &IntMatrix) -> Option<String> {
    let n = g.rows();
    if !cartan::is_positive_definite(g) {
        return None;
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| j != i && g[(i, j)] != 0).collect()).collect();
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if edges + 1 != n {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&i| adj[i].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some(format!("A{n}")),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&s| {
                    let (mut prev, mut cur, mut len) = (*c, s, 1);
                    while adj[cur].len() == 2 {
                        let nxt = adj[cur].iter().copied().find(|&x| x != prev).expect("path");
                        prev = cur;
                        cur = nxt;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(format!("D{n}")),
                [1, 2, 2..=4] => Some(format!("E{n}")),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Inner products of the image root against the other basis roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRelations {
    pub id: CaseId,
    pub moved: String,
    pub image: String,
    /// (label, computed (image, label), expected entry of the flipped target)
    pub relations: Vec<(String, i64, i64)>,
    pub eliminated_edges: Vec<(String, String)>,
    pub emerging_edges: Vec<(String, String)>,
    pub target_similar: bool,
}

impl EdgeRelations {
    pub fn ok(&self) -> bool {
        self.target_similar && self.relations.iter().all(|(_, a, b)| a == b)
    }
}

/// Recomputes (M_I α̃, τ) from the source form and compares with the target.
pub fn verify_edge_relations(case: &TransitionCase) -> Result<EdgeRelations, CarterError> {
    let src = case.source_gram()?;
    let tgt = case.flipped_target(&case.target_gram()?);
    let i = case.matrix.affected;
    let col = case.matrix.column();
    let n = src.rows();
    let from = case.from_labels();
    let mut relations = Vec::new();
    for j in (0..n).filter(|&j| j != i) {
        let e_j: Vec<i64> = (0..n).map(|t| i64::from(t == j)).collect();
        relations.push((from[j].clone(), src.bilinear(&col, &e_j), tgt[(i, j)]));
    }
    let mut eliminated = Vec::new();
    let mut emerging = Vec::new();
    for j in (0..n).filter(|&j| j != i) {
        match (src[(i, j)] != 0, tgt[(i, j)] != 0) {
            (true, false) => eliminated.push((from[i].clone(), from[j].clone())),
            (false, true) => emerging.push((case.to_labels()[i].clone(), from[j].clone())),
            _ => {}
        }
    }
    let image = src.congruent(&case.matrix.matrix)?;
    let target_similar = signed_isomorphism(&image, &case.target_gram()?, true).is_some();
    Ok(EdgeRelations {
        id: case.id,
        moved: from[i].clone(),
        image: case.to_labels()[i].clone(),
        relations,
        eliminated_edges: eliminated,
        emerging_edges: emerging,
        target_similar,
    })
}

/// Replaces each root by the combination given by the matrix column.
pub fn apply_matrix(m: &IntMatrix, roots: &[Root], ambient: &RootSystem) -> Result<Vec<Root>, CarterError> {
    if m.rows() != roots.len() {
        return Err(CarterError::Dimension(format!("{}x{} matrix on {} roots", m.rows(), m.cols(), roots.len())));
    }
    (0..m.cols())
        .map(|j| {
            let r = Root::combination(&m.column(j), roots);
            if ambient.contains(&r) {
                Ok(r)
            } else {
                Err(CarterError::ImageNotRoot(r.0))
            }
        })
        .collect()
}

/// M_I applied to a realized source set.
pub fn apply(m: &TransitionMatrix, s: &GammaSet, ambient: &RootSystem) -> Result<GammaSet, CarterError> {
    if s.labels() != m.from_labels.as_slice() {
        return Err(CarterError::LabelMismatch(format!("{:?} vs {:?}", s.labels(), m.from_labels)));
    }
    let roots = apply_matrix(&m.matrix, &s.roots, ambient)?;
    GammaSet::from_roots("image", m.to_labels.clone(), roots, ambient)
}

/// L_i: negates root i.
pub fn apply_similarity(l: &SimilarityMatrix, s: &GammaSet, ambient: &RootSystem) -> Result<GammaSet, CarterError> {
    let roots = apply_matrix(&l.matrix(), &s.roots, ambient)?;
    GammaSet::from_roots(&s.diagram.name, s.labels().to_vec(), roots, ambient)
}

/// M_I(α̃) equals the minimal root of the realized S(α̃).
pub fn verify_minimal_image(case: &TransitionCase, realization: &GammaSet, ambient: &RootSystem) -> Result<bool, CarterError> {
    if realization.labels() != case.from_labels() {
        return Err(CarterError::LabelMismatch(format!("realization labels {:?}", realization.labels())));
    }
    let g = realization.gram(ambient);
    if g != case.source_gram()? {
        return Err(CarterError::InvalidGammaSet(format!("realization does not realize {}", case.pair.0)));
    }
    let i = case.matrix.affected;
    let image = Root::combination(&case.matrix.column(), &realization.roots);
    // moved root first, so sign normalization keeps its orientation
    let mut sub = vec![realization.roots[i].clone()];
    for l in &case.dynkin_subset {
        let j = case.from_labels().iter().position(|x| x == l).expect("subset label");
        if j != i {
            sub.push(realization.roots[j].clone());
        }
    }
    let lowest = extremal_root(&sub, ambient, Extremal::Minimal)?;
    Ok(lowest == image)
}

/// Ambient system of minimal rank containing the pair.
pub fn ambient_type(case: &TransitionCase) -> Result<RootSystemType, CarterError> {
    RootSystemType::parse(diagram::class_of(&case.pair.1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizedCheck {
    pub id: CaseId,
    pub ambient: String,
    pub realization: GammaSet,
    pub image: GammaSet,
    pub minimal_image: bool,
    /// The image diagram is similar to the registry target.
    pub image_similar: bool,
}

impl RealizedCheck {
    pub fn ok(&self) -> bool {
        self.minimal_image && self.image_similar
    }
}

/// Realizes the source diagram, applies M_I and checks the image.
pub fn verify_realized(case: &TransitionCase) -> Result<RealizedCheck, CarterError> {
    let t = ambient_type(case)?;
    let ambient = build_root_system(t);
    let d = case.source_diagram()?;
    let realization = realize_diagram(&d, &ambient, 1)
        .pop()
        .ok_or_else(|| CarterError::InvalidGammaSet(format!("{} has no realization in {t}", case.pair.0)))?;
    let minimal_image = verify_minimal_image(case, &realization, &ambient)?;
    let image = apply(&case.matrix, &realization, &ambient)?;
    let target = case.target_gram()?;
    let image_similar = signed_isomorphism(&image.gram(&ambient), &target, true).is_some();
    Ok(RealizedCheck { id: case.id, ambient: t.to_string(), realization, image, minimal_image, image_similar })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainStep {
    Case(CaseId),
    /// L_τ on the current basis label.
    Flip(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainProduct {
    pub matrix: IntMatrix,
    pub from_labels: Vec<String>,
    pub to_labels: Vec<String>,
    pub factors: Vec<IntMatrix>,
}

fn strip(l: &str) -> &str {
    l.trim_end_matches('~')
}

/// Product of the steps in application order: the first step acts first,
/// so F = S₁·S₂·…·Sₖ as a change of basis and Fᵀ·B·F is the final form.
pub fn compose_chain(steps: &[ChainStep]) -> Result<ChainProduct, CarterError> {
    let mut current: Option<Vec<String>> = None;
    let mut start: Option<Vec<String>> = None;
    let mut product: Option<IntMatrix> = None;
    let mut factors = Vec::new();
    for step in steps {
        let (m, from, to) = match step {
            ChainStep::Case(id) => {
                let c = catalog(*id)?;
                (c.matrix.matrix.clone(), c.from_labels().to_vec(), c.to_labels().to_vec())
            }
            ChainStep::Flip(label) => {
                let cur = current.clone().ok_or_else(|| CarterError::LabelMismatch("chain starts with a flip".into()))?;
                let i = cur.iter().position(|l| l == label).ok_or_else(|| CarterError::LabelMismatch(format!("{label} not in {cur:?}")))?;
                (SimilarityMatrix { dim: cur.len(), index: i }.matrix(), cur.clone(), cur)
            }
        };
        if let Some(cur) = &current {
            // positions are stable; names may differ only by the tilde decoration
            let same = cur.len() == from.len() && cur.iter().zip(&from).all(|(a, b)| strip(a) == strip(b));
            if !same {
                return Err(CarterError::LabelMismatch(format!("{cur:?} then {from:?}")));
            }
        } else {
            start = Some(from.clone());
        }
        product = Some(match product {
            None => m.clone(),
            Some(p) => p.checked_mul(&m)?,
        });
        factors.push(m);
        current = Some(to);
    }
    match (product, start, current) {
        (Some(matrix), Some(from_labels), Some(to_labels)) => Ok(ChainProduct { matrix, from_labels, to_labels, factors }),
        _ => Ok(ChainProduct { matrix: IntMatrix::identity(0), from_labels: Vec::new(), to_labels: Vec::new(), factors }),
    }
}

/// The E8(a8) → E8 chain with its similarity flips.
pub fn e8_chain() -> Vec<ChainStep> {
    use ChainStep::{Case, Flip};
    vec![
        Case(CaseId::new(16)),
        Flip("b2".into()),
        Case(CaseId::new(15)),
        Flip("a3~".into()),
        Case(CaseId::new(13)),
        Case(CaseId::new(12)),
        Case(CaseId::new(9)),
        Flip("a4".into()),
        Flip("b4".into()),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub product: ChainProduct,
    /// Fᵀ·B_{E8(a8)}·F = B_{E8}.
    pub congruent: bool,
    /// Fᵀ·B_{E8(a8)}·F is similar to B_{E8}.
    pub congruent_up_to_flips: bool,
    /// Signs (±1) on the diagonal of D with Fᵀ·B·F = D·B_{E8}·D, if such D exists.
    pub residual_flips: Option<Vec<String>>,
    /// The same chain without its trailing flips gives B_{E8} exactly.
    pub prefix_congruent: bool,
    pub image: Vec<Root>,
    pub image_are_roots: bool,
    pub image_gram_is_e8: bool,
}

impl ChainReport {
    pub fn ok(&self) -> bool {
        self.congruent && self.image_are_roots && self.image_gram_is_e8
    }
}

// D with x = D·y·D for a diagonal ±1 matrix D, by propagation over the graph of y
fn diagonal_flips(x: &IntMatrix, y: &IntMatrix) -> Option<Vec<i64>> {
    let n = y.rows();
    let mut sign = vec![0i64; n];
    for start in 0..n {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && y[(i, j)] != 0 && sign[j] == 0 {
                    sign[j] = if x[(i, j)] == y[(i, j)] { sign[i] } else { -sign[i] };
                    stack.push(j);
                }
            }
        }
    }
    let ok = (0..n).all(|i| (0..n).all(|j| x[(i, j)] == sign[i] * sign[j] * y[(i, j)]));
    ok.then_some(sign)
}

/// Composes the E8(a8) → E8 chain and checks it on the registry forms and on a realization.
pub fn verify_chain() -> Result<ChainReport, CarterError> {
    let steps = e8_chain();
    let product = compose_chain(&steps)?;
    let src = registry().gram_in("E8(a8)", &product.from_labels)?;
    let e8 = registry().gram_in("E8", &product.to_labels)?;
    let image_form = src.congruent(&product.matrix)?;
    let residual_flips = diagonal_flips(&image_form, &e8).map(|signs| {
        signs.iter().zip(&product.to_labels).filter(|(s, _)| **s < 0).map(|(_, l)| l.clone()).collect::<Vec<_>>()
    });
    let prefix_len = steps.iter().rposition(|s| matches!(s, ChainStep::Case(_))).map_or(0, |i| i + 1);
    let prefix = compose_chain(&steps[..prefix_len])?;
    let prefix_congruent = src.congruent(&prefix.matrix)? == e8;
    let ambient = build_root_system(RootSystemType::parse("E8")?);
    let d = CarterDiagram::from_gram("E8(a8)", product.from_labels.clone(), &src)?;
    let s = realize_diagram(&d, &ambient, 1)
        .pop()
        .ok_or_else(|| CarterError::InvalidGammaSet("E8(a8) has no realization".into()))?;
    let image: Vec<Root> = (0..8).map(|j| Root::combination(&product.matrix.column(j), &s.roots)).collect();
    let image_are_roots = image.iter().all(|r| ambient.contains(r));
    let image_gram_is_e8 = gram(&image, &ambient) == e8;
    Ok(ChainReport {
        congruent: image_form == e8,
        congruent_up_to_flips: signed_isomorphism(&image_form, &e8, true).is_some(),
        residual_flips,
        prefix_congruent,
        product,
        image,
        image_are_roots,
        image_gram_is_e8,
    })
}

/// One of the three extra transitions out of E8(a6).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alternative {
    pub target: String,
    pub matrix: TransitionMatrix,
    pub formula: Vec<i64>,
    /// Post-similarity flips, by position in the image basis.
    pub flips: Vec<usize>,
    pub flip_labels: Vec<String>,
}

const ALT_FORMULA: [i64; 8] = [-2, -2, 0, 0, -2, -1, -1, -1];

fn alt(target: &str, moved: usize, image_label: &str, flip_labels: &[&str]) -> Alternative {
    let from = labels(E8_A5);
    let mut to = from.clone();
    to[moved] = image_label.to_string();
    let flips = flip_labels.iter().map(|l| to.iter().position(|t| t == l).expect("flip label")).collect();
    Alternative {
        target: target.to_string(),
        matrix: TransitionMatrix::new(from, to, moved, &ALT_FORMULA).expect("8x8"),
        formula: ALT_FORMULA.to_vec(),
        flips,
        flip_labels: labels(flip_labels),
    }
}

/// {E8(a6), E8(a4)}, {E8(a6), E8(a5)}, {E8(a6), E8(a1)}.
pub fn alternative_transitions() -> Vec<Alternative> {
    vec![
        alt("E8(a4)", 7, "b4", &[]),
        alt("E8(a5)", 5, "b2~", &["a1", "a2", "b1", "b2~"]),
        alt("E8(a1)", 6, "b3~", &["a4~"]),
    ]
}

/// Readings of the fourth a5 flip label; the first is the one adopted.
pub fn a5_flip_candidates() -> Vec<(String, Vec<&'static str>)> {
    vec![
        ("b2~ (image root)".to_string(), vec!["a1", "a2", "b1", "b2~"]),
        ("a2 listed once".to_string(), vec!["a1", "a2", "b1"]),
        ("a2 flipped twice".to_string(), vec!["a1", "b1"]),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternativeReport {
    pub target: String,
    pub involution: bool,
    pub image_valid: bool,
    /// Bijection onto the registry target after the flips, if exact.
    pub exact_map: Option<Vec<usize>>,
    pub similar: bool,
}

pub fn verify_alternative(a: &Alternative) -> Result<AlternativeReport, CarterError> {
    let src = registry().gram_in("E8(a6)", &a.matrix.from_labels)?;
    let d = flip_matrix(8, &a.flips);
    let image = src.congruent(&a.matrix.matrix)?;
    let flipped = &(&d * &image) * &d;
    let target = registry().get(&a.target).ok_or_else(|| CarterError::Unknown(a.target.clone()))?.gram();
    let image_valid = CarterDiagram::from_gram("image", a.matrix.to_labels.clone(), &flipped).map(|d| d.validate().ok()).unwrap_or(false);
    Ok(AlternativeReport {
        target: a.target.clone(),
        involution: verify_involution(&a.matrix.matrix),
        image_valid,
        exact_map: signed_isomorphism(&flipped, &target, false).map(|w| w.map),
        similar: signed_isomorphism(&flipped, &target, true).is_some(),
    })
}

/// Case (2) at l = 4, k = 1 against case (1) under t1→a1, t2→a2, t2~→a3~, t3→a4.
pub fn case2_matches_case1() -> Result<bool, CarterError> {
    let c1 = catalog(CaseId::new(1))?;
    let c2 = catalog(CaseId::d(4, 1))?;
    let perm: Vec<usize> = c2
        .from_labels()
        .iter()
        .map(|l| {
            let a = c2.alias.iter().find(|(x, _)| x == l).map(|(_, y)| y.as_str()).unwrap_or(l);
            c1.from_labels().iter().position(|x| x == a).expect("alias")
        })
        .collect();
    let permuted = c1.matrix.matrix.permuted(&perm);
    Ok(permuted == c2.matrix.matrix && c1.source_gram()?.permuted(&perm) == c2.source_gram()?)
}

pub fn diagram_of(name: &str) -> Result<&'static CarterDiagram, CarterError> {
    registry().get(name).ok_or_else(|| CarterError::Unknown(name.to_string()))
}

pub use diagram::adjacency_list;
