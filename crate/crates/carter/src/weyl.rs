//! Weyl group elements, semi-Coxeter elements, realizations and conjugacy.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cartan;
use crate::diagram::{diagram_from_roots, signed_isomorphism, CarterDiagram, Color};
use crate::error::CarterError;
use crate::matrix::IntMatrix;
use crate::rootsys::{Root, RootSystem, RootSystemType};

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_TRIALS: usize = 100_000;
pub const MAX_WORD: usize = 40;
pub const ENUMERATION_CAP: usize = 1_000_000;

/// Ordered tuple of independent roots with its diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaSet {
    pub roots: Vec<Root>,
    pub diagram: CarterDiagram,
    pub ambient: RootSystemType,
}

impl GammaSet {
    pub fn from_roots(name: &str, labels: Vec<String>, roots: Vec<Root>, ambient: &RootSystem) -> Result<Self, CarterError> {
        if let Some(r) = roots.iter().find(|r| !ambient.contains(r)) {
            return Err(CarterError::ImageNotRoot(r.0.clone()));
        }
        let diagram = diagram_from_roots(name, labels, &roots, ambient)?;
        Ok(GammaSet { roots, diagram, ambient: ambient.root_type() })
    }

    pub fn labels(&self) -> &[String] {
        &self.diagram.nodes
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn gram(&self, ambient: &RootSystem) -> IntMatrix {
        gram(&self.roots, ambient)
    }

    pub fn root(&self, label: &str) -> Option<&Root> {
        self.labels().iter().position(|l| l == label).map(|i| &self.roots[i])
    }
}

pub fn gram(roots: &[Root], ambient: &RootSystem) -> IntMatrix {
    let k = roots.len();
    let mut g = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            g[(i, j)] = ambient.inner(&roots[i], &roots[j]);
        }
    }
    g
}

/// Matrix acting on ambient simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylElement {
    pub matrix: IntMatrix,
    /// Reflecting roots, leftmost factor first.
    pub word: Option<Vec<Root>>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement { matrix: IntMatrix::identity(n), word: Some(Vec::new()) }
    }

    /// s_m: v ↦ v − (v,m)·m
    pub fn reflection(m: &Root, b: &IntMatrix) -> Result<Self, CarterError> {
        let n = b.rows();
        if m.0.len() != n {
            return Err(CarterError::Dimension(format!("root of length {} in rank {n}", m.0.len())));
        }
        let mm = b.bilinear(&m.0, &m.0);
        if mm != 2 {
            return Err(CarterError::NotARoot(mm));
        }
        let bm = b.mul_vec(&m.0);
        let mut r = IntMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                r[(i, j)] -= m.0[i] * bm[j];
            }
        }
        Ok(WeylElement { matrix: r, word: Some(vec![m.clone()]) })
    }

    /// self·other (other acts first).
    pub fn then_after(&self, other: &WeylElement) -> WeylElement {
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        WeylElement { matrix: &self.matrix * &other.matrix, word }
    }

    pub fn product(factors: &[WeylElement], n: usize) -> WeylElement {
        factors.iter().fold(WeylElement::identity(n), |acc, f| acc.then_after(f))
    }

    pub fn apply(&self, r: &Root) -> Root {
        Root(self.matrix.mul_vec(&r.0))
    }

    pub fn apply_all(&self, roots: &[Root]) -> Vec<Root> {
        roots.iter().map(|r| self.apply(r)).collect()
    }

    pub fn inverse(&self) -> WeylElement {
        let word = self.word.as_ref().map(|w| w.iter().rev().cloned().collect());
        WeylElement { matrix: self.matrix.unimodular_inverse().expect("Weyl elements are unimodular"), word }
    }

    /// g·self·g⁻¹
    pub fn conjugate_by(&self, g: &WeylElement) -> WeylElement {
        g.then_after(self).then_after(&g.inverse())
    }

    pub fn preserves_form(&self, b: &IntMatrix) -> bool {
        b.congruent(&self.matrix).map(|x| &x == b).unwrap_or(false)
    }

    pub fn permutes_roots(&self, ambient: &RootSystem) -> bool {
        let imgs: HashSet<Root> = ambient.roots().iter().map(|r| self.apply(r)).collect();
        imgs.len() == ambient.roots().len() && imgs.iter().all(|r| ambient.contains(r))
    }

    /// Smallest k ≥ 1 with selfᵏ = 1, up to `cap`.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let id = IntMatrix::identity(self.matrix.rows());
        let mut p = self.matrix.clone();
        for k in 1..=cap {
            if p == id {
                return Some(k);
            }
            p = &p * &self.matrix;
        }
        None
    }

    pub fn is_involution(&self) -> bool {
        let id = IntMatrix::identity(self.matrix.rows());
        &self.matrix * &self.matrix == id
    }
}

/// w = w_α·w_β from the bicolored partition.
pub fn semi_coxeter(s: &GammaSet, ambient: &RootSystem) -> Result<WeylElement, CarterError> {
    let (wa, wb) = bicolored_factors(s, ambient)?;
    Ok(wa.then_after(&wb))
}

/// (Π_{α∈S_α} s_α, Π_{β∈S_β} s_β); each is an involution.
pub fn bicolored_factors(s: &GammaSet, ambient: &RootSystem) -> Result<(WeylElement, WeylElement), CarterError> {
    let b = ambient.cartan();
    let n = ambient.rank();
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    for (r, c) in s.roots.iter().zip(&s.diagram.partition) {
        match c {
            Color::Alpha => alphas.push(r.clone()),
            Color::Beta => betas.push(r.clone()),
        }
    }
    for class in [&alphas, &betas] {
        for i in 0..class.len() {
            for j in i + 1..class.len() {
                if ambient.inner(&class[i], &class[j]) != 0 {
                    return Err(CarterError::InvalidGammaSet("partition class is not orthogonal".into()));
                }
            }
        }
    }
    let prod = |rs: &[Root]| -> Result<WeylElement, CarterError> {
        let fs = rs.iter().map(|r| WeylElement::reflection(r, b)).collect::<Result<Vec<_>, _>>()?;
        Ok(WeylElement::product(&fs, n))
    };
    Ok((prod(&alphas)?, prod(&betas)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleIdentityReport {
    pub steps: Vec<(String, bool)>,
    /// M²β1 = β1 for M: β1 ↦ −(α1+β1+β2) on the basis (α1, β1, α2, β2).
    pub m_squared_fixes_beta1: bool,
    /// The same conjugation does not send the bicolored w_t to w_õ.
    pub bicolored_breaks: bool,
    pub char_poly_w_o: Vec<i64>,
    pub char_poly_w_t: Vec<i64>,
}

impl CycleIdentityReport {
    pub fn ok(&self) -> bool {
        self.steps.iter().all(|(_, b)| *b) && self.m_squared_fixes_beta1 && self.bicolored_breaks
    }
}

/// Gram of the 4-cycle (α1, β1, α2, β2) used for the elimination identity.
pub fn cycle_gram() -> IntMatrix {
    IntMatrix::from_rows(&[vec![2, -1, 0, -1], vec![-1, 2, -1, 0], vec![0, -1, 2, 1], vec![-1, 0, 1, 2]]).expect("4x4")
}

/// Exact check of the chain w_o = s_{α1}s_{β1}s_{α2}s_{β2} ≃ w_õ via s_{α1+β1}.
pub fn verify_cycle_elimination_identity(roots: &[Root], ambient: &RootSystem) -> Result<CycleIdentityReport, CarterError> {
    if roots.len() != 4 {
        return Err(CarterError::InvalidGammaSet("need (α1, β1, α2, β2)".into()));
    }
    let g = gram(roots, ambient);
    let ok_gram = [(0, 1), (0, 3)].iter().all(|&(i, j)| g[(i, j)] == -1)
        && g[(1, 3)] == 0
        && g[(0, 2)] == 0
        && g[(1, 2)].abs() == 1
        && g[(2, 3)].abs() == 1
        && g[(1, 2)] * g[(2, 3)] == -1;
    if !ok_gram || !cartan::is_positive_definite(&g) {
        return Err(CarterError::InvalidGammaSet("not a realized 4-cycle with (α1,β1) = (α1,β2) = −1".into()));
    }
    let b = ambient.cartan();
    let n = ambient.rank();
    let s = |r: &Root| WeylElement::reflection(r, b);
    let (a1, b1, a2, b2) = (&roots[0], &roots[1], &roots[2], &roots[3]);
    let a1b1 = a1.add(b1);
    let a1b1b2 = a1b1.add(b2);
    let w = |fs: Vec<WeylElement>| WeylElement::product(&fs, n).matrix;
    let w_o = w(vec![s(a1)?, s(b1)?, s(a2)?, s(b2)?]);
    let step1 = w(vec![s(&a1b1)?, s(a1)?, s(a2)?, s(b2)?]);
    let conj = s(&a1b1)?;
    let conjugated = &(&conj.matrix * &w_o) * &conj.matrix;
    let step2 = w(vec![s(a1)?, s(a2)?, s(b2)?, s(&a1b1)?]);
    let step3 = w(vec![s(a1)?, s(a2)?, s(&a1b1b2)?, s(b2)?]);
    let w_ot = w(vec![s(a1)?, s(a2)?, s(&a1b1b2.neg())?, s(b2)?]);
    let steps = vec![
        ("s_a1 s_b1 = s_(a1+b1) s_a1".to_string(), w(vec![s(a1)?, s(b1)?]) == w(vec![s(&a1b1)?, s(a1)?])),
        ("w_o = s_(a1+b1) s_a1 s_a2 s_b2".to_string(), w_o == step1),
        ("s_(a1+b1) w_o s_(a1+b1) = s_a1 s_a2 s_b2 s_(a1+b1)".to_string(), conjugated == step2),
        ("s_b2 s_(a1+b1) = s_(a1+b1+b2) s_b2".to_string(), step2 == step3),
        ("s_(a1+b1+b2) = s_-(a1+b1+b2)".to_string(), step3 == w_ot),
        ("w_o conjugate to w_o~ via s_(a1+b1)".to_string(), conjugated == w_ot),
    ];
    // M over (α1, β1, α2, β2): column β1 ↦ −(α1 + β1 + β2)
    let m = IntMatrix::identity_with_column(4, 1, &[-1, -1, 0, -1]);
    let m2 = &m * &m;
    let beta1 = [0, 1, 0, 0];
    let image = Root::combination(&m.column(1), roots);
    let m_squared_fixes_beta1 = m2.mul_vec(&beta1) == beta1 && image == a1b1b2.neg();
    let w_t = w(vec![s(a1)?, s(a2)?, s(b1)?, s(b2)?]);
    let w_t_conj = &(&conj.matrix * &w_t) * &conj.matrix;
    let cp_o = char_poly(&w_o);
    let cp_t = char_poly(&w_t);
    Ok(CycleIdentityReport {
        steps,
        m_squared_fixes_beta1,
        bicolored_breaks: w_t_conj != w_ot,
        char_poly_w_o: cp_o,
        char_poly_w_t: cp_t,
    })
}

/// Search order: each node after the first touches as many placed nodes as possible.
fn search_order(g: &IntMatrix) -> Vec<usize> {
    let n = g.rows();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let deg = |i: usize| (0..n).filter(|&j| j != i && g[(i, j)] != 0).count();
    while order.len() < n {
        let next = (0..n)
            .filter(|&i| !placed[i])
            .max_by_key(|&i| {
                let links = order.iter().filter(|&&k| g[(i, k)] != 0).count();
                (links, deg(i), std::cmp::Reverse(i))
            })
            .expect("unplaced node");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Visits every ordered tuple of independent roots with Gram `g`, in a fixed
/// order; the callback returns false to stop.
pub fn for_each_realization<F: FnMut(&[Root]) -> bool>(g: &IntMatrix, ambient: &RootSystem, mut f: F) {
    let n = g.rows();
    if n == 0 || n > ambient.rank() || (0..n).any(|i| g[(i, i)] != 2) {
        return;
    }
    let roots = ambient.roots();
    let m = roots.len();
    let mut table = vec![0i64; m * m];
    for i in 0..m {
        for j in 0..m {
            table[i * m + j] = ambient.inner(&roots[i], &roots[j]);
        }
    }
    let order = search_order(g);
    let definite = cartan::is_positive_definite(g);
    let mut chosen = vec![usize::MAX; n];
    let mut used = vec![false; m];
    let mut stop = false;
    #[allow(clippy::too_many_arguments)]
    fn rec<F: FnMut(&[Root]) -> bool>(
        depth: usize,
        order: &[usize],
        g: &IntMatrix,
        table: &[i64],
        m: usize,
        roots: &[Root],
        chosen: &mut Vec<usize>,
        used: &mut Vec<bool>,
        definite: bool,
        stop: &mut bool,
        f: &mut F,
    ) {
        if *stop {
            return;
        }
        if depth == order.len() {
            let tuple: Vec<Root> = chosen.iter().map(|&c| roots[c].clone()).collect();
            if !definite {
                let rows: Vec<Vec<i64>> = tuple.iter().map(|r| r.0.clone()).collect();
                if IntMatrix::from_rows(&rows).map(|x| x.rank()).unwrap_or(0) != tuple.len() {
                    return;
                }
            }
            if !f(&tuple) {
                *stop = true;
            }
            return;
        }
        let node = order[depth];
        'cand: for c in 0..m {
            if used[c] {
                continue;
            }
            for &prev in &order[..depth] {
                if table[c * m + chosen[prev]] != g[(node, prev)] {
                    continue 'cand;
                }
            }
            chosen[node] = c;
            used[c] = true;
            rec(depth + 1, order, g, table, m, roots, chosen, used, definite, stop, f);
            used[c] = false;
            chosen[node] = usize::MAX;
            if *stop {
                return;
            }
        }
    }
    rec(0, &order, g, &table, m, roots, &mut chosen, &mut used, definite, &mut stop, &mut f);
}

/// Up to `limit` realizations of `d` in `ambient`.
pub fn realize_diagram(d: &CarterDiagram, ambient: &RootSystem, limit: usize) -> Vec<GammaSet> {
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    for_each_realization(&d.gram(), ambient, |t| {
        if let Ok(s) = GammaSet::from_roots(&d.name, d.nodes.clone(), t.to_vec(), ambient) {
            out.push(s);
        }
        out.len() < limit
    });
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Matching {
    /// w·S1 = S2 position by position.
    Ordered,
    /// w·S1 = S2 as sets of roots.
    Unordered,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConjugacyMode {
    Exhaustive,
    Random { seed: u64, trials: usize, max_len: usize },
    /// Solves w·S1 = S2 linearly; needs S1 to span the ambient space.
    Solve,
}

impl ConjugacyMode {
    pub fn random_default() -> Self {
        ConjugacyMode::Random { seed: DEFAULT_SEED, trials: DEFAULT_TRIALS, max_len: MAX_WORD }
    }
}

/// All of W by closure over simple reflections.
pub fn enumerate_weyl_group(ambient: &RootSystem, cap: usize) -> Result<Vec<IntMatrix>, CarterError> {
    if ambient.root_type().weyl_order() > cap as u128 {
        return Err(CarterError::SizeCap(cap));
    }
    let b = ambient.cartan();
    let gens: Vec<IntMatrix> = ambient
        .simple_roots()
        .iter()
        .map(|r| WeylElement::reflection(r, b).map(|w| w.matrix))
        .collect::<Result<_, _>>()?;
    let id = IntMatrix::identity(ambient.rank());
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut all = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let x = g * &w;
            if seen.insert(x.clone()) {
                if seen.len() > cap {
                    return Err(CarterError::SizeCap(cap));
                }
                all.push(x.clone());
                queue.push_back(x);
            }
        }
    }
    Ok(all)
}

fn matches(w: &IntMatrix, s1: &[Root], s2: &[Root], matching: Matching, target: &BTreeSet<&Root>) -> bool {
    match matching {
        Matching::Ordered => s1.iter().zip(s2).all(|(a, b)| w.mul_vec(&a.0) == b.0),
        Matching::Unordered => s1.iter().all(|a| target.contains(&Root(w.mul_vec(&a.0)))),
    }
}

/// Some w ∈ W with w·S1 = S2, or None. None from random search is inconclusive.
pub fn conjugacy_search(
    s1: &GammaSet,
    s2: &GammaSet,
    ambient: &RootSystem,
    mode: ConjugacyMode,
    matching: Matching,
) -> Result<Option<WeylElement>, CarterError> {
    if s1.ambient != s2.ambient || s1.ambient != ambient.root_type() || s1.len() != s2.len() {
        return Err(CarterError::InvalidGammaSet("sets live in different ambient systems".into()));
    }
    let target: BTreeSet<&Root> = s2.roots.iter().collect();
    match mode {
        ConjugacyMode::Exhaustive => {
            let group = enumerate_weyl_group(ambient, ENUMERATION_CAP)?;
            Ok(group
                .into_iter()
                .find(|w| matches(w, &s1.roots, &s2.roots, matching, &target))
                .map(|m| with_word(m, ambient)))
        }
        ConjugacyMode::Random { seed, trials, max_len } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if matches(&IntMatrix::identity(ambient.rank()), &s1.roots, &s2.roots, matching, &target) {
                return Ok(Some(WeylElement::identity(ambient.rank())));
            }
            for _ in 0..trials {
                let w = random_element(ambient, &mut rng, max_len);
                if matches(&w.matrix, &s1.roots, &s2.roots, matching, &target) {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }
        ConjugacyMode::Solve => {
            let targets: Vec<Vec<Root>> = match matching {
                Matching::Ordered => vec![s2.roots.clone()],
                Matching::Unordered => automorphisms(&s2.gram(ambient))
                    .into_iter()
                    .map(|p| p.iter().map(|&i| s2.roots[i].clone()).collect())
                    .collect(),
            };
            for t in targets {
                if let Some(g) = solve_linear(&s1.roots, &t, ambient)? {
                    if let Some(w) = weyl_part(&g, ambient).filter(|(_, sigma)| sigma.is_none()).map(|(w, _)| w) {
                        return Ok(Some(w));
                    }
                }
            }
            Ok(None)
        }
    }
}

/// Decides w·S1 = S2 up to an automorphism of Φ outside W (e.g. triality):
/// returns Some(true) if conjugate under W, Some(false) if only under Aut(Φ).
pub fn conjugate_in_automorphism_group(s1: &[Root], s2: &[Root], ambient: &RootSystem) -> Result<Option<bool>, CarterError> {
    let Some(g) = solve_linear(s1, s2, ambient)? else { return Ok(None) };
    Ok(weyl_part(&g, ambient).map(|(_, sigma)| sigma.is_none()))
}

// g with g·s1ᵢ = s2ᵢ for spanning s1, if integral and form-preserving
fn solve_linear(s1: &[Root], s2: &[Root], ambient: &RootSystem) -> Result<Option<IntMatrix>, CarterError> {
    let n = ambient.rank();
    if s1.len() != n || s2.len() != n {
        return Err(CarterError::InvalidGammaSet("solve mode needs a spanning set".into()));
    }
    let cols = |s: &[Root]| {
        let mut m = IntMatrix::zeros(n, n);
        for (j, r) in s.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = r.0[i];
            }
        }
        m
    };
    let a = cols(s1);
    let bm = cols(s2);
    let det = a.determinant();
    if det == 0 {
        return Err(CarterError::InvalidGammaSet("roots are dependent".into()));
    }
    let adj = adjugate(&a);
    let num = &bm * &adj;
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = num[(i, j)] as i128;
            if x % det != 0 {
                return Ok(None);
            }
            g[(i, j)] = (x / det) as i64;
        }
    }
    let b = ambient.cartan();
    if &b.congruent(&g)? != b {
        return Ok(None);
    }
    Ok(Some(g))
}

fn adjugate(a: &IntMatrix) -> IntMatrix {
    let n = a.rows();
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut minor = IntMatrix::zeros(n - 1, n - 1);
            for (ii, r) in (0..n).filter(|&r| r != i).enumerate() {
                for (jj, c) in (0..n).filter(|&c| c != j).enumerate() {
                    minor[(ii, jj)] = a[(r, c)];
                }
            }
            let d = minor.determinant() as i64;
            adj[(j, i)] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

fn is_negative(v: &[i64]) -> bool {
    v.iter().all(|&x| x <= 0) && v.iter().any(|&x| x < 0)
}

/// Splits a root-system automorphism g as w·σ with w ∈ W and σ a diagram
/// automorphism (None when σ is trivial). Returns None if g is not an automorphism.
pub fn weyl_part(g: &IntMatrix, ambient: &RootSystem) -> Option<(WeylElement, Option<Vec<usize>>)> {
    let n = ambient.rank();
    let b = ambient.cartan();
    let simples = ambient.simple_roots();
    let gens: Vec<WeylElement> = simples.iter().map(|r| WeylElement::reflection(r, b).expect("simple")).collect();
    let mut h = g.clone();
    let mut word: Vec<usize> = Vec::new();
    for _ in 0..=ambient.roots().len() {
        match (0..n).find(|&j| is_negative(&h.column(j))) {
            Some(j) => {
                h = &h * &gens[j].matrix;
                word.push(j);
            }
            None => {
                // h maps the simple roots to positive roots, hence permutes them
                let mut perm = Vec::with_capacity(n);
                for j in 0..n {
                    let c = h.column(j);
                    let i = (0..n).find(|&i| c == simples[i].0)?;
                    perm.push(i);
                }
                // g = h·s_{j_k}…s_{j_1}; w = g·h⁻¹
                let w_matrix = &g.clone() * &h.unimodular_inverse()?;
                let w = WeylElement {
                    matrix: w_matrix,
                    word: Some(word.iter().rev().map(|&j| simples[j].clone()).collect()),
                };
                let sigma = (perm.iter().enumerate().any(|(i, &p)| i != p)).then_some(perm);
                return Some((w, sigma));
            }
        }
    }
    None
}

fn with_word(m: IntMatrix, ambient: &RootSystem) -> WeylElement {
    match weyl_part(&m, ambient) {
        Some((w, None)) => w,
        _ => WeylElement { matrix: m, word: None },
    }
}

/// Product of a random word of simple reflections of length 1..=max_len.
pub fn random_element<R: Rng>(ambient: &RootSystem, rng: &mut R, max_len: usize) -> WeylElement {
    let n = ambient.rank();
    let b = ambient.cartan();
    let len = rng.gen_range(1..=max_len.max(1));
    let mut w = WeylElement::identity(n);
    for _ in 0..len {
        let r = Root::simple(n, rng.gen_range(0..n));
        w = w.then_after(&WeylElement::reflection(&r, b).expect("simple"));
    }
    w
}

/// Permutations p with g[p i][p j] = g[i][j].
pub fn automorphisms(g: &IntMatrix) -> Vec<Vec<usize>> {
    let n = g.rows();
    let mut out = Vec::new();
    let mut p = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(i: usize, g: &IntMatrix, p: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = g.rows();
        if i == n {
            out.push(p.clone());
            return;
        }
        for j in 0..n {
            if used[j] || (0..=i).any(|k| k < i && g[(p[k], j)] != g[(k, i)]) {
                continue;
            }
            p[i] = j;
            used[j] = true;
            rec(i + 1, g, p, used, out);
            used[j] = false;
        }
    }
    rec(0, g, &mut p, &mut used, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizationCount {
    pub diagram: String,
    pub ambient: String,
    pub weyl_order: u128,
    /// Ordered tuples.
    pub raw: u128,
    /// Sets of roots: raw / |signed automorphisms of the diagram|.
    pub unordered: u128,
    /// raw / |automorphisms of the Dynkin diagram of the ambient type|.
    pub mod_automorphism: u128,
    pub diagram_automorphisms: usize,
    pub dynkin_automorphisms: usize,
}

impl RealizationCount {
    pub fn ratios(&self) -> [f64; 3] {
        let w = self.weyl_order as f64;
        [self.raw as f64 / w, self.unordered as f64 / w, self.mod_automorphism as f64 / w]
    }

    /// raw / |W| is a positive integer.
    pub fn raw_ratio_is_integer(&self) -> bool {
        self.raw > 0 && self.raw.is_multiple_of(self.weyl_order)
    }
}

pub fn count_realizations(d: &CarterDiagram, ambient: &RootSystem) -> Result<RealizationCount, CarterError> {
    if ambient.rank() > 6 {
        return Err(CarterError::SizeCap(6));
    }
    let g = d.gram();
    let mut raw: u128 = 0;
    for_each_realization(&g, ambient, |_| {
        raw += 1;
        true
    });
    let aut = automorphisms(&g).len();
    let dyn_aut = automorphisms(ambient.cartan()).len();
    Ok(RealizationCount {
        diagram: d.name.clone(),
        ambient: ambient.root_type().to_string(),
        weyl_order: ambient.root_type().weyl_order(),
        raw,
        unordered: raw / aut as u128,
        mod_automorphism: raw / dyn_aut as u128,
        diagram_automorphisms: aut,
        dynkin_automorphisms: dyn_aut,
    })
}

/// det(tI − W), coefficients from the constant term up; fraction-free elimination over ℤ[t].
pub fn char_poly(w: &IntMatrix) -> Vec<i64> {
    let n = w.rows();
    // entries of tI − W as polynomials (ascending coefficients)
    let mut a: Vec<Vec<Vec<i128>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { vec![-(w[(i, j)] as i128), 1] } else { vec![-(w[(i, j)] as i128)] })
                .collect()
        })
        .collect();
    let mut prev: Vec<i128> = vec![1];
    for k in 0..n {
        for i in k + 1..n {
            for j in k + 1..n {
                let num = poly_sub(&poly_mul(&a[i][j], &a[k][k]), &poly_mul(&a[i][k], &a[k][j]));
                a[i][j] = poly_div_monic(&num, &prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { vec![1] } else { a[n - 1][n - 1].clone() };
    let mut out: Vec<i64> = det.iter().map(|&x| x as i64).collect();
    out.resize(n + 1, 0);
    out
}

fn trim(mut p: Vec<i128>) -> Vec<i128> {
    while p.len() > 1 && *p.last().expect("nonempty") == 0 {
        p.pop();
    }
    p
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[i128], b: &[i128]) -> Vec<i128> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).copied().unwrap_or(0) - b.get(i).copied().unwrap_or(0)).collect())
}

// exact division by a monic polynomial (leading principal minors of tI − W are monic)
fn poly_div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let den = trim(den.to_vec());
    let dd = den.len() - 1;
    debug_assert_eq!(*den.last().expect("nonempty"), 1);
    let mut rem = trim(num.to_vec());
    if rem.len() <= dd {
        return vec![0];
    }
    let mut q = vec![0i128; rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact division");
    trim(q)
}

/// Signed isomorphism class check used by realizations: Gram of S equals B_Γ.
pub fn realizes(s: &[Root], d: &CarterDiagram, ambient: &RootSystem) -> bool {
    gram(s, ambient) == d.gram()
}

/// Index of each realization's root set under W, for orbit reports.
pub fn orbit_labels(sets: &[Vec<Root>], group: &[IntMatrix]) -> Vec<usize> {
    let mut label: HashMap<BTreeSet<Root>, usize> = HashMap::new();
    let mut next = 0;
    sets.iter()
        .map(|s| {
            let key: BTreeSet<Root> = s.iter().cloned().collect();
            if let Some(&l) = label.get(&key) {
                return l;
            }
            for w in group {
                let img: BTreeSet<Root> = s.iter().map(|r| Root(w.mul_vec(&r.0))).collect();
                label.entry(img).or_insert(next);
            }
            next += 1;
            next - 1
        })
        .collect()
}

/// Up to `limit` realizations with pairwise different root sets.
pub fn distinct_realizations(d: &CarterDiagram, ambient: &RootSystem, limit: usize) -> Vec<GammaSet> {
    let mut seen: HashSet<BTreeSet<Root>> = HashSet::new();
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    for_each_realization(&d.gram(), ambient, |t| {
        if seen.insert(t.iter().cloned().collect()) {
            if let Ok(s) = GammaSet::from_roots(&d.name, d.nodes.clone(), t.to_vec(), ambient) {
                out.push(s);
            }
        }
        out.len() < limit
    });
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairwiseReport {
    pub pairs: usize,
    pub conjugate: usize,
    /// Index pairs (i, j), i < j, with no conjugating element found.
    pub failures: Vec<(usize, usize)>,
    /// Pairs conjugate under W extended by the diagram automorphisms (spanning sets only).
    pub conjugate_up_to_diagram_automorphism: Option<usize>,
}

pub fn pairwise_conjugacy(
    sets: &[GammaSet],
    ambient: &RootSystem,
    mode: ConjugacyMode,
    matching: Matching,
) -> Result<PairwiseReport, CarterError> {
    let group = match mode {
        ConjugacyMode::Exhaustive => Some(enumerate_weyl_group(ambient, ENUMERATION_CAP)?),
        _ => None,
    };
    let spanning = sets.iter().all(|s| s.len() == ambient.rank());
    let mut pairs = 0;
    let mut conjugate = 0;
    let mut failures = Vec::new();
    let mut extended = 0;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            pairs += 1;
            let found = match &group {
                Some(g) => {
                    let target: BTreeSet<&Root> = sets[j].roots.iter().collect();
                    g.iter().any(|w| matches(w, &sets[i].roots, &sets[j].roots, matching, &target))
                }
                None => conjugacy_search(&sets[i], &sets[j], ambient, mode, matching)?.is_some(),
            };
            if found {
                conjugate += 1;
            } else {
                failures.push((i, j));
            }
            if spanning {
                let perms = match matching {
                    Matching::Ordered => vec![(0..sets[j].len()).collect::<Vec<_>>()],
                    Matching::Unordered => automorphisms(&sets[j].gram(ambient)),
                };
                let hit = perms.iter().any(|p| {
                    let t: Vec<Root> = p.iter().map(|&k| sets[j].roots[k].clone()).collect();
                    matches!(conjugate_in_automorphism_group(&sets[i].roots, &t, ambient), Ok(Some(_)))
                });
                extended += usize::from(hit);
            }
        }
    }
    Ok(PairwiseReport { pairs, conjugate, failures, conjugate_up_to_diagram_automorphism: spanning.then_some(extended) })
}

pub fn similar_gram(a: &IntMatrix, b: &IntMatrix) -> bool {
    signed_isomorphism(a, b, true).is_some()
}
