//! Carter diagrams: signed graphs on root subsets, validity, similarity and the registry.

use std::collections::{BTreeMap, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cartan::{self, gram_of};
use crate::error::CarterError;
use crate::matrix::IntMatrix;
use crate::rootsys::{inner_product, Root, RootSystem};
use crate::transition::{self, CaseId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeSign {
    Solid,
    Dotted,
}

impl EdgeSign {
    pub fn value(self) -> i64 {
        match self {
            EdgeSign::Solid => -1,
            EdgeSign::Dotted => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            EdgeSign::Solid => EdgeSign::Dotted,
            EdgeSign::Dotted => EdgeSign::Solid,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub sign: EdgeSign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    Alpha,
    Beta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarterDiagram {
    pub name: String,
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
    pub partition: Vec<Color>,
}

impl CarterDiagram {
    /// Builds a diagram; the partition is a 2-coloring of each component
    /// starting from Alpha (best effort when the graph is not bipartite).
    pub fn new(name: &str, nodes: Vec<String>, edges: Vec<Edge>) -> Self {
        let partition = two_coloring(nodes.len(), &edges).unwrap_or_else(|| greedy_coloring(nodes.len(), &edges));
        CarterDiagram { name: name.to_string(), nodes, edges, partition }
    }

    /// Reads edges off a symmetric form; entries of absolute value ≥ 2 are rejected.
    pub fn from_gram(name: &str, nodes: Vec<String>, g: &IntMatrix) -> Result<Self, CarterError> {
        let n = g.rows();
        if nodes.len() != n || !g.is_symmetric() {
            return Err(CarterError::Dimension(format!("{} labels for a {}x{} form", nodes.len(), n, g.cols())));
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                match g[(i, j)] {
                    0 => {}
                    -1 => edges.push(Edge { a: i, b: j, sign: EdgeSign::Solid }),
                    1 => edges.push(Edge { a: i, b: j, sign: EdgeSign::Dotted }),
                    x => {
                        return Err(CarterError::InvalidDiagram(format!(
                            "({}, {}) = {x}",
                            nodes[i], nodes[j]
                        )))
                    }
                }
            }
        }
        Ok(Self::new(name, nodes, edges))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|l| l == label)
    }

    pub fn gram(&self) -> IntMatrix {
        gram_of(self)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        adj
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.a == i || e.b == i).count()
    }

    pub fn has_cycle(&self) -> bool {
        complexity(self).cycles > 0
    }

    /// Chordless cycles as node sequences.
    pub fn chordless_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut adj = vec![vec![false; n]; n];
        for e in &self.edges {
            adj[e.a][e.b] = true;
            adj[e.b][e.a] = true;
        }
        let mut out = Vec::new();
        for s in 0..n {
            let mut path = vec![s];
            extend_chordless(&adj, s, &mut path, &mut out);
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let n = self.nodes.len();
        let loops = self.edges.iter().filter(|e| e.a == e.b || e.a >= n || e.b >= n).count();
        r.push("no self-loops", loops == 0, format!("{loops} bad edges"));
        let mut pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.a.min(e.b), e.a.max(e.b))).collect();
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        r.push("simple graph", before == pairs.len(), format!("{} repeated pairs", before - pairs.len()));
        if loops > 0 || self.partition.len() != n {
            r.push("partition", false, "partition does not cover the nodes".into());
            return r;
        }
        let bip = two_coloring(n, &self.edges).is_some();
        r.push("bipartite", bip, "graph has an odd cycle".into());
        let mono: Vec<String> = self
            .edges
            .iter()
            .filter(|e| self.partition[e.a] == self.partition[e.b])
            .map(|e| format!("{}-{}", self.nodes[e.a], self.nodes[e.b]))
            .collect();
        r.push("partition classes orthogonal", mono.is_empty(), format!("edges inside a class: {}", mono.join(", ")));
        let mut bad = Vec::new();
        for c in self.chordless_cycles() {
            let (solid, dotted) = self.cycle_signs(&c);
            if solid % 2 == 0 || dotted % 2 == 0 {
                let names: Vec<&str> = c.iter().map(|&i| self.nodes[i].as_str()).collect();
                bad.push(format!("[{}] solid {solid} dotted {dotted}", names.join(" ")));
            }
        }
        r.push("cycle parity", bad.is_empty(), bad.join("; "));
        let g = self.gram();
        r.push("positive definite", cartan::is_positive_definite(&g), format!("minors {:?}", g.leading_minors()));
        r
    }

    fn cycle_signs(&self, c: &[usize]) -> (usize, usize) {
        let mut solid = 0;
        let mut dotted = 0;
        for k in 0..c.len() {
            let (x, y) = (c[k], c[(k + 1) % c.len()]);
            let e = self.edges.iter().find(|e| (e.a == x && e.b == y) || (e.a == y && e.b == x));
            match e.map(|e| e.sign) {
                Some(EdgeSign::Solid) => solid += 1,
                Some(EdgeSign::Dotted) => dotted += 1,
                None => {}
            }
        }
        (solid, dotted)
    }

    /// Negates node `i`: every incident edge changes type.
    pub fn flip(&self, i: usize) -> CarterDiagram {
        let mut d = self.clone();
        for e in d.edges.iter_mut() {
            if e.a == i || e.b == i {
                e.sign = e.sign.flipped();
            }
        }
        d
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

// cycles through s whose other vertices exceed s, each reported once
fn extend_chordless(adj: &[Vec<bool>], s: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let last = *path.last().expect("nonempty");
    let interior = if path.len() > 2 { &path[1..path.len() - 1] } else { &[][..] };
    let mut next = Vec::new();
    for v in (s + 1)..adj.len() {
        if !adj[last][v] || path.contains(&v) || interior.iter().any(|&u| adj[u][v]) {
            continue;
        }
        if path.len() >= 2 && adj[s][v] {
            if path[1] < v {
                let mut c = path.clone();
                c.push(v);
                out.push(c);
            }
        } else {
            next.push(v);
        }
    }
    for v in next {
        path.push(v);
        extend_chordless(adj, s, path, out);
        path.pop();
    }
}

fn two_coloring(n: usize, edges: &[Edge]) -> Option<Vec<Color>> {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        if e.a >= n || e.b >= n {
            return None;
        }
        adj[e.a].push(e.b);
        adj[e.b].push(e.a);
    }
    let mut color: Vec<Option<Color>> = vec![None; n];
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(Color::Alpha);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            let other = match color[u] {
                Some(Color::Alpha) => Color::Beta,
                _ => Color::Alpha,
            };
            for &v in &adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(other);
                        q.push_back(v);
                    }
                    Some(c) if c != other => return None,
                    _ => {}
                }
            }
        }
    }
    color.into_iter().collect()
}

fn greedy_coloring(n: usize, edges: &[Edge]) -> Vec<Color> {
    let mut c = vec![Color::Alpha; n];
    for e in edges {
        if e.a < n && e.b < n && e.b > e.a && c[e.a] == c[e.b] {
            c[e.b] = Color::Beta;
        }
    }
    c
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl ValidationReport {
    fn push(&mut self, name: &str, passed: bool, detail: String) {
        let detail = if passed { String::new() } else { detail };
        self.checks.push(Check { name: name.to_string(), passed, detail });
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks.iter().filter(|c| !c.passed).map(|c| format!("{} ({})", c.name, c.detail)).collect()
    }
}

/// Diagram of a linearly independent root subset.
pub fn diagram_from_roots(
    name: &str,
    labels: Vec<String>,
    roots: &[Root],
    ambient: &RootSystem,
) -> Result<CarterDiagram, CarterError> {
    if labels.len() != roots.len() {
        return Err(CarterError::Dimension(format!("{} labels for {} roots", labels.len(), roots.len())));
    }
    let k = roots.len();
    let coords: Vec<Vec<i64>> = roots.iter().map(|r| r.0.clone()).collect();
    if IntMatrix::from_rows(&coords)?.rank() != k {
        return Err(CarterError::InvalidGammaSet("roots are linearly dependent".into()));
    }
    let mut g = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            g[(i, j)] = inner_product(&roots[i], &roots[j], ambient.cartan())?;
        }
    }
    let d = CarterDiagram::from_gram(name, labels, &g)?;
    if two_coloring(d.len(), &d.edges).is_none() {
        return Err(CarterError::InvalidGammaSet("graph is not 2-colorable".into()));
    }
    Ok(d)
}

/// Node flips (on d1's nodes) and bijection d1 → d2 realizing a similarity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilarityWitness {
    pub flips: Vec<bool>,
    pub map: Vec<usize>,
}

/// Searches for flips and a bijection carrying d1's signed edges onto d2's.
pub fn similarity_equivalent(d1: &CarterDiagram, d2: &CarterDiagram) -> Option<SimilarityWitness> {
    let g1 = d1.gram();
    let g2 = d2.gram();
    signed_isomorphism(&g1, &g2, true)
}

/// Exact or sign-tolerant isomorphism of two symmetric forms.
pub fn signed_isomorphism(g1: &IntMatrix, g2: &IntMatrix, allow_flips: bool) -> Option<SimilarityWitness> {
    let n = g1.rows();
    if g2.rows() != n {
        return None;
    }
    let deg1: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| j != i && g1[(i, j)] != 0).count()).collect();
    let deg2: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| j != i && g2[(i, j)] != 0).count()).collect();
    {
        let (mut a, mut b) = (deg1.clone(), deg2.clone());
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }
    // BFS order so later nodes have an earlier neighbour when possible
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            order.push(u);
            for v in 0..n {
                if !seen[v] && v != u && g1[(u, v)] != 0 {
                    seen[v] = true;
                    q.push_back(v);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut sign = vec![0i64; n];
    let mut used = vec![false; n];
    let found = iso_search(g1, g2, &order, 0, &mut map, &mut sign, &mut used, &deg1, &deg2, allow_flips);
    found.then(|| SimilarityWitness { flips: sign.iter().map(|&s| s < 0).collect(), map })
}

#[allow(clippy::too_many_arguments)]
fn iso_search(
    g1: &IntMatrix,
    g2: &IntMatrix,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    sign: &mut [i64],
    used: &mut [bool],
    deg1: &[usize],
    deg2: &[usize],
    allow_flips: bool,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let i = order[depth];
    let placed = &order[..depth];
    for j in 0..g2.rows() {
        if used[j] || deg1[i] != deg2[j] || g1[(i, i)] != g2[(j, j)] {
            continue;
        }
        // sign forced by an earlier neighbour, free otherwise
        let mut forced = None;
        let mut ok = true;
        for &k in placed {
            let a = g1[(i, k)];
            let b = g2[(j, map[k])];
            if (a == 0) != (b == 0) {
                ok = false;
                break;
            }
            if a != 0 {
                let s = if a * sign[k] == b { 1 } else if -a * sign[k] == b { -1 } else { 0 };
                if s == 0 || forced.is_some_and(|f| f != s) {
                    ok = false;
                    break;
                }
                forced = Some(s);
            }
        }
        if !ok {
            continue;
        }
        // a node with no earlier neighbour starts a component, whose global sign is immaterial
        let s = forced.unwrap_or(1);
        if !allow_flips && s != 1 {
            continue;
        }
        map[i] = j;
        sign[i] = s;
        used[j] = true;
        if iso_search(g1, g2, order, depth + 1, map, sign, used, deg1, deg2, allow_flips) {
            return true;
        }
        used[j] = false;
        map[i] = usize::MAX;
        sign[i] = 0;
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complexity {
    pub cycles: usize,
    pub endpoints: usize,
    pub score: usize,
}

/// N = number of relevant cycles (chordless cycles that are not sums of
/// shorter cycles over GF(2)), K = number of degree-1 nodes, score 2N + K.
pub fn complexity(d: &CarterDiagram) -> Complexity {
    let cycles = relevant_cycles(d).len();
    let endpoints = (0..d.nodes.len()).filter(|&i| d.degree(i) == 1).count();
    Complexity { cycles, endpoints, score: 2 * cycles + endpoints }
}

/// Chordless cycles not in the GF(2) span of strictly shorter cycles.
pub fn relevant_cycles(d: &CarterDiagram) -> Vec<Vec<usize>> {
    let edge_ix = |a: usize, b: usize| d.edges.iter().position(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a));
    let mut cycles = d.chordless_cycles();
    cycles.sort_by_key(|c| c.len());
    let vector = |c: &[usize]| {
        let mut v = vec![false; d.edges.len()];
        for i in 0..c.len() {
            if let Some(k) = edge_ix(c[i], c[(i + 1) % c.len()]) {
                v[k] = true;
            }
        }
        v
    };
    // reduced basis of the span of shorter cycles, keyed by pivot
    let mut basis: Vec<(usize, Vec<bool>)> = Vec::new();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cycles.len() {
        let len = cycles[i].len();
        let j = cycles[i..].iter().position(|c| c.len() != len).map_or(cycles.len(), |p| i + p);
        let mut pending = Vec::new();
        for c in &cycles[i..j] {
            let mut v = vector(c);
            for (p, b) in &basis {
                if v[*p] {
                    v.iter_mut().zip(b).for_each(|(x, y)| *x ^= *y);
                }
            }
            if v.iter().any(|&x| x) {
                out.push(c.clone());
            }
            pending.push(v);
        }
        for mut v in pending {
            for (p, b) in &basis {
                if v[*p] {
                    v.iter_mut().zip(b).for_each(|(x, y)| *x ^= *y);
                }
            }
            if let Some(p) = v.iter().position(|&x| x) {
                basis.push((p, v));
            }
        }
        i = j;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousClass {
    pub name: String,
    pub dynkin: CarterDiagram,
    pub members: Vec<CarterDiagram>,
}

impl HomogeneousClass {
    pub fn cycle_bearing(&self) -> Vec<&CarterDiagram> {
        self.members.iter().filter(|d| d.has_cycle()).collect()
    }
}

/// Registry of every diagram in C(E6), C(E7), C(E8) and C(D4)..C(D10).
pub struct Registry {
    diagrams: BTreeMap<String, CarterDiagram>,
}

impl Registry {
    pub fn get(&self, name: &str) -> Option<&CarterDiagram> {
        self.diagrams.get(name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.diagrams.keys().map(String::as_str).collect()
    }

    pub fn diagrams(&self) -> impl Iterator<Item = &CarterDiagram> {
        self.diagrams.values()
    }

    /// Gram matrix of `name` in the given label order.
    pub fn gram_in(&self, name: &str, labels: &[String]) -> Result<IntMatrix, CarterError> {
        let d = self.get(name).ok_or_else(|| CarterError::Unknown(name.to_string()))?;
        let perm = labels
            .iter()
            .map(|l| d.index_of(l).ok_or_else(|| CarterError::LabelMismatch(format!("{l} not a node of {name}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if perm.len() != d.len() {
            return Err(CarterError::LabelMismatch(format!("{} labels for {}", perm.len(), name)));
        }
        Ok(d.gram().permuted(&perm))
    }
}

pub const MAX_D_RANK: usize = 10;

pub fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| build_registry(MAX_D_RANK).expect("registry construction"))
}

/// Dynkin diagrams in the labelings used by the catalog, then every other
/// member by inverting the catalog congruences along the adjacency list.
fn build_registry(max_d: usize) -> Result<Registry, CarterError> {
    let mut diagrams = BTreeMap::new();
    for (name, labels, g) in transition::dynkin_bases(max_d) {
        diagrams.insert(name.clone(), CarterDiagram::from_gram(&name, labels, &g)?);
    }
    let mut reg = Registry { diagrams };
    for id in transition::derivation_order(max_d) {
        let case = transition::catalog_raw(id)?;
        let target = reg.gram_in(&case.pair.1, case.to_labels())?;
        let src = case.source_form(&target)?;
        let d = CarterDiagram::from_gram(&case.pair.0, case.matrix.from_labels.clone(), &src)?;
        reg.diagrams.insert(case.pair.0.clone(), d);
    }
    Ok(reg)
}

/// Name of the homogeneous class a diagram belongs to ("E8(a3)" → "E8").
pub fn class_of(name: &str) -> &str {
    name.split('(').next().unwrap_or(name)
}

fn class_size(name: &str) -> Result<usize, CarterError> {
    match name {
        "E6" => Ok(3),
        "E7" => Ok(5),
        "E8" => Ok(9),
        _ => match name.strip_prefix('D').and_then(|r| r.parse::<usize>().ok()) {
            Some(l) if l >= 4 => Ok((l - 2) / 2 + 1),
            _ => Err(CarterError::Unknown(name.to_string())),
        },
    }
}

pub fn homogeneous_class(name: &str) -> Result<HomogeneousClass, CarterError> {
    let size = class_size(name)?;
    let reg = registry();
    let members: Vec<CarterDiagram> = std::iter::once(name.to_string())
        .chain((1..size).map(|k| format!("{name}(a{k})")))
        .map(|n| reg.get(&n).cloned().ok_or(CarterError::Unknown(n)))
        .collect::<Result<_, _>>()?;
    Ok(HomogeneousClass { name: name.to_string(), dynkin: members[0].clone(), members })
}

pub fn class_names() -> Vec<String> {
    let mut v: Vec<String> = (4..=MAX_D_RANK).map(|l| format!("D{l}")).collect();
    v.extend(["E6", "E7", "E8"].map(String::from));
    v
}

/// The sixteen homogeneous pairs; case 2 is returned once with its parametric names.
pub fn adjacency_list() -> Vec<(u8, String, String)> {
    (1..=16u8)
        .map(|n| {
            let (a, b) = transition::pair_names(n);
            (n, a, b)
        })
        .collect()
}

/// Pair of a concrete case, with D_l(a_k) instantiated.
pub fn pair_of(id: CaseId) -> Result<(String, String), CarterError> {
    Ok(transition::catalog(id)?.pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    fn cycle(signs: &[EdgeSign]) -> CarterDiagram {
        let n = signs.len();
        let edges = (0..n).map(|i| Edge { a: i, b: (i + 1) % n, sign: signs[i] }).collect();
        CarterDiagram::new("cycle", labels(n), edges)
    }

    use EdgeSign::{Dotted, Solid};

    #[test]
    fn d4_star_is_valid() {
        let e = (1..4).map(|i| Edge { a: 0, b: i, sign: Solid }).collect();
        let d = CarterDiagram::new("D4", labels(4), e);
        assert!(d.validate().ok());
        assert_eq!(complexity(&d), Complexity { cycles: 0, endpoints: 3, score: 3 });
    }

    #[test]
    fn odd_cycle_is_invalid() {
        let d = cycle(&[Solid, Solid, Solid]);
        let r = d.validate();
        assert!(!r.ok());
        assert!(r.checks.iter().any(|c| c.name == "bipartite" && !c.passed));
    }

    // oracle: a 4-cycle with two solid and two dotted edges has a singular Gram matrix
    #[test]
    fn even_solid_four_cycle_is_invalid() {
        let d = cycle(&[Solid, Solid, Dotted, Dotted]);
        assert_eq!(d.gram().determinant(), 0);
        let r = d.validate();
        assert!(r.checks.iter().any(|c| c.name == "cycle parity" && !c.passed));
        assert!(!r.ok());
    }

    #[test]
    fn d4a1_cycle_is_valid() {
        let d = cycle(&[Solid, Solid, Solid, Dotted]);
        assert!(d.validate().ok(), "{:?}", d.validate().failures());
        assert_eq!(complexity(&d).score, 2);
    }

    #[test]
    fn path_complexity() {
        for n in 2..7 {
            let e = (0..n - 1).map(|i| Edge { a: i, b: i + 1, sign: Solid }).collect();
            let d = CarterDiagram::new("A", labels(n), e);
            assert_eq!(complexity(&d), Complexity { cycles: 0, endpoints: 2, score: 2 });
        }
    }

    #[test]
    fn similarity_of_flipped_cycles() {
        let d = cycle(&[Solid, Solid, Solid, Dotted]);
        let w = similarity_equivalent(&d, &d).unwrap();
        assert_eq!(w.map, vec![0, 1, 2, 3]);
        assert!(w.flips.iter().all(|f| !f));
        // every flip set of the 4-cycle stays similar
        for mask in 0..16u32 {
            let mut e = d.clone();
            for i in 0..4 {
                if mask >> i & 1 == 1 {
                    e = e.flip(i);
                }
            }
            assert!(similarity_equivalent(&d, &e).is_some());
        }
        let all_solid = cycle(&[Solid, Solid, Solid, Solid]);
        assert!(similarity_equivalent(&all_solid, &d).is_none());
    }

    #[test]
    fn chordless_cycles_of_theta_graph() {
        // two 4-cycles sharing the edge 0-1
        let mk = |a, b| Edge { a, b, sign: Solid };
        let d = CarterDiagram::new("theta", labels(6), vec![mk(0, 1), mk(1, 2), mk(2, 3), mk(3, 0), mk(0, 4), mk(4, 5), mk(5, 1)]);
        let mut cycles = d.chordless_cycles();
        cycles.iter_mut().for_each(|c| c.sort_unstable());
        cycles.sort();
        assert_eq!(cycles, vec![vec![0, 1, 2, 3], vec![0, 1, 4, 5]]);
    }

    #[test]
    fn unknown_class() {
        assert!(homogeneous_class("E9").is_err());
        assert!(homogeneous_class("D3").is_err());
    }

    // oracle: the cube has 6 square faces; its 4 induced hexagons are sums of 3 squares
    #[test]
    fn cube_relevant_cycles() {
        let mut edges = Vec::new();
        for v in 0..8usize {
            for bit in [1, 2, 4] {
                if v & bit == 0 {
                    edges.push(Edge { a: v, b: v | bit, sign: Solid });
                }
            }
        }
        let d = CarterDiagram::new("cube", labels(8), edges);
        assert_eq!(d.chordless_cycles().len(), 10);
        assert!(relevant_cycles(&d).iter().all(|c| c.len() == 4));
        assert_eq!(complexity(&d).cycles, 6);
    }
}
