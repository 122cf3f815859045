//! Completion by maximal roots of D4-subsets and the enhanced bases it produces.

use serde::{Deserialize, Serialize};

use crate::diagram::{homogeneous_class, registry, signed_isomorphism, CarterDiagram, EdgeSign};
use crate::error::CarterError;
use crate::matrix::IntMatrix;
use crate::rootsys::{build_root_system, extremal_root, Extremal, Root, RootSystem, RootSystemType};
use crate::weyl::{gram, realize_diagram, GammaSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompletionMode {
    Maximal,
    /// Adds −(maximal root) of each D4-subset.
    Minimal,
}

/// The D4-subset an extra node was generated from; leaves carry the sign used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub centre: String,
    pub leaves: Vec<(i64, String)>,
}

impl Provenance {
    pub fn describe(&self) -> String {
        let leaves: Vec<String> =
            self.leaves.iter().map(|(s, l)| if *s < 0 { format!("-{l}") } else { l.clone() }).collect();
        format!("{{{}; {}}}", self.centre, leaves.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extra {
    pub label: String,
    pub root: Root,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnhancedBasis {
    pub base: GammaSet,
    pub extras: Vec<Extra>,
    pub mode: CompletionMode,
}

impl EnhancedBasis {
    pub fn labels(&self) -> Vec<String> {
        self.base.labels().iter().cloned().chain(self.extras.iter().map(|e| e.label.clone())).collect()
    }

    pub fn roots(&self) -> Vec<Root> {
        self.base.roots.iter().cloned().chain(self.extras.iter().map(|e| e.root.clone())).collect()
    }

    pub fn extra(&self, label: &str) -> Option<&Extra> {
        self.extras.iter().find(|e| e.label == label)
    }

    /// Nodes and signed edges from inner products of all introduced roots.
    pub fn diagram(&self, ambient: &RootSystem) -> Result<CarterDiagram, CarterError> {
        let name = format!("enhanced {}", self.base.diagram.name);
        CarterDiagram::from_gram(&name, self.labels(), &gram(&self.roots(), ambient))
    }

    /// Undirected DOT; extra nodes drawn as double circles, dotted edges dashed.
    pub fn to_dot(&self, ambient: &RootSystem) -> Result<String, CarterError> {
        let d = self.diagram(ambient)?;
        let extras: Vec<&str> = self.extras.iter().map(|e| e.label.as_str()).collect();
        Ok(crate::cli::diagram_dot(&d, &extras))
    }
}

struct Node {
    label: String,
    root: Root,
}

fn star_root(centre: &Root, leaves: &[Root; 3], mode: CompletionMode) -> Root {
    let r = leaves.iter().fold(centre.scale(2), |acc, l| acc.add(l));
    match mode {
        CompletionMode::Maximal => r,
        CompletionMode::Minimal => r.neg(),
    }
}

fn present(nodes: &[Node], r: &Root) -> bool {
    let n = r.neg();
    nodes.iter().any(|x| x.root == *r || x.root == n)
}

// first D4-subset (lexicographic on centre, then leaf triple) whose root is new
fn next_extra(nodes: &[Node], ambient: &RootSystem, mode: CompletionMode) -> Option<(Root, Provenance)> {
    for (c, centre) in nodes.iter().enumerate() {
        let tips: Vec<(i64, usize)> = (0..nodes.len())
            .filter(|&t| t != c)
            .filter_map(|t| match ambient.inner(&centre.root, &nodes[t].root) {
                -1 => Some((1, t)),
                1 => Some((-1, t)),
                _ => None,
            })
            .collect();
        let signed = |(s, t): (i64, usize)| nodes[t].root.scale(s);
        for i in 0..tips.len() {
            for j in i + 1..tips.len() {
                if ambient.inner(&signed(tips[i]), &signed(tips[j])) != 0 {
                    continue;
                }
                for k in j + 1..tips.len() {
                    let (a, b, d) = (signed(tips[i]), signed(tips[j]), signed(tips[k]));
                    if ambient.inner(&a, &d) != 0 || ambient.inner(&b, &d) != 0 {
                        continue;
                    }
                    let r = star_root(&centre.root, &[a, b, d], mode);
                    if !present(nodes, &r) {
                        let leaves = [tips[i], tips[j], tips[k]].iter().map(|&(s, t)| (s, nodes[t].label.clone())).collect();
                        return Some((r, Provenance { centre: centre.label.clone(), leaves }));
                    }
                }
            }
        }
    }
    None
}

/// One scripted step: centre label and three signed leaf labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptStep {
    pub centre: String,
    pub leaves: [(i64, String); 3],
}

impl ScriptStep {
    pub fn new(centre: &str, leaves: [(i64, &str); 3]) -> Self {
        ScriptStep { centre: centre.into(), leaves: leaves.map(|(s, l)| (s, l.to_string())) }
    }
}

fn run_step(nodes: &[Node], step: &ScriptStep, ambient: &RootSystem, mode: CompletionMode) -> Result<Root, CarterError> {
    let find = |l: &str| {
        nodes
            .iter()
            .find(|n| n.label == l)
            .map(|n| n.root.clone())
            .ok_or_else(|| CarterError::Unknown(l.to_string()))
    };
    let c = find(&step.centre)?;
    let mut leaves = Vec::with_capacity(3);
    for (s, l) in &step.leaves {
        leaves.push(find(l)?.scale(*s));
    }
    let mut sub = vec![c.clone()];
    sub.extend(leaves.iter().cloned());
    let g = gram(&sub, ambient);
    let star = (1..4).all(|i| g[(0, i)] == -1) && (1..4).all(|i| (1..4).all(|j| i == j || g[(i, j)] == 0));
    if !star {
        return Err(CarterError::InvalidGammaSet(format!("{} is not a D4-subset", step.centre)));
    }
    let max = extremal_root(&sub, ambient, Extremal::Maximal)?;
    let r = star_root(&c, &[leaves[0].clone(), leaves[1].clone(), leaves[2].clone()], mode);
    debug_assert!(r == max || r == max.neg());
    Ok(r)
}

/// Applies `script` first, then adds maximal roots of D4-subsets until nothing new arises.
pub fn complete_scripted(
    s: &GammaSet,
    ambient: &RootSystem,
    mode: CompletionMode,
    script: &[ScriptStep],
) -> Result<EnhancedBasis, CarterError> {
    let mut nodes: Vec<Node> =
        s.labels().iter().zip(&s.roots).map(|(l, r)| Node { label: l.clone(), root: r.clone() }).collect();
    let mut extras = Vec::new();
    let mut push = |nodes: &mut Vec<Node>, r: Root, provenance: Provenance| {
        let label = format!("m{}", extras.len() + 1);
        nodes.push(Node { label: label.clone(), root: r.clone() });
        extras.push(Extra { label, root: r, provenance });
    };
    for step in script {
        let r = run_step(&nodes, step, ambient, mode)?;
        if present(&nodes, &r) {
            return Err(CarterError::InvalidGammaSet(format!("scripted step at {} adds nothing", step.centre)));
        }
        let provenance = Provenance { centre: step.centre.clone(), leaves: step.leaves.to_vec() };
        push(&mut nodes, r, provenance);
    }
    while let Some((r, provenance)) = next_extra(&nodes, ambient, mode) {
        push(&mut nodes, r, provenance);
    }
    Ok(EnhancedBasis { base: s.clone(), extras, mode })
}

pub fn complete(s: &GammaSet, ambient: &RootSystem, mode: CompletionMode) -> Result<EnhancedBasis, CarterError> {
    complete_scripted(s, ambient, mode, &[])
}

/// Extras a second completion pass would add (zero at a fixed point).
pub fn recomplete_count(e: &EnhancedBasis, ambient: &RootSystem) -> Result<usize, CarterError> {
    let labels = e.labels();
    let roots = e.roots();
    let nodes: Vec<Node> = labels.into_iter().zip(roots).map(|(label, root)| Node { label, root }).collect();
    let mut count = 0;
    let mut nodes = nodes;
    while let Some((r, _)) = next_extra(&nodes, ambient, e.mode) {
        nodes.push(Node { label: format!("x{count}"), root: r });
        count += 1;
    }
    Ok(count)
}

/// Simple roots of `t` as a GammaSet labeled a1..an (Bourbaki order).
pub fn dynkin_set(ambient: &RootSystem) -> Result<GammaSet, CarterError> {
    let labels: Vec<String> = (1..=ambient.rank()).map(|i| format!("a{i}")).collect();
    GammaSet::from_roots(&ambient.root_type().to_string(), labels, ambient.simple_roots(), ambient)
}

/// Generating sets of the extra nodes as printed for E6 and E7.
pub fn reference_script(t: RootSystemType) -> Vec<ScriptStep> {
    let m1 = ScriptStep::new("a4", [(1, "a2"), (1, "a3"), (1, "a5")]);
    let m2 = ScriptStep::new("m1", [(-1, "a4"), (1, "a1"), (1, "a6")]);
    match t.to_string().as_str() {
        "E6" => vec![m1, m2],
        "E7" => vec![
            m1,
            m2,
            ScriptStep::new("a6", [(1, "a5"), (1, "a7"), (1, "m1")]),
            ScriptStep::new("a1", [(1, "a3"), (1, "m1"), (1, "m3")]),
        ],
        _ => Vec::new(),
    }
}

pub fn extra_node_count(t: RootSystemType) -> Result<usize, CarterError> {
    if t.rank() > 10 {
        return Err(CarterError::InvalidRank { family: t.to_string().chars().next().unwrap_or('?'), rank: t.rank() });
    }
    let ambient = build_root_system(t);
    Ok(complete(&dynkin_set(&ambient)?, &ambient, CompletionMode::Maximal)?.extras.len())
}

/// Values of the cardinality table: D_{2m}, D_{2m+1} → m−1; E6, E7, E8 → 2, 4, 8.
pub fn tabulated_extra_count(t: RootSystemType) -> Option<usize> {
    let name = t.to_string();
    match name.as_str() {
        "E6" => Some(2),
        "E7" => Some(4),
        "E8" => Some(8),
        _ if name.starts_with('D') => Some(t.rank() / 2 - 1),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkCheck {
    pub class: String,
    pub extras: usize,
    pub cycle_bearing: Vec<String>,
}

impl RemarkCheck {
    pub fn holds(&self) -> bool {
        self.extras == self.cycle_bearing.len()
    }
}

pub fn remark_correspondence(class: &str) -> Result<RemarkCheck, CarterError> {
    let c = homogeneous_class(class)?;
    let t = RootSystemType::parse(&c.dynkin.name)?;
    Ok(RemarkCheck {
        class: c.name.clone(),
        extras: extra_node_count(t)?,
        cycle_bearing: c.cycle_bearing().iter().map(|d| d.name.clone()).collect(),
    })
}

pub fn check_remark_correspondence(class: &str) -> Result<bool, CarterError> {
    Ok(remark_correspondence(class)?.holds())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub description: String,
    pub computed: i64,
    pub expected: i64,
}

impl Relation {
    pub fn holds(&self) -> bool {
        self.computed == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conjecture2Report {
    pub diagram: String,
    pub realization: GammaSet,
    pub m1: Root,
    pub m2: Root,
    /// m1 and m2 are the maximal roots of their D4-subsets.
    pub maximal: bool,
    pub relations: Vec<Relation>,
    /// The greedy completion of the realization adds the same two roots up to sign.
    pub matches_completion: bool,
    /// The enhanced diagram is similar to that of E6.
    pub similar_to_e6: bool,
}

impl Conjecture2Report {
    pub fn ok(&self) -> bool {
        self.maximal && self.relations.iter().all(Relation::holds)
    }
}

// (coefficient, label) combination of realized roots
fn combo(s: &GammaSet, terms: &[(i64, &str)]) -> Result<Root, CarterError> {
    let mut r = Root(vec![0; s.roots[0].0.len()]);
    for (c, l) in terms {
        let x = s.root(l).ok_or_else(|| CarterError::Unknown(l.to_string()))?;
        r = r.add(&x.scale(*c));
    }
    Ok(r)
}

/// Exact check of the printed inner products for the enhanced E6(a1) and E6(a2).
pub fn check_conjecture2_relations(name: &str) -> Result<Conjecture2Report, CarterError> {
    let d = registry().get(name).ok_or_else(|| CarterError::Unknown(name.into()))?;
    let e6 = build_root_system(RootSystemType::parse("E6")?);
    let s = realize_diagram(d, &e6, 1)
        .pop()
        .ok_or_else(|| CarterError::InvalidGammaSet(format!("no realization of {name} in E6")))?;
    // (centre, leaves) generating m1 and m2
    let (g1, g2): ((&str, [(i64, &str); 3]), (&str, [(i64, &str); 3])) = match name {
        "E6(a1)" => (("b1", [(1, "a1"), (1, "a2"), (1, "a3")]), ("a2", [(1, "b1"), (1, "b2"), (-1, "b3~")])),
        "E6(a2)" => (("a3", [(1, "b3~"), (1, "b2~"), (1, "b1")]), ("b1", [(1, "a1"), (1, "a2"), (1, "a3")])),
        _ => return Err(CarterError::Unknown(format!("{name} has no printed relations"))),
    };
    let build = |(c, leaves): (&str, [(i64, &str); 3])| -> Result<(Root, bool), CarterError> {
        let mut terms = vec![(2, c)];
        terms.extend(leaves.iter().copied());
        let r = combo(&s, &terms)?;
        let mut sub = vec![combo(&s, &[(1, c)])?];
        for (sg, l) in leaves {
            sub.push(combo(&s, &[(sg, l)])?);
        }
        let max = extremal_root(&sub, &e6, Extremal::Maximal)?;
        Ok((r.clone(), r == max && e6.contains(&r)))
    };
    let (m1, ok1) = build(g1)?;
    let (m2, ok2) = build(g2)?;
    let ip = |a: &Root, b: &Root| e6.inner(a, b);
    let node = |l: &str| combo(&s, &[(1, l)]);
    let mut relations = Vec::new();
    let mut rel = |description: String, computed: i64, expected: i64| {
        relations.push(Relation { description, computed, expected })
    };
    if name == "E6(a1)" {
        for l in ["a1", "a2", "a3", "b3~"] {
            rel(format!("(m1, {l})"), ip(&m1, &node(l)?), 0);
        }
        rel("(m1, b2)".into(), ip(&m1, &node("b2")?), -1);
        rel("(a2, b2)".into(), ip(&node("a2")?, &node("b2")?), -1);
        rel("(m1, b1)".into(), ip(&m1, &node("b1")?), 1);
        rel("(m1, b1 + b2)".into(), ip(&m1, &combo(&s, &[(1, "b1"), (1, "b2")])?), 0);
        rel("(m1, m2)".into(), ip(&m1, &m2), 0);
    } else {
        for l in ["b3~", "b2~", "b1", "a1", "a2"] {
            rel(format!("(m1, {l})"), ip(&m1, &node(l)?), 0);
        }
        rel("(m1, a3)".into(), ip(&m1, &node("a3")?), 1);
        rel("(m1, m2)".into(), ip(&m1, &m2), 1);
    }
    let enhanced = complete(&s, &e6, CompletionMode::Maximal)?;
    let same = |r: &Root| enhanced.extras.iter().any(|e| e.root == *r || e.root == r.neg());
    let matches_completion = enhanced.extras.len() == 2 && same(&m1) && same(&m2);
    let dyn_enh = complete(&dynkin_set(&e6)?, &e6, CompletionMode::Maximal)?;
    let similar_to_e6 = signed_isomorphism(&gram(&enhanced.roots(), &e6), &gram(&dyn_enh.roots(), &e6), true).is_some();
    Ok(Conjecture2Report {
        diagram: name.to_string(),
        realization: s,
        m1,
        m2,
        maximal: ok1 && ok2,
        relations,
        matches_completion,
        similar_to_e6,
    })
}

/// Unsigned structure of two enhanced diagrams agrees (footnote on minimal roots).
pub fn topologically_isomorphic(a: &IntMatrix, b: &IntMatrix) -> bool {
    let unsign = |m: &IntMatrix| {
        let mut u = m.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    u[(i, j)] = -m[(i, j)].abs();
                }
            }
        }
        u
    };
    signed_isomorphism(&unsign(a), &unsign(b), false).is_some()
}

pub fn edge_sign_counts(d: &CarterDiagram) -> (usize, usize) {
    let dotted = d.edges.iter().filter(|e| e.sign == EdgeSign::Dotted).count();
    (d.edges.len() - dotted, dotted)
}
