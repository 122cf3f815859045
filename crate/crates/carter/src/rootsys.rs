//! Simply-laced root systems in simple-root coordinates.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan;
use crate::error::CarterError;
use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystemType {
    family: Family,
    rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self, CarterError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            let c = match family {
                Family::A => 'A',
                Family::D => 'D',
                Family::E => 'E',
            };
            return Err(CarterError::InvalidRank { family: c, rank });
        }
        Ok(RootSystemType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Parses "A3", "D6", "E8".
    pub fn parse(s: &str) -> Result<Self, CarterError> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') | Some('a') => Family::A,
            Some('D') | Some('d') => Family::D,
            Some('E') | Some('e') => Family::E,
            _ => return Err(CarterError::Unknown(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| CarterError::Unknown(s.to_string()))?;
        Self::new(family, rank)
    }

    /// Classical root count.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1),
            (Family::D, _) => 2 * n * (n - 1),
            (Family::E, 6) => 72,
            (Family::E, 7) => 126,
            _ => 240,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match (self.family, self.rank) {
            (Family::A, _) => fact(n + 1),
            (Family::D, _) => fact(n) << (n - 1),
            (Family::E, 6) => 51_840,
            (Family::E, 7) => 2_903_040,
            _ => 696_729_600,
        }
    }

    /// Bourbaki edges of the Dynkin diagram, 0-based.
    pub fn dynkin_edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                let mut e = vec![(0, 2), (2, 3), (1, 3)];
                e.extend((3..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// The classical Cartan matrix.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let mut b = IntMatrix::identity(self.rank);
        for i in 0..self.rank {
            b[(i, i)] = 2;
        }
        for (i, j) in self.dynkin_edges() {
            b[(i, j)] = -1;
            b[(j, i)] = -1;
        }
        b
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{c}{}", self.rank)
    }
}

/// Integer coordinates over a basis of simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> Root {
        Root(self.0.iter().map(|x| k * x).collect())
    }

    /// Σ cᵢ·rootsᵢ
    pub fn combination(coeffs: &[i64], roots: &[Root]) -> Root {
        let n = roots.first().map_or(0, |r| r.0.len());
        let mut v = vec![0; n];
        for (c, r) in coeffs.iter().zip(roots) {
            for (x, y) in v.iter_mut().zip(&r.0) {
                *x += c * y;
            }
        }
        Root(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

pub fn inner_product(u: &Root, v: &Root, b: &IntMatrix) -> Result<i64, CarterError> {
    if u.0.len() != b.rows() || v.0.len() != b.rows() {
        return Err(CarterError::Dimension(format!(
            "vectors of length {} and {} against form of size {}",
            u.0.len(),
            v.0.len(),
            b.rows()
        )));
    }
    Ok(b.bilinear(&u.0, &v.0))
}

/// s_m(v) = v − (v,m)·m
pub fn reflect(v: &Root, mirror: &Root, b: &IntMatrix) -> Result<Root, CarterError> {
    let mm = inner_product(mirror, mirror, b)?;
    if mm != 2 {
        return Err(CarterError::NotARoot(mm));
    }
    let k = inner_product(v, mirror, b)?;
    Ok(Root(v.0.iter().zip(&mirror.0).map(|(x, m)| x - k * m).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Extremal {
    Minimal,
    Maximal,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: RootSystemType,
    cartan: IntMatrix,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl RootSystem {
    pub fn root_type(&self) -> RootSystemType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank()).map(|i| Root::simple(self.rank(), i)).collect()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    pub fn position(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn inner(&self, u: &Root, v: &Root) -> i64 {
        self.cartan.bilinear(&u.0, &v.0)
    }

    pub fn highest_root(&self) -> Root {
        self.roots
            .iter()
            .max_by_key(|r| r.0.iter().sum::<i64>())
            .cloned()
            .expect("nonempty root system")
    }
}

/// Closes the simple roots under simple reflections.
pub fn build_root_system(t: RootSystemType) -> RootSystem {
    let b = t.cartan_matrix();
    let n = t.rank;
    let simples: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    let mut seen: BTreeSet<Root> = simples.iter().cloned().collect();
    let mut queue: VecDeque<Root> = simples.iter().cloned().collect();
    while let Some(r) = queue.pop_front() {
        for s in &simples {
            let img = reflect(&r, s, &b).expect("simple roots have norm 2");
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    let roots: Vec<Root> = seen.into_iter().collect();
    let index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    RootSystem { ty: t, cartan: b, roots, index }
}

/// Lowest or highest root of the subsystem generated by `sub`, in ambient coordinates.
///
/// `sub` must have a connected positive definite Gram matrix with entries in
/// {−1, 0, 1} off the diagonal. Dotted entries are removed by sign normalization
/// keeping the first root fixed.
pub fn extremal_root(sub: &[Root], ambient: &RootSystem, which: Extremal) -> Result<Root, CarterError> {
    if sub.is_empty() {
        return Err(CarterError::NotDynkin("empty subset".into()));
    }
    let k = sub.len();
    let mut g = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            g[(i, j)] = inner_product(&sub[i], &sub[j], ambient.cartan())?;
        }
    }
    if (0..k).any(|i| g[(i, i)] != 2) {
        return Err(CarterError::NotDynkin("element of norm other than 2".into()));
    }
    if !cartan::is_positive_definite(&g) {
        return Err(CarterError::NotDynkin("Gram matrix is not positive definite".into()));
    }
    let signs = tree_signs(&g)?;
    let mut norm = g.clone();
    for i in 0..k {
        for j in 0..k {
            norm[(i, j)] = g[(i, j)] * signs[i] * signs[j];
        }
    }
    let highest = highest_in_coordinates(&norm);
    let coeffs: Vec<i64> = highest
        .iter()
        .zip(&signs)
        .map(|(c, s)| match which {
            Extremal::Maximal => c * s,
            Extremal::Minimal => -c * s,
        })
        .collect();
    let r = Root::combination(&coeffs, sub);
    if !ambient.contains(&r) {
        return Err(CarterError::ImageNotRoot(r.0));
    }
    Ok(r)
}

// signs εᵢ with εᵢεⱼgᵢⱼ ≤ 0, ε₀ = 1; requires a connected graph
fn tree_signs(g: &IntMatrix) -> Result<Vec<i64>, CarterError> {
    let k = g.rows();
    let mut signs = vec![0i64; k];
    signs[0] = 1;
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for j in 0..k {
            if i == j || g[(i, j)] == 0 {
                continue;
            }
            if g[(i, j)].abs() != 1 {
                return Err(CarterError::NotDynkin(format!("inner product {}", g[(i, j)])));
            }
            let want = -g[(i, j)] * signs[i];
            if signs[j] == 0 {
                signs[j] = want;
                queue.push_back(j);
            } else if signs[j] != want {
                return Err(CarterError::NotDynkin("signs cannot be normalized".into()));
            }
        }
    }
    if signs.contains(&0) {
        return Err(CarterError::NotDynkin("subset is reducible".into()));
    }
    Ok(signs)
}

// highest root of the system with Cartan matrix g, coordinates over its simple roots
fn highest_in_coordinates(g: &IntMatrix) -> Vec<i64> {
    let k = g.rows();
    let simples: Vec<Root> = (0..k).map(|i| Root::simple(k, i)).collect();
    let mut seen: BTreeSet<Root> = simples.iter().cloned().collect();
    let mut queue: VecDeque<Root> = simples.iter().cloned().collect();
    while let Some(r) = queue.pop_front() {
        for s in &simples {
            let img = reflect(&r, s, g).expect("norm 2");
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    seen.into_iter().max_by_key(|r| r.0.iter().sum::<i64>()).expect("nonempty").0
}
