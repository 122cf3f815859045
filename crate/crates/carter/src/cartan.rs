//! Partial Cartan matrices, exact definiteness and the Jacobi eigensolver.

use serde::{Deserialize, Serialize};

use crate::diagram::{CarterDiagram, EdgeSign};
use crate::error::CarterError;
use crate::matrix::IntMatrix;

pub const DEFAULT_TOL: f64 = 1e-10;
const OFF_THRESHOLD: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Symmetric integer matrix with diagonal 2 and off-diagonal entries in {−1, 0, 1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialCartanMatrix {
    labels: Vec<String>,
    entries: IntMatrix,
}

impl PartialCartanMatrix {
    pub fn new(labels: Vec<String>, entries: IntMatrix) -> Result<Self, CarterError> {
        let n = entries.rows();
        if !entries.is_symmetric() || labels.len() != n {
            return Err(CarterError::Dimension("partial Cartan matrix must be square, symmetric and labeled".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let x = entries[(i, j)];
                let ok = if i == j { x == 2 } else { (-1..=1).contains(&x) };
                if !ok {
                    return Err(CarterError::InvalidDiagram(format!("entry ({i},{j}) = {x}")));
                }
            }
        }
        Ok(PartialCartanMatrix { labels, entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.entries
    }
}

/// Entry (i,i) = 2, −1 on solid edges, +1 on dotted edges.
pub fn partial_cartan(d: &CarterDiagram) -> Result<PartialCartanMatrix, CarterError> {
    let report = d.validate();
    if !report.ok() {
        return Err(CarterError::InvalidDiagram(format!("{}: {}", d.name, report.failures().join("; "))));
    }
    PartialCartanMatrix::new(d.nodes.clone(), gram_of(d))
}

/// Signed adjacency form without validity checks.
pub fn gram_of(d: &CarterDiagram) -> IntMatrix {
    let n = d.nodes.len();
    let mut b = IntMatrix::zeros(n, n);
    for i in 0..n {
        b[(i, i)] = 2;
    }
    for e in &d.edges {
        let v = match e.sign {
            EdgeSign::Solid => -1,
            EdgeSign::Dotted => 1,
        };
        b[(e.a, e.b)] = v;
        b[(e.b, e.a)] = v;
    }
    b
}

/// Exact test: every leading principal minor is positive.
pub fn is_positive_definite(b: &IntMatrix) -> bool {
    b.is_symmetric() && b.leading_minors().iter().all(|&m| m > 0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub max: f64,
    pub tolerance: f64,
    pub sweeps: usize,
}

/// Eigenvalues of a symmetric integer matrix, ascending, residual-checked.
pub fn spectrum(b: &IntMatrix, tol: f64) -> Result<Spectrum, CarterError> {
    if !b.is_symmetric() {
        return Err(CarterError::Dimension("spectrum needs a symmetric matrix".into()));
    }
    let n = b.rows();
    let a0: Vec<Vec<f64>> = (0..n).map(|i| b.row(i).iter().map(|&x| x as f64).collect()).collect();
    let (vals, vecs, sweeps) = jacobi(&a0)?;
    let mut worst: f64 = 0.0;
    for k in 0..n {
        let v: Vec<f64> = (0..n).map(|i| vecs[i][k]).collect();
        let norm = v.iter().map(|x| x.abs()).fold(0.0, f64::max);
        for i in 0..n {
            let bv: f64 = (0..n).map(|j| a0[i][j] * v[j]).sum();
            worst = worst.max((bv - vals[k] * v[i]).abs() / norm);
        }
    }
    if worst >= tol {
        return Err(CarterError::Residual { residual: worst, tol });
    }
    let mut eigenvalues = vals;
    eigenvalues.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    let max = eigenvalues.last().copied().unwrap_or(f64::NAN);
    Ok(Spectrum { eigenvalues, max, tolerance: tol, sweeps })
}

// cyclic Jacobi; returns eigenvalues, eigenvector columns and sweep count
fn jacobi(a0: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>, usize), CarterError> {
    let n = a0.len();
    let mut a = a0.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect()).collect();
    let off = |a: &Vec<Vec<f64>>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j] * a[i][j];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off(&a) > OFF_THRESHOLD {
        if sweeps == MAX_SWEEPS {
            return Err(CarterError::NoConvergence { sweeps, off: off(&a) });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    Ok(((0..n).map(|i| a[i][i]).collect(), v, sweeps))
}

/// Exact check of Mᵀ·B_from·M = B_to.
pub fn congruence_check(m: &IntMatrix, b_from: &IntMatrix, b_to: &IntMatrix) -> Result<bool, CarterError> {
    if m.rows() != b_from.rows() || b_from.rows() != b_to.rows() || !m.is_square() {
        return Err(CarterError::Dimension(format!(
            "M {}x{}, B_from {}, B_to {}",
            m.rows(),
            m.cols(),
            b_from.rows(),
            b_to.rows()
        )));
    }
    Ok(&b_from.congruent(m)? == b_to)
}

/// Labeled bracket layout used in reports.
pub fn pretty(labels: &[String], b: &IntMatrix) -> String {
    let lw = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let w = b.as_slice().iter().map(|x| x.to_string().len()).max().unwrap_or(1).max(2);
    let mut out = String::new();
    for (i, l) in labels.iter().enumerate() {
        let cells: Vec<String> = b.row(i).iter().map(|x| format!("{x:>w$}")).collect();
        out.push_str(&format!("{l:<lw$} [ {} ]\n", cells.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn a2_spectrum_closed_form() {
        let s = spectrum(&m(&[vec![2, -1], vec![-1, 2]]), DEFAULT_TOL).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((s.eigenvalues[1] - 3.0).abs() < 1e-12);
    }

    // oracle: eigenvalues of A_n are 4 sin²(kπ / 2(n+1))
    #[test]
    fn a_n_spectrum_closed_form() {
        for n in 1..=9usize {
            let mut b = IntMatrix::zeros(n, n);
            for i in 0..n {
                b[(i, i)] = 2;
                if i + 1 < n {
                    b[(i, i + 1)] = -1;
                    b[(i + 1, i)] = -1;
                }
            }
            let s = spectrum(&b, DEFAULT_TOL).unwrap();
            let mut oracle: Vec<f64> =
                (1..=n).map(|k| 4.0 * (k as f64 * PI / (2.0 * (n as f64 + 1.0))).sin().powi(2)).collect();
            oracle.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (x, y) in s.eigenvalues.iter().zip(&oracle) {
                assert!((x - y).abs() < 1e-9, "n={n}");
            }
        }
    }

    #[test]
    fn scalar_matrix() {
        let s = spectrum(&m(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]), DEFAULT_TOL).unwrap();
        assert!(s.eigenvalues.iter().all(|x| (x - 2.0).abs() < 1e-15));
        assert_eq!(s.sweeps, 0);
    }

    #[test]
    fn definiteness_boundaries() {
        let tri = m(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        assert_eq!(tri.leading_minors(), vec![2, 3, 0]);
        assert!(!is_positive_definite(&tri));
        assert!(!is_positive_definite(&m(&[vec![2, -2], vec![-2, 2]])));
        assert!(is_positive_definite(&m(&[vec![2, 1], vec![1, 2]])));
    }

    #[test]
    fn congruence_identity() {
        let b = m(&[vec![2, -1], vec![-1, 2]]);
        assert!(congruence_check(&IntMatrix::identity(2), &b, &b).unwrap());
        assert!(congruence_check(&IntMatrix::identity(3), &b, &b).is_err());
    }

    #[test]
    fn rejects_bad_entries() {
        let labels = vec!["x".to_string(), "y".to_string()];
        assert!(PartialCartanMatrix::new(labels.clone(), m(&[vec![2, -2], vec![-2, 2]])).is_err());
        assert!(PartialCartanMatrix::new(labels.clone(), m(&[vec![2, 1], vec![0, 2]])).is_err());
        assert!(PartialCartanMatrix::new(labels, m(&[vec![2, 1], vec![1, 2]])).is_ok());
    }

    #[test]
    fn pretty_aligns() {
        let s = pretty(&["a".into(), "bb".into()], &m(&[vec![2, -1], vec![-1, 2]]));
        assert_eq!(s, "a  [  2 -1 ]\nbb [ -1  2 ]\n");
    }
}
