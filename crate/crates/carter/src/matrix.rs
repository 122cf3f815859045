//! Small dense integer matrices.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use serde::{Deserialize, Serialize};

use crate::error::CarterError;

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(d: &[i64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, CarterError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(CarterError::Dimension("ragged rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.concat() })
    }

    /// Identity with column `col` replaced by `column`.
    pub fn identity_with_column(n: usize, col: usize, column: &[i64]) -> Self {
        let mut m = Self::identity(n);
        for (i, &x) in column.iter().enumerate() {
            m[(i, col)] = x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix, CarterError> {
        if self.cols != other.rows {
            return Err(CarterError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// uᵀ·self·v
    pub fn bilinear(&self, u: &[i64], v: &[i64]) -> i64 {
        let bv = self.mul_vec(v);
        u.iter().zip(&bv).map(|(a, b)| a * b).sum()
    }

    /// Mᵀ·self·M
    pub fn congruent(&self, m: &IntMatrix) -> Result<IntMatrix, CarterError> {
        m.transpose().checked_mul(self)?.checked_mul(m)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Simultaneous row/column permutation: out[i][j] = self[perm[i]][perm[j]].
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(perm[i], perm[j])];
            }
        }
        out
    }

    /// Leading principal minors d_1..d_n by fraction-free elimination.
    pub fn leading_minors(&self) -> Vec<i128> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a: Vec<Vec<i128>> =
            (0..n).map(|i| self.row(i).iter().map(|&x| x as i128).collect()).collect();
        let mut minors = Vec::with_capacity(n);
        let mut prev: i128 = 1;
        for k in 0..n {
            let pivot = a[k][k];
            minors.push(pivot);
            if pivot == 0 {
                // later minors need a pivot here; fall back to explicit determinants
                for m in k + 1..n {
                    minors.push(self.leading_submatrix(m + 1).determinant());
                }
                return minors;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = pivot;
        }
        minors
    }

    fn leading_submatrix(&self, m: usize) -> IntMatrix {
        let mut out = Self::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                out[(i, j)] = self[(i, j)];
            }
        }
        out
    }

    /// Exact determinant (Bareiss with row pivoting).
    pub fn determinant(&self) -> i128 {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> =
            (0..n).map(|i| self.row(i).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1;
        let mut prev: i128 = 1;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<i128>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|&x| x as i128).collect()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| a[r][c] != 0) else { continue };
            a.swap(rank, p);
            for r in 0..self.rows {
                if r != rank && a[r][c] != 0 {
                    let (f, g) = (a[r][c], a[rank][c]);
                    for j in 0..self.cols {
                        a[r][j] = a[r][j] * g - a[rank][j] * f;
                    }
                    let h = a[r].iter().fold(0i128, |acc, &x| gcd(acc, x));
                    if h > 1 {
                        a[r].iter_mut().for_each(|x| *x /= h);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse for unimodular matrices.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        let n = self.rows;
        let det = self.determinant();
        if !self.is_square() || det.abs() != 1 {
            return None;
        }
        // adjugate via cofactors; n is small
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.without(i, j).determinant();
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                inv[(j, i)] = (cof * det) as i64;
            }
        }
        Some(inv)
    }

    fn without(&self, r: usize, c: usize) -> IntMatrix {
        let n = self.rows;
        let mut out = Self::zeros(n - 1, n - 1);
        for (ii, i) in (0..n).filter(|&i| i != r).enumerate() {
            for (jj, j) in (0..n).filter(|&j| j != c).enumerate() {
                out[(ii, jj)] = self[(i, j)];
            }
        }
        out
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

/// Bracket layout with aligned signed entries.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.data.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| format!("{x:>w$}")).collect();
            writeln!(f, "[ {} ]", cells.join(" "))?;
        }
        Ok(())
    }
}
