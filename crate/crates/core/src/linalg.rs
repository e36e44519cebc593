//! Small dense linear algebra kernels: a row-major matrix, LU with partial
//! pivoting, a 2-norm condition number and a symmetric tridiagonal eigensolver.

use std::ops::{Index, IndexMut};

use crate::error::{invalid, Error, Result};

/// Row-major dense matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row vectors, which must all have the same length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(invalid("ragged rows"));
        }
        Ok(Self { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
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

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| c * v).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: f64, other: &DenseMatrix) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(invalid("matrix dimensions differ"));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + c * b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(invalid(format!(
                "vector of length {} does not match {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(invalid("inner dimensions differ"));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pivots smaller than this in magnitude are treated as exact zeros.
pub const PIVOT_FLOOR: f64 = 1e-300;

/// Factorisation `P A = L U`, reusable for many right-hand sides.
#[derive(Debug, Clone)]
pub struct LuDecomposition {
    lu: DenseMatrix,
    perm: Vec<usize>,
}

impl LuDecomposition {
    pub fn new(a: &DenseMatrix) -> Result<Self> {
        if !a.is_square() || a.rows() == 0 {
            return Err(invalid(format!("LU needs a non-empty square matrix, got {}x{}", a.rows, a.cols)));
        }
        if !a.is_finite() {
            return Err(Error::NonFinite("matrix entry".into()));
        }
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (piv_row, piv_abs) = (k..n)
                .map(|i| (i, lu[(i, k)].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if piv_abs < PIVOT_FLOOR {
                return Err(Error::SingularMatrix { column: k, pivot: piv_abs });
            }
            if piv_row != k {
                perm.swap(k, piv_row);
                for j in 0..n {
                    lu.data.swap(k * n + j, piv_row * n + j);
                }
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor != 0.0 {
                    for j in k + 1..n {
                        lu[(i, j)] -= factor * lu[(k, j)];
                    }
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if rhs.len() != n {
            return Err(invalid(format!("rhs length {} does not match dimension {n}", rhs.len())));
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let s = dot(&self.lu.row(i)[..i], &x[..i]);
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s = dot(&self.lu.row(i)[i + 1..], &x[i + 1..]);
            x[i] = (x[i] - s) / self.lu[(i, i)];
        }
        Ok(x)
    }

    /// Explicit inverse `A^{-1}`. Prefer [`LuDecomposition::solve`] for linear
    /// systems; the inverse is far less accurate on ill-conditioned matrices.
    pub fn inverse(&self) -> Result<DenseMatrix> {
        self.solve_matrix(&DenseMatrix::identity(self.dim()))
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if rhs.rows != self.dim() {
            return Err(invalid("rhs rows do not match dimension"));
        }
        let mut out = DenseMatrix::zeros(rhs.rows, rhs.cols);
        for j in 0..rhs.cols {
            let col = self.solve(&rhs.column(j))?;
            for (i, v) in col.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        Ok(out)
    }
}

/// Solves `A x = rhs` by LU with partial pivoting.
pub fn lu_solve(a: &DenseMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    LuDecomposition::new(a)?.solve(rhs)
}

/// Solves `A X = B` for a matrix right-hand side.
pub fn lu_solve_matrix(a: &DenseMatrix, rhs: &DenseMatrix) -> Result<DenseMatrix> {
    LuDecomposition::new(a)?.solve_matrix(rhs)
}

/// Singular values of a square or tall matrix by one-sided Jacobi rotations,
/// sorted in decreasing order.
pub fn singular_values(a: &DenseMatrix) -> Vec<f64> {
    let (m, n) = (a.rows, a.cols);
    // columns stored contiguously
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| a.column(j)).collect();
    let tol = f64::EPSILON * (m as f64).max(1.0);
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                let (cp, cq) = (&mut left[p], &mut right[0]);
                for i in 0..m {
                    let up = cp[i];
                    let uq = cq[i];
                    cp[i] = c * up - s * uq;
                    cq[i] = s * up + c * uq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| dot(c, c).sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Spectral condition number `sigma_max / sigma_min`; `+inf` for a singular matrix.
pub fn condition_number(a: &DenseMatrix) -> f64 {
    if !a.is_square() || a.rows == 0 || !a.is_finite() {
        return f64::INFINITY;
    }
    let sv = singular_values(a);
    let (smax, smin) = (sv[0], sv[sv.len() - 1]);
    if smin <= smax * PIVOT_FLOOR || smin == 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    }
}

/// Implicit QL on a symmetric tridiagonal matrix, rotating the tracked rows
/// of the eigenvector matrix along the way.
fn tql_implicit(d: &mut [f64], off: &[f64], tracked: &mut [Vec<f64>]) -> Result<()> {
    let n = d.len();
    let mut e: Vec<f64> = off.to_vec();
    e.push(0.0);
    let cap = 30 * n.max(1);
    let mut iterations = 0usize;
    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > cap {
                return Err(Error::NoConvergence(l));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in tracked.iter_mut() {
                    let f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn check_tridiag(diag: &[f64], off: &[f64]) -> Result<()> {
    if diag.is_empty() {
        return Err(invalid("empty tridiagonal matrix"));
    }
    if off.len() + 1 != diag.len() {
        return Err(invalid(format!(
            "off-diagonal length {} must be diagonal length {} minus one",
            off.len(),
            diag.len()
        )));
    }
    if diag.iter().chain(off).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("tridiagonal entry".into()));
    }
    Ok(())
}

/// Eigenvalues (ascending) of a symmetric tridiagonal matrix together with the
/// first component of each unit eigenvector, normalised to be non-negative.
pub fn symtridiag_eigen(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    check_tridiag(diag, off)?;
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut first = vec![0.0; n];
    first[0] = 1.0;
    let mut tracked = vec![first];
    tql_implicit(&mut d, off, &mut tracked)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&i| d[i]).collect();
    let comps = order.iter().map(|&i| tracked[0][i].abs()).collect();
    Ok((values, comps))
}

/// Full eigendecomposition of a symmetric tridiagonal matrix: ascending
/// eigenvalues and the matching unit eigenvectors.
pub fn symtridiag_eigen_full(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    check_tridiag(diag, off)?;
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut z: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut r = vec![0.0; n];
            r[i] = 1.0;
            r
        })
        .collect();
    tql_implicit(&mut d, off, &mut z)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = order
        .iter()
        .map(|&k| {
            let sign = if z[0][k] < 0.0 { -1.0 } else { 1.0 };
            (0..n).map(|row| sign * z[row][k]).collect()
        })
        .collect();
    Ok((values, vectors))
}
