//! Small dense linear algebra: a row-major `f64` matrix, cyclic Jacobi for
//! symmetric eigenproblems, Cholesky, and a few complex-vector helpers.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::par;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Builds a matrix from its columns; all columns must share one length.
    pub fn from_columns(rows: usize, columns: &[Vec<f64>]) -> Self {
        let mut m = Mat::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
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

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let (n, m) = (self.rows, other.cols);
        let mut out = Mat::zeros(n, m);
        par::for_each_row(&mut out.data, m, |i, row| {
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for (o, &b) in row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        });
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_cvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| **a != 0.0)
                    .map(|(a, b)| b * *a)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(f64, f64) -> f64) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `(A + Aᵀ)/2`.
    pub fn symmetric_part(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| {
            0.5 * (self[(i, j)] + self[(j, i)])
        })
    }

    /// `(A - Aᵀ)/2`.
    pub fn skew_part(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| {
            0.5 * (self[(i, j)] - self[(j, i)])
        })
    }

    /// Frobenius norm of `A - Aᵀ`.
    pub fn asymmetry(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self[(i, j)] - self[(j, i)];
                s += d * d;
            }
        }
        s.sqrt()
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigen decomposition of a real symmetric matrix, eigenvalues ascending and
/// eigenvectors stored as the matching columns of `vectors`.
#[derive(Clone, Debug)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Mat,
    pub sweeps: usize,
}

impl SymEigen {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k)
    }
}

/// Relative off-diagonal tolerance for [`jacobi_eigen`].
pub const JACOBI_TOL: f64 = 1e-13;
/// Sweep cap for [`jacobi_eigen`].
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigensolver. Only the symmetric part of `a` is used.
///
/// Converges when the off-diagonal Frobenius norm falls below
/// `JACOBI_TOL * ‖A‖_F`; gives up after `JACOBI_MAX_SWEEPS` sweeps.
pub fn jacobi_eigen(a: &Mat) -> Result<SymEigen> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.symmetric_part();
    let mut v = Mat::identity(n);
    let scale = m.frobenius();
    let target = JACOBI_TOL * scale;

    let off_norm = |m: &Mat| {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * m[(i, j)] * m[(i, j)];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    let mut off = off_norm(&m);
    while off > target {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        // skip rotations that cannot matter at this precision
        let skip = if sweeps < 4 {
            0.0
        } else {
            f64::EPSILON * scale / (n as f64)
        };
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.abs() <= skip {
                    if apq != 0.0 {
                        m[(p, q)] = 0.0;
                        m[(q, p)] = 0.0;
                    }
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut m, &mut v, p, q, c, s);
            }
        }
        off = off_norm(&m);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = Mat::from_fn(n, n, |r, k| v[(r, order[k])]);
    Ok(SymEigen {
        values,
        vectors,
        sweeps,
    })
}

fn rotate(m: &mut Mat, v: &mut Mat, p: usize, q: usize, c: f64, s: f64) {
    let n = m.rows();
    for k in 0..n {
        let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = c * mkp - s * mkq;
        m[(k, q)] = s * mkp + c * mkq;
    }
    for k in 0..n {
        let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = c * mpk - s * mqk;
        m[(q, k)] = s * mpk + c * mqk;
    }
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Lower-triangular `L` with `A = L Lᵀ`.
pub fn cholesky(a: &Mat) -> Result<Mat> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let mut l = Mat::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d <= 0.0 {
            return Err(Error::NotPositiveDefinite);
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

/// Inverse of a lower-triangular matrix with nonzero diagonal.
pub fn lower_inverse(l: &Mat) -> Mat {
    let n = l.rows();
    let mut inv = Mat::zeros(n, n);
    for col in 0..n {
        for i in col..n {
            let mut s = if i == col { 1.0 } else { 0.0 };
            for k in col..i {
                s -= l[(i, k)] * inv[(k, col)];
            }
            inv[(i, col)] = s / l[(i, i)];
        }
    }
    inv
}

/// Groups sorted values into runs whose consecutive gaps are at most `gap`.
/// Returns half-open index ranges into `sorted`.
pub fn cluster_sorted(sorted: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[i - 1] > gap {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

pub fn cnorm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian inner product `⟨u, v⟩ = Σ conj(uᵢ) vᵢ`.
pub fn cdot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Numerical rank of a set of complex vectors (Gaussian elimination with
/// complete pivoting; pivots below `rel_tol` times the largest entry count
/// as zero).
pub fn complex_rank(vectors: &[Vec<Complex64>], rel_tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut rows: Vec<Vec<Complex64>> = vectors.to_vec();
    let cols = rows[0].len();
    let scale = rows
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, z| m.max(z.norm()));
    if scale == 0.0 {
        return 0;
    }
    let mut rank = 0;
    let mut used_cols = vec![false; cols];
    for r in 0..rows.len() {
        // complete pivot among remaining rows/cols
        let mut best = (0.0, r, 0);
        for (i, row) in rows.iter().enumerate().skip(r) {
            for (j, z) in row.iter().enumerate() {
                if !used_cols[j] && z.norm() > best.0 {
                    best = (z.norm(), i, j);
                }
            }
        }
        if best.0 <= rel_tol * scale {
            break;
        }
        rows.swap(r, best.1);
        let pc = best.2;
        used_cols[pc] = true;
        let pivot = rows[r][pc];
        for i in (r + 1)..rows.len() {
            let f = rows[i][pc] / pivot;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..cols {
                let sub = f * rows[r][j];
                rows[i][j] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

/// Solves the square complex system `A x = b` by Gaussian elimination with
/// partial pivoting.
pub fn complex_solve(a: &[Vec<Complex64>], b: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut m: Vec<Vec<Complex64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))
            .unwrap_or(col);
        if m[piv][col].norm() == 0.0 {
            return Err(Error::Spectral("singular linear system".into()));
        }
        m.swap(col, piv);
        for i in (col + 1)..n {
            let f = m[i][col] / m[col][col];
            for j in col..=n {
                let sub = f * m[col][j];
                m[i][j] -= sub;
            }
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut s = m[i][n];
        for j in (i + 1)..n {
            s -= m[i][j] * x[j];
        }
        x[i] = s / m[i][i];
    }
    Ok(x)
}

/// Null vector of a square complex matrix whose kernel is one-dimensional,
/// via elimination with complete pivoting. Returns `None` when the matrix has
/// full rank at tolerance `rel_tol`.
pub fn complex_null_vector(a: &[Vec<Complex64>], rel_tol: f64) -> Option<Vec<Complex64>> {
    let n = a.len();
    let mut m = a.to_vec();
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |s, z| s.max(z.norm()));
    let mut col_perm: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    for r in 0..n {
        let mut best = (0.0, r, r);
        for i in r..n {
            for j in r..n {
                let z = m[i][col_perm[j]].norm();
                if z > best.0 {
                    best = (z, i, j);
                }
            }
        }
        if best.0 <= rel_tol * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        m.swap(r, best.1);
        col_perm.swap(r, best.2);
        let pc = col_perm[r];
        let pivot = m[r][pc];
        for i in 0..n {
            if i == r {
                continue;
            }
            let f = m[i][pc] / pivot;
            for j in 0..n {
                let sub = f * m[r][j];
                m[i][j] -= sub;
            }
        }
        rank += 1;
    }
    if rank == n {
        return None;
    }
    // free variable: first non-pivot column set to 1, back-substitute pivots
    let free = col_perm[rank];
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    x[free] = Complex64::new(1.0, 0.0);
    for r in 0..rank {
        let pc = col_perm[r];
        x[pc] = -m[r][free] / m[r][pc];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_diagonalizes_known_matrix() {
        // eigenvalues 1, 2, 4 of a rotated diagonal
        let a = Mat::from_fn(3, 3, |i, j| {
            [[2.0, 0.0, 0.0], [0.0, 3.0, 1.0], [0.0, 1.0, 3.0]][i][j]
        });
        let e = jacobi_eigen(&a).unwrap();
        for (got, want) in e.values.iter().zip([2.0, 2.0, 4.0]) {
            assert!((got - want).abs() < 1e-13);
        }
        let av = a.matmul(&e.vectors).unwrap();
        for k in 0..3 {
            for i in 0..3 {
                assert!((av[(i, k)] - e.values[k] * e.vectors[(i, k)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn jacobi_handles_zero_and_non_square() {
        let e = jacobi_eigen(&Mat::zeros(4, 4)).unwrap();
        assert_eq!(e.sweeps, 0);
        assert!(jacobi_eigen(&Mat::zeros(2, 3)).is_err());
    }

    #[test]
    fn cholesky_reconstructs() {
        let a = Mat::from_fn(3, 3, |i, j| {
            [[4.0, 2.0, 0.4], [2.0, 5.0, 1.0], [0.4, 1.0, 3.0]][i][j]
        });
        let l = cholesky(&a).unwrap();
        let back = l.matmul(&l.transpose()).unwrap();
        assert!(back.sub(&a).max_abs() < 1e-14);
        let li = lower_inverse(&l);
        assert!(li.matmul(&l).unwrap().sub(&Mat::identity(3)).max_abs() < 1e-14);
        assert!(matches!(
            cholesky(&Mat::from_fn(2, 2, |i, j| if i == j { -1.0 } else { 0.0 })),
            Err(Error::NotPositiveDefinite)
        ));
    }

    #[test]
    fn clusters_split_on_gaps() {
        let v = [0.0, 1e-9, 1.0, 1.0 + 1e-9, 3.0];
        let c = cluster_sorted(&v, 1e-7);
        assert_eq!(c, vec![0..2, 2..4, 4..5]);
    }

    #[test]
    fn complex_helpers() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let a = vec![vec![one, i], vec![i, -one]];
        assert_eq!(complex_rank(&a, 1e-12), 1);
        let nv = complex_null_vector(&a, 1e-12).unwrap();
        let r0 = a[0][0] * nv[0] + a[0][1] * nv[1];
        assert!(r0.norm() < 1e-14);
        let b = vec![vec![one, i], vec![-i, 2.0 * one]];
        let x = complex_solve(&b, &[one, one]).unwrap();
        let y0 = b[0][0] * x[0] + b[0][1] * x[1];
        let y1 = b[1][0] * x[0] + b[1][1] * x[1];
        assert!((y0 - one).norm() < 1e-14 && (y1 - one).norm() < 1e-14);
    }
}
