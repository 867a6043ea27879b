//! Dense real linear algebra used by every other module.
//!
//! Everything here works on small-to-moderate dense matrices (order up to a
//! thousand or so) stored row-major. Symmetric eigenproblems are solved with
//! cyclic Jacobi rotations, see [`eig_sym`].

mod jacobi;
mod symplectic;

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

pub use jacobi::{eig_sym, EigDecomposition, MAX_SWEEPS};
pub use symplectic::{
    symplectic_form, symplectic_spectrum, symplectic_spectrum_block_diagonal,
    symplectic_spectrum_general, PAIRING_TOLERANCE,
};

/// Relative tolerance used when checking that a matrix is symmetric.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Eigenvalues at or below this fraction of the largest one make a matrix
/// count as not positive definite.
pub const PD_THRESHOLD: f64 = 1e-12;

/// A dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Matrix::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
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
        Matrix { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
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

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scaled(&self, s: f64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// Multiplies column `j` by `d[j]`, i.e. returns `self * diag(d)`.
    pub fn mul_diag_right(&self, d: &[f64]) -> Matrix {
        assert_eq!(self.cols, d.len());
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * d[j])
    }

    /// Multiplies row `i` by `d[i]`, i.e. returns `diag(d) * self`.
    pub fn mul_diag_left(&self, d: &[f64]) -> Matrix {
        assert_eq!(self.rows, d.len());
        Matrix::from_fn(self.rows, self.cols, |i, j| d[i] * self[(i, j)])
    }

    /// Submatrix with the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// A square matrix verified to be symmetric.
#[derive(Clone, PartialEq, Debug)]
pub struct SymMatrix(Matrix);

impl SymMatrix {
    /// Checks symmetry within `SYMMETRY_TOLERANCE` times the largest entry.
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "expected a square matrix, got {}x{}",
                m.rows, m.cols
            )));
        }
        let tol = SYMMETRY_TOLERANCE * m.max_abs();
        for i in 0..m.rows {
            for j in (i + 1)..m.cols {
                let deviation = (m[(i, j)] - m[(j, i)]).abs();
                // `!(<=)` so that NaN entries are rejected too.
                if !(deviation <= tol) {
                    return Err(Error::AsymmetricInput { row: i, col: j, deviation });
                }
            }
        }
        Ok(SymMatrix(m))
    }

    /// Averages `m` with its transpose. Used for products that are symmetric
    /// in exact arithmetic but carry roundoff asymmetry.
    pub fn symmetrize(m: Matrix) -> Self {
        assert!(m.is_square(), "symmetrize needs a square matrix");
        let n = m.rows;
        let out = Matrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
        SymMatrix(out)
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix(Matrix::identity(n))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        SymMatrix(Matrix::from_diagonal(diag))
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// Principal submatrix on `idx` (rows and columns in the given order).
    pub fn principal(&self, idx: &[usize]) -> SymMatrix {
        SymMatrix(self.0.select(idx, idx))
    }

    /// `t · self · tᵀ`, symmetrized.
    pub fn congruence(&self, t: &Matrix) -> SymMatrix {
        SymMatrix::symmetrize(t.matmul(&self.0).matmul(&t.transpose()))
    }
}

impl Index<(usize, usize)> for SymMatrix {
    type Output = f64;

    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.0[idx]
    }
}

/// `m^exponent` through the spectral decomposition.
///
/// Non-integer and negative exponents require `m` to be positive definite;
/// nonnegative integer exponents accept any symmetric input.
pub fn mat_pow(m: &SymMatrix, exponent: f64) -> Result<SymMatrix> {
    let eig = eig_sym(m)?;
    let integral = exponent.fract() == 0.0 && exponent >= 0.0;
    if !integral {
        eig.check_positive_definite()?;
    }
    Ok(eig.map_spectrum(|lambda| {
        if integral {
            lambda.powi(exponent as i32)
        } else {
            lambda.powf(exponent)
        }
    }))
}

/// `ln det m` by Cholesky factorization.
///
/// `None` if any pivot falls below `PD_THRESHOLD` times the largest diagonal entry.
pub fn cholesky_log_det(m: &SymMatrix) -> Option<f64> {
    let n = m.dim();
    let floor = PD_THRESHOLD * (0..n).map(|i| m[(i, i)]).fold(0.0, f64::max);
    let mut l = vec![0.0; n * n];
    let mut ln_det = 0.0;
    for j in 0..n {
        let mut d = m[(j, j)];
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if !(d > floor) || floor == 0.0 {
            return None;
        }
        let d = d.sqrt();
        ln_det += 2.0 * d.ln();
        l[j * n + j] = d;
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / d;
        }
    }
    Some(ln_det)
}

/// Relative Frobenius distance `‖a − b‖ / max(‖a‖, ‖b‖)`, zero when both vanish.
pub fn relative_frobenius_error(a: &Matrix, b: &Matrix) -> f64 {
    let scale = a.frobenius_norm().max(b.frobenius_norm());
    if scale == 0.0 {
        0.0
    } else {
        a.sub(b).frobenius_norm() / scale
    }
}
