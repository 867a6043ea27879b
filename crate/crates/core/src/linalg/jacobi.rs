use super::{Matrix, SymMatrix, PD_THRESHOLD};
use crate::error::{Error, Result};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Convergence when the off-diagonal Frobenius norm drops below this fraction
/// of the input's Frobenius norm.
const CONVERGENCE: f64 = 1e-12;

/// Spectral decomposition `A = V · diag(values) · Vᵀ` of a symmetric matrix.
///
/// `values` are ascending and column `k` of `vectors` belongs to `values[k]`.
/// Each column is sign-normalized so that its first significant component is
/// positive, which makes the output deterministic.
#[derive(Clone, Debug)]
pub struct EigDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl EigDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn reconstruct(&self) -> Matrix {
        self.vectors.mul_diag_right(&self.values).matmul(&self.vectors.transpose())
    }

    /// `V · diag(f(λ)) · Vᵀ`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> SymMatrix {
        let mapped: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        SymMatrix::symmetrize(self.vectors.mul_diag_right(&mapped).matmul(&self.vectors.transpose()))
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NAN)
    }

    /// Fails unless every eigenvalue exceeds `PD_THRESHOLD` times the largest.
    pub fn check_positive_definite(&self) -> Result<()> {
        let largest = self.max();
        let smallest = self.min();
        if !(largest > 0.0) || !(smallest > PD_THRESHOLD * largest) {
            return Err(Error::NotPositiveDefinite { eigenvalue: smallest, largest });
        }
        Ok(())
    }
}

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.
pub fn eig_sym(m: &SymMatrix) -> Result<EigDecomposition> {
    let n = m.dim();
    let mut a = m.as_matrix().as_slice().to_vec();
    // Row k of `vt` is the k-th eigenvector; rows keep the rotation updates contiguous.
    let mut vt = Matrix::identity(n).as_slice().to_vec();

    let total = m.as_matrix().frobenius_norm();
    let tol = CONVERGENCE * total;

    let mut converged = n <= 1 || total == 0.0;
    let mut sweep = 0;
    while !converged {
        if off_diagonal_norm(&a, n) <= tol {
            converged = true;
            break;
        }
        if sweep == MAX_SWEEPS {
            break;
        }
        sweep += 1;
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                rotate(&mut a, &mut vt, n, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { what: "Jacobi eigensolver", iterations: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));

    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let v = &vt[src * n..(src + 1) * n];
        let scale = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let sign = v
            .iter()
            .find(|x| x.abs() > 1e-12 * scale)
            .map_or(1.0, |&x| if x < 0.0 { -1.0 } else { 1.0 });
        for (row, &x) in v.iter().enumerate() {
            vectors[(row, col)] = sign * x;
        }
    }
    Ok(EigDecomposition { values, vectors })
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += a[i * n + j] * a[i * n + j];
        }
    }
    (2.0 * s).sqrt()
}

/// Annihilates `a[p][q]` with a plane rotation and accumulates it into `vt`.
fn rotate(a: &mut [f64], vt: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        a[k * n + p] = new_kp;
        a[p * n + k] = new_kp;
        a[k * n + q] = new_kq;
        a[q * n + k] = new_kq;
    }
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;

    let (head, tail) = vt.split_at_mut(q * n);
    let row_p = &mut head[p * n..(p + 1) * n];
    let row_q = &mut tail[..n];
    for (vp, vq) in row_p.iter_mut().zip(row_q.iter_mut()) {
        let x = *vp;
        let y = *vq;
        *vp = c * x - s * y;
        *vq = s * x + c * y;
    }
}
