//! Symplectic eigenvalues of positive-definite phase-space matrices.
//!
//! For a `2n×2n` positive-definite `V` in `(q…, p…)` ordering the symplectic
//! eigenvalues are the moduli of the eigenvalues of `i·J⁻¹·V`, where `J` is
//! the standard symplectic form. They come in `±` pairs. Both routes below
//! stay in real symmetric arithmetic:
//!
//! * general: `A = V^{1/2} J V^{1/2}` is antisymmetric with eigenvalues
//!   `±iν`, so the eigenvalues of `AᵀA` are `ν²`, each twice;
//! * block diagonal (`V = qq ⊕ pp`): `ν²` are the eigenvalues of
//!   `qq·pp`, similar to the symmetric `qq^{1/2} · pp · qq^{1/2}`.

use super::{eig_sym, mat_pow, Matrix, SymMatrix};
use crate::error::{Error, Result};

/// Relative tolerance for matching the doubled eigenvalues of the general route.
pub const PAIRING_TOLERANCE: f64 = 1e-9;

/// The standard symplectic form `[[0, 1], [−1, 0]]` of order `2n`.
pub fn symplectic_form(n: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = 1.0;
        j[(n + i, i)] = -1.0;
    }
    j
}

fn half_dim(v: &SymMatrix) -> Result<usize> {
    let d = v.dim();
    if d == 0 || d % 2 != 0 {
        return Err(Error::DimensionMismatch(format!(
            "phase-space matrix must have positive even order, got {d}"
        )));
    }
    Ok(d / 2)
}

fn cross_block_is_zero(v: &SymMatrix, n: usize) -> bool {
    (0..n).all(|i| (0..n).all(|j| v[(i, n + j)] == 0.0))
}

/// Symplectic eigenvalues, ascending. Uses the block-diagonal route when the
/// position-momentum block is exactly zero and the general route otherwise.
pub fn symplectic_spectrum(v: &SymMatrix) -> Result<Vec<f64>> {
    let n = half_dim(v)?;
    if cross_block_is_zero(v, n) {
        symplectic_spectrum_block_diagonal(v)
    } else {
        symplectic_spectrum_general(v)
    }
}

/// General route through the antisymmetric matrix `V^{1/2} J V^{1/2}`.
pub fn symplectic_spectrum_general(v: &SymMatrix) -> Result<Vec<f64>> {
    let n = half_dim(v)?;
    let root = mat_pow(v, 0.5)?;
    let a = root.as_matrix().matmul(&symplectic_form(n)).matmul(root.as_matrix());
    let gram = SymMatrix::symmetrize(a.transpose().matmul(&a));
    let squares = eig_sym(&gram)?.values;

    let moduli: Vec<f64> = squares.iter().map(|&s| s.max(0.0).sqrt()).collect();
    let largest = moduli.last().copied().unwrap_or(0.0);
    let mut out = Vec::with_capacity(n);
    for pair in moduli.chunks_exact(2) {
        let (first, second) = (pair[0], pair[1]);
        let scale = first.max(second).max(1e-6 * largest);
        if (first - second).abs() > PAIRING_TOLERANCE * scale {
            return Err(Error::UnpairedSpectrum { first, second });
        }
        out.push(0.5 * (first + second));
    }
    Ok(out)
}

/// Route for `V = qq ⊕ pp`; fails if the cross block is not exactly zero.
pub fn symplectic_spectrum_block_diagonal(v: &SymMatrix) -> Result<Vec<f64>> {
    let n = half_dim(v)?;
    if !cross_block_is_zero(v, n) {
        let max_abs = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .fold(0.0_f64, |m, (i, j)| m.max(v[(i, n + j)].abs()));
        return Err(Error::CrossBlockNotZero { max_abs });
    }
    let q: Vec<usize> = (0..n).collect();
    let p: Vec<usize> = (n..2 * n).collect();
    let qq = v.principal(&q);
    let pp = v.principal(&p);
    eig_sym(&pp)?.check_positive_definite()?;
    let root = mat_pow(&qq, 0.5)?;
    let product = pp.congruence(root.as_matrix());
    Ok(eig_sym(&product)?.values.iter().map(|&s| s.max(0.0).sqrt()).collect())
}
