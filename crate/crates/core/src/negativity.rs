//! Logarithmic negativity of a bipartition.
//!
//! With the covariance reduced to the `m = n₁ + n₂` oscillators and divided by
//! its unit, the partially transposed data are the eigenvalues `λ̃` of
//! `qq · P pp P`, where `P` flips the momenta of the second group. They are
//! computed from the similar symmetric matrix `L (P pp P) L`, `L = qq^{1/2}`.

use crate::covariance::{partial_transpose, reduce, Bipartition, CovarianceMatrix};
use crate::error::{Error, Result};
use crate::linalg::{eig_sym, mat_pow, symplectic_spectrum, SymMatrix};

/// `λ̃ ≥ 1 − GUARD_BAND` counts as unity.
pub const GUARD_BAND: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct NegativityResult {
    /// Ascending.
    pub lambda_tilde: Vec<f64>,
    /// In bits.
    pub log_negativity: f64,
    pub negativity: f64,
}

impl NegativityResult {
    pub fn from_lambdas(mut lambda_tilde: Vec<f64>) -> Self {
        lambda_tilde.sort_by(f64::total_cmp);
        let log_negativity = lambda_tilde
            .iter()
            .filter(|&&l| l < 1.0 - GUARD_BAND)
            .map(|&l| -l.log2())
            .sum::<f64>()
            .max(0.0);
        NegativityResult { lambda_tilde, log_negativity, negativity: negativity_from_log(log_negativity) }
    }
}

/// `(2^E − 1) / 2`.
pub fn negativity_from_log(e: f64) -> f64 {
    0.5 * e.exp2() - 0.5
}

fn reduced(cov_full: &CovarianceMatrix, partition: &Bipartition) -> Result<CovarianceMatrix> {
    if partition.is_empty() {
        return Err(Error::EmptySubsystem);
    }
    let red = reduce(cov_full, &partition.ordered())?;
    red.require_zero_cross_block()?;
    Ok(red)
}

pub fn log_negativity(cov_full: &CovarianceMatrix, partition: &Bipartition) -> Result<NegativityResult> {
    let red = reduced(cov_full, partition)?;
    let unit = red.unit()?;
    let qq = SymMatrix::symmetrize(red.qq().as_matrix().scaled(1.0 / unit));
    let signs = partition.momentum_signs();
    let pp = red.pp();
    let flipped = SymMatrix::symmetrize(pp.as_matrix().mul_diag_left(&signs).mul_diag_right(&signs).scaled(1.0 / unit));
    let root = mat_pow(&qq, 0.5)?;
    let b = flipped.congruence(root.as_matrix());
    Ok(NegativityResult::from_lambdas(eig_sym(&b)?.values))
}

/// Route through the symplectic spectrum of the partially transposed matrix:
/// each of its `m` symplectic eigenvalues `|λ|` (in units of the covariance
/// unit) appears twice among the `2m` eigenvalue moduli, and `|λ|² = λ̃`.
pub fn log_negativity_via_symplectic(
    cov_full: &CovarianceMatrix,
    partition: &Bipartition,
) -> Result<NegativityResult> {
    let red = reduced(cov_full, partition)?;
    let unit = red.unit()?;
    let pt = partial_transpose(&red, partition)?;
    let moduli: Vec<f64> = symplectic_spectrum(pt.matrix())?.into_iter().map(|v| v / unit).collect();
    let mut lambda_tilde = Vec::with_capacity(moduli.len());
    let mut e = 0.0;
    for &v in &moduli {
        let l = v * v;
        lambda_tilde.push(l);
        if l < 1.0 - GUARD_BAND {
            // two moduli per symplectic eigenvalue
            e -= 2.0 * v.log2();
        }
    }
    lambda_tilde.sort_by(f64::total_cmp);
    let log_negativity = e.max(0.0);
    Ok(NegativityResult { lambda_tilde, log_negativity, negativity: negativity_from_log(log_negativity) })
}
