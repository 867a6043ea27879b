//! Phase-space covariance matrices of quadratic models.
//!
//! Ordering is `(q₁…q_n, p₁…p_n)` throughout. For a stable model with normal
//! modes `(S, ω)`, diagonal `Y` and action variables `I` the angle averages are
//!
//! ```text
//! ⟨q qᵀ⟩ = S I Ω⁻¹ Sᵀ
//! ⟨q pᵀ⟩ = −S I Ω⁻¹ Sᵀ Y
//! ⟨p pᵀ⟩ = S I Ω Sᵀ + Y S I Ω⁻¹ Sᵀ Y
//! ```
//!
//! and all first moments vanish.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymMatrix};
use crate::models::{circulant_frequencies, NormalModes};

/// Relative tolerance for treating the position-momentum block as zero.
pub const CROSS_BLOCK_TOLERANCE: f64 = 1e-12;

/// Largest mode count accepted by [`angle_average_oracle`].
pub const ORACLE_MAX_MODES: usize = 4;

/// What the entries of a covariance matrix are measured in.
///
/// Downstream measures divide by [`Scale::unit`]: the common action value for
/// a classical matrix and `ħ/2` for a quantum ground state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scale {
    Classical { action: f64 },
    Quantum { hbar: f64 },
    /// Classical matrix built from unequal actions; it has no common scale.
    Mixed,
}

impl Scale {
    pub fn unit(&self) -> Result<f64> {
        match *self {
            Scale::Classical { action } => Ok(action),
            Scale::Quantum { hbar } => Ok(0.5 * hbar),
            Scale::Mixed => Err(Error::NonUniformScale),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix {
    n_modes: usize,
    matrix: SymMatrix,
    scale: Scale,
}

impl CovarianceMatrix {
    pub fn new(matrix: SymMatrix, scale: Scale) -> Result<Self> {
        let d = matrix.dim();
        if d == 0 || d % 2 != 0 {
            return Err(Error::DimensionMismatch(format!(
                "covariance must have positive even order, got {d}"
            )));
        }
        Ok(CovarianceMatrix { n_modes: d / 2, matrix, scale })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn unit(&self) -> Result<f64> {
        self.scale.unit()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    fn q_idx(&self) -> Vec<usize> {
        (0..self.n_modes).collect()
    }

    fn p_idx(&self) -> Vec<usize> {
        (self.n_modes..2 * self.n_modes).collect()
    }

    pub fn qq(&self) -> SymMatrix {
        self.matrix.principal(&self.q_idx())
    }

    pub fn pp(&self) -> SymMatrix {
        self.matrix.principal(&self.p_idx())
    }

    pub fn qp(&self) -> Matrix {
        self.matrix.as_matrix().select(&self.q_idx(), &self.p_idx())
    }

    /// Fails unless every `⟨q pᵀ⟩` entry is below `CROSS_BLOCK_TOLERANCE`
    /// times the largest entry of the matrix.
    pub fn require_zero_cross_block(&self) -> Result<()> {
        let max_abs = self.qp().max_abs();
        if max_abs > CROSS_BLOCK_TOLERANCE * self.matrix.as_matrix().max_abs() {
            return Err(Error::CrossBlockNotZero { max_abs });
        }
        Ok(())
    }

    /// Writes the matrix row-major with 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        let m = self.matrix.as_matrix();
        for i in 0..m.rows() {
            w.write_record(m.row(i).iter().map(|&x| crate::io::format_f64(x)))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Positive action variables, one per normal mode.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionAssignment(Vec<f64>);

impl ActionAssignment {
    pub fn new(actions: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = actions.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
            return Err(Error::InvalidInput(format!("action variables must be positive, got {bad}")));
        }
        Ok(ActionAssignment(actions))
    }

    pub fn uniform(n: usize, action: f64) -> Result<Self> {
        Self::new(vec![action; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    fn scale(&self) -> Scale {
        match self.0.first() {
            Some(&a) if self.0.iter().all(|&x| x == a) => Scale::Classical { action: a },
            _ => Scale::Mixed,
        }
    }
}

/// Two disjoint groups of oscillators.
///
/// A reduced matrix for the partition lists `group1` first, then `group2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    group1: Vec<usize>,
    group2: Vec<usize>,
}

impl Bipartition {
    pub fn new(group1: Vec<usize>, group2: Vec<usize>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &i in group1.iter().chain(&group2) {
            if !seen.insert(i) {
                return Err(Error::OverlappingGroups(format!("oscillator {i} is listed twice")));
            }
        }
        Ok(Bipartition { group1, group2 })
    }

    pub fn group1(&self) -> &[usize] {
        &self.group1
    }

    pub fn group2(&self) -> &[usize] {
        &self.group2
    }

    /// Total oscillator count `n₁ + n₂`.
    pub fn len(&self) -> usize {
        self.group1.len() + self.group2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `group1` followed by `group2`.
    pub fn ordered(&self) -> Vec<usize> {
        self.group1.iter().chain(&self.group2).copied().collect()
    }

    pub fn swapped(&self) -> Bipartition {
        Bipartition { group1: self.group2.clone(), group2: self.group1.clone() }
    }

    /// Diagonal of `P_p`: `+1` for `group1`, `−1` for `group2`, in reduced order.
    pub fn momentum_signs(&self) -> Vec<f64> {
        let mut s = vec![1.0; self.group1.len()];
        s.resize(self.len(), -1.0);
        s
    }
}

pub fn classical_covariance(modes: &NormalModes, actions: &ActionAssignment) -> Result<CovarianceMatrix> {
    let n = modes.n();
    if actions.as_slice().len() != n || modes.y_diag.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} normal modes, {} actions, {} Y entries",
            n,
            actions.as_slice().len(),
            modes.y_diag.len()
        )));
    }
    if let Some(&w) = modes.omegas.iter().find(|w| !(**w > 0.0)) {
        return Err(Error::UnstableSystem { min_eigenvalue: w * w.abs() });
    }
    let i = actions.as_slice();
    let q_weights: Vec<f64> = i.iter().zip(&modes.omegas).map(|(a, w)| a / w).collect();
    let p_weights: Vec<f64> = i.iter().zip(&modes.omegas).map(|(a, w)| a * w).collect();
    let st = modes.s.transpose();
    let qq = modes.s.mul_diag_right(&q_weights).matmul(&st);
    let pp0 = modes.s.mul_diag_right(&p_weights).matmul(&st);
    let y = &modes.y_diag;

    let mut m = Matrix::zeros(2 * n, 2 * n);
    for a in 0..n {
        for b in 0..n {
            let g = 0.5 * (qq[(a, b)] + qq[(b, a)]);
            m[(a, b)] = g;
            m[(a, n + b)] = -0.5 * (qq[(a, b)] * y[b] + qq[(b, a)] * y[b]);
            m[(n + b, a)] = m[(a, n + b)];
            m[(n + a, n + b)] = 0.5 * (pp0[(a, b)] + pp0[(b, a)]) + y[a] * g * y[b];
        }
    }
    CovarianceMatrix::new(SymMatrix::new(m)?, actions.scale())
}

/// Ground-state covariance: the classical matrix at actions `ħ/2`, tagged quantum.
pub fn quantum_ground_covariance(modes: &NormalModes, hbar: f64) -> Result<CovarianceMatrix> {
    if !(hbar > 0.0 && hbar.is_finite()) {
        return Err(Error::InvalidInput(format!("hbar must be positive, got {hbar}")));
    }
    let actions = ActionAssignment::uniform(modes.n(), 0.5 * hbar)?;
    let cl = classical_covariance(modes, &actions)?;
    Ok(CovarianceMatrix { scale: Scale::Quantum { hbar }, ..cl })
}

/// Covariance of a ring of `n` identical oscillators at a common action,
/// from the Fourier diagonalization of the circulant `K`:
/// `⟨q_a q_b⟩ = (I/N) Σ_j cos(2πj(a−b)/N) / ω_j`, and likewise with `ω_j` for momenta.
pub fn lattice_covariance(n: usize, k: f64, kappa: f64, action: f64) -> Result<CovarianceMatrix> {
    if n == 0 {
        return Err(Error::InvalidModel("N must be positive".into()));
    }
    if !(k >= 0.0 && kappa >= 0.0) {
        return Err(Error::InvalidModel(format!("k = {k}, kappa = {kappa} must be >= 0")));
    }
    if !(action > 0.0) {
        return Err(Error::InvalidInput(format!("action must be positive, got {action}")));
    }
    let omegas = circulant_frequencies(n, k, kappa);
    if let Some(&w) = omegas.iter().find(|w| !(**w > 0.0)) {
        return Err(Error::UnstableSystem { min_eigenvalue: w * w });
    }
    let cos_table: Vec<f64> = (0..n).map(|r| (2.0 * PI * r as f64 / n as f64).cos()).collect();
    let rows: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|d| {
            let mut q = 0.0;
            let mut p = 0.0;
            for (j, w) in omegas.iter().enumerate() {
                let c = cos_table[(j * d) % n];
                q += c / w;
                p += c * w;
            }
            (action * q / n as f64, action * p / n as f64)
        })
        .collect();
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for a in 0..n {
        for b in 0..n {
            let d = (a + n - b) % n;
            // ring distance is symmetric: use min(d, n − d) so both triangles agree bitwise
            let d = d.min(n - d);
            m[(a, b)] = rows[d].0;
            m[(n + a, n + b)] = rows[d].1;
        }
    }
    CovarianceMatrix::new(SymMatrix::new(m)?, Scale::Classical { action })
}

/// Keeps the `q` and `p` rows and columns of the listed oscillators, in the given order.
pub fn reduce(cov: &CovarianceMatrix, subsystem: &[usize]) -> Result<CovarianceMatrix> {
    if subsystem.is_empty() {
        return Err(Error::EmptySubsystem);
    }
    let n = cov.n_modes;
    let mut seen = vec![false; n];
    for &i in subsystem {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n_modes: n });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::DuplicateIndex(i));
        }
    }
    let idx: Vec<usize> = subsystem.iter().copied().chain(subsystem.iter().map(|i| i + n)).collect();
    Ok(CovarianceMatrix {
        n_modes: subsystem.len(),
        matrix: cov.matrix.principal(&idx),
        scale: cov.scale,
    })
}

/// Flips the sign of the momenta of `group2`: `P · cov · P` with
/// `P = 1 ⊕ P_p`. `cov` must already be reduced to the partition's order.
pub fn partial_transpose(cov: &CovarianceMatrix, partition: &Bipartition) -> Result<CovarianceMatrix> {
    if cov.n_modes != partition.len() {
        return Err(Error::DimensionMismatch(format!(
            "covariance has {} modes, partition has {}",
            cov.n_modes,
            partition.len()
        )));
    }
    cov.require_zero_cross_block()?;
    let n = cov.n_modes;
    let mut signs = vec![1.0; n];
    signs.extend(partition.momentum_signs());
    let m = cov.matrix.as_matrix();
    let flipped = Matrix::from_fn(2 * n, 2 * n, |i, j| signs[i] * signs[j] * m[(i, j)]);
    Ok(CovarianceMatrix { n_modes: n, matrix: SymMatrix::new(flipped)?, scale: cov.scale })
}

/// Brute-force angle average of `r rᵀ` on a uniform `grid^N` tensor grid using
/// the action-angle parametrization
/// `q = S √(2I/ω) sin φ`, `p = S √(2Iω) cos φ − Y q`.
///
/// Slabs of the first angle are averaged in parallel and combined in a fixed
/// order, so the result does not depend on the thread count.
pub fn angle_average_oracle(
    modes: &NormalModes,
    actions: &ActionAssignment,
    grid: usize,
) -> Result<CovarianceMatrix> {
    let n = modes.n();
    if n > ORACLE_MAX_MODES {
        return Err(Error::DimensionTooLarge { n, max: ORACLE_MAX_MODES });
    }
    if grid < 16 {
        return Err(Error::GridTooCoarse(grid));
    }
    let i = actions.as_slice();
    if i.len() != n {
        return Err(Error::DimensionMismatch(format!("{n} modes but {} actions", i.len())));
    }
    let dim = 2 * n;
    // contribution of mode b at grid point j to the phase-space vector
    let contrib: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|b| {
            let amp_q = (2.0 * i[b] / modes.omegas[b]).sqrt();
            let amp_p = (2.0 * i[b] * modes.omegas[b]).sqrt();
            (0..grid)
                .map(|j| {
                    let phi = 2.0 * PI * j as f64 / grid as f64;
                    let (s, c) = phi.sin_cos();
                    let mut v = vec![0.0; dim];
                    for a in 0..n {
                        let q = modes.s[(a, b)] * amp_q * s;
                        v[a] = q;
                        v[n + a] = modes.s[(a, b)] * amp_p * c - modes.y_diag[a] * q;
                    }
                    v
                })
                .collect()
        })
        .collect();

    let rest: usize = grid.pow((n - 1) as u32);
    let slabs: Vec<(Vec<f64>, Vec<f64>)> = (0..grid)
        .into_par_iter()
        .map(|j0| {
            let mut second = vec![0.0; dim * dim];
            let mut first = vec![0.0; dim];
            let mut r = vec![0.0; dim];
            for flat in 0..rest {
                r.copy_from_slice(&contrib[0][j0]);
                let mut idx = flat;
                for mode in contrib.iter().skip(1) {
                    let v = &mode[idx % grid];
                    idx /= grid;
                    for (x, y) in r.iter_mut().zip(v) {
                        *x += y;
                    }
                }
                for a in 0..dim {
                    first[a] += r[a];
                    for b in a..dim {
                        second[a * dim + b] += r[a] * r[b];
                    }
                }
            }
            (second, first)
        })
        .collect();

    let mut second = vec![0.0; dim * dim];
    let mut first = vec![0.0; dim];
    for (s, f) in &slabs {
        for (acc, x) in second.iter_mut().zip(s) {
            *acc += x;
        }
        for (acc, x) in first.iter_mut().zip(f) {
            *acc += x;
        }
    }
    let count = (grid * rest) as f64;
    let mean: Vec<f64> = first.iter().map(|x| x / count).collect();
    let m = Matrix::from_fn(dim, dim, |a, b| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        second[lo * dim + hi] / count - mean[a] * mean[b]
    });
    CovarianceMatrix::new(SymMatrix::new(m)?, actions.scale())
}

/// Relative entrywise distance used by tests and the acceptance suite.
pub fn max_relative_difference(a: &CovarianceMatrix, b: &CovarianceMatrix) -> f64 {
    let scale = a.matrix.as_matrix().max_abs().max(b.matrix.as_matrix().max_abs());
    if scale == 0.0 {
        return 0.0;
    }
    a.matrix.as_matrix().sub(b.matrix.as_matrix()).max_abs() / scale
}
