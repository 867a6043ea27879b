//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use clent::linalg::{Matrix, SymMatrix};
use clent::{Bipartition, HamiltonianModel};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
}

/// `R Rᵀ + shift·I` with `R` uniform in [-1, 1].
pub fn random_pd(rng: &mut ChaCha8Rng, dim: usize, shift: f64) -> SymMatrix {
    let r = random_matrix(rng, dim, dim);
    let mut m = r.matmul(&r.transpose());
    for i in 0..dim {
        m[(i, i)] += shift;
    }
    SymMatrix::symmetrize(m)
}

/// Stable chain: `M = K − Y²` is drawn positive definite, then `K = M + Y²`.
pub fn random_chain(rng: &mut ChaCha8Rng, n: usize, with_y: bool) -> HamiltonianModel {
    let m = random_pd(rng, n, 0.2);
    let y: Vec<f64> = (0..n).map(|_| if with_y { rng.gen_range(-1.5..1.5) } else { 0.0 }).collect();
    let mut k = m.into_matrix();
    for i in 0..n {
        k[(i, i)] += y[i] * y[i];
    }
    HamiltonianModel::GeneralizedChain { k: SymMatrix::symmetrize(k), y }
}

/// Two nonempty disjoint groups drawn from `0..n`, possibly leaving oscillators out.
pub fn random_bipartition(rng: &mut ChaCha8Rng, n: usize) -> Bipartition {
    assert!(n >= 2);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let m = rng.gen_range(2..=n);
    let n1 = rng.gen_range(1..m);
    Bipartition::new(idx[..n1].to_vec(), idx[n1..m].to_vec()).unwrap()
}

/// Random symplectic matrix of order `2n` as a product of shears and a squeeze:
/// `[[I, 0], [A, I]] · [[D, 0], [0, D⁻¹]] · [[I, B], [0, I]]` with `A`, `B` symmetric.
pub fn random_symplectic(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let sym = |rng: &mut ChaCha8Rng| {
        let r = random_matrix(rng, n, n);
        r.add(&r.transpose()).scaled(0.25)
    };
    let a = sym(rng);
    let b = sym(rng);
    let d: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.5f64..0.5).exp()).collect();
    let lower = Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) | (false, false) => (i == j) as u8 as f64,
        (false, true) => a[(i - n, j)],
        (true, false) => 0.0,
    });
    let upper = Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) | (false, false) => (i == j) as u8 as f64,
        (true, false) => b[(i, j - n)],
        (false, true) => 0.0,
    });
    let mut squeeze = d.clone();
    squeeze.extend(d.iter().map(|x| 1.0 / x));
    lower.matmul(&Matrix::from_diagonal(&squeeze)).matmul(&upper)
}

/// Phase-space matrix with symplectic eigenvalues at least `1/2 · unit`.
pub fn random_physical(rng: &mut ChaCha8Rng, n: usize, unit: f64) -> SymMatrix {
    let nu: Vec<f64> = (0..n).map(|_| unit * rng.gen_range(0.5..3.0)).collect();
    let mut diag = nu.clone();
    diag.extend(&nu);
    SymMatrix::from_diagonal(&diag).congruence(&random_symplectic(rng, n))
}

/// Closed-form one-oscillator product `qq₁₁ · pp₁₁` of the two-mode model at unit actions,
/// from `M^{1/2} = (M + sI)/sqrt(tr M + 2s)` with `s = sqrt(det M)`.
pub fn two_mode_one_oscillator_product(a: f64, b: f64, c: f64) -> f64 {
    let s = (a * b - c * c / 4.0).sqrt();
    (a + s) * (b + s) / (s * (a + b + 2.0 * s))
}

/// The models named in the documentation examples.
pub fn example_models() -> Vec<HamiltonianModel> {
    vec![
        HamiltonianModel::TwoMode { a: 5.0, b: 20.0, c: 10.0 },
        HamiltonianModel::TwoMode { a: 4.0, b: 9.0, c: 0.0 },
        HamiltonianModel::TwoModeGeneralized { x1: 2.0, x2: 2.0, y1: 0.0, y2: 0.0, z: 1.0 },
        HamiltonianModel::TwoModeGeneralized { x1: 2.0, x2: 2.0, y1: 0.0, y2: 1.0, z: 1.0 },
        HamiltonianModel::TwoModeGeneralized { x1: 1.0, x2: 2.0, y1: 0.0, y2: 0.0, z: 1.0 },
        HamiltonianModel::CircularLattice { n: 20, k: 0.1, kappa: 1.0 },
        HamiltonianModel::CircularLattice { n: 200, k: 0.1, kappa: 1.0 },
        HamiltonianModel::CircularLattice { n: 6, k: 1.0, kappa: 0.0 },
    ]
}
