//! Least-squares fits of sweep output.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::io::Table;

pub const KAPPA_FIT_MAX_ITERATIONS: usize = 500;

const STEP_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    pub parameters: Vec<(String, f64)>,
    pub rms_residual: f64,
    pub grid_used: Vec<f64>,
}

impl FitResult {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.parameters.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["parameter", "value"]);
        for (name, value) in &self.parameters {
            t.push(vec![name.as_str().into(), (*value).into()]);
        }
        t.push(vec!["rms_residual".into(), self.rms_residual.into()]);
        t
    }
}

/// `ln[(L/π) sin(π n₁ / L)]` for adjacent groups filling `L` sites.
pub fn cft_abscissa(n1: f64, total: f64) -> f64 {
    ((total / PI) * (PI * n1 / total).sin()).ln()
}

/// Fits `E = (b₁/4) x + b₂` with `x = cft_abscissa(n₁, total)`, skipping `n₁ ∈ {0, total}`.
pub fn fit_adjacent_cft(n1: &[f64], e: &[f64], total: f64) -> Result<FitResult> {
    if n1.len() != e.len() {
        return Err(Error::DimensionMismatch(format!("{} n1 values, {} E_N values", n1.len(), e.len())));
    }
    let points: Vec<(f64, f64, f64)> = n1
        .iter()
        .zip(e)
        .filter(|(&n, _)| n > 0.0 && n < total)
        .map(|(&n, &y)| (n, cft_abscissa(n, total), y))
        .collect();
    if points.len() < 10 {
        return Err(Error::InvalidInput(format!(
            "CFT fit needs at least 10 interior points, got {}",
            points.len()
        )));
    }
    let count = points.len() as f64;
    let mx = points.iter().map(|p| p.1).sum::<f64>() / count;
    let my = points.iter().map(|p| p.2).sum::<f64>() / count;
    let sxx = points.iter().map(|p| (p.1 - mx).powi(2)).sum::<f64>();
    let sxy = points.iter().map(|p| (p.1 - mx) * (p.2 - my)).sum::<f64>();
    if sxx / count < 1e-12 {
        return Err(Error::DegenerateDesign(format!("abscissa variance {:e}", sxx / count)));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = points.iter().map(|p| (p.2 - slope * p.1 - intercept).powi(2)).sum();
    Ok(FitResult {
        parameters: vec![("b1".into(), 4.0 * slope), ("b2".into(), intercept)],
        rms_residual: (rss / count).sqrt(),
        grid_used: points.iter().map(|p| p.0).collect(),
    })
}

/// [`fit_adjacent_cft`] on the rows of an adjacent sweep with the given κ.
pub fn fit_adjacent_cft_table(table: &Table, kappa: f64, total: f64) -> Result<FitResult> {
    let rows = table.filter_eq("kappa", kappa)?;
    if rows.rows.is_empty() {
        return Err(Error::InvalidInput(format!("no rows with kappa = {kappa}")));
    }
    fit_adjacent_cft(&rows.column("n1")?, &rows.column("E_N")?, total)
}

/// `a − b / (κ^c + d)`.
pub fn kappa_asymptote(kappa: f64, p: &[f64; 4]) -> f64 {
    p[0] - p[1] / (pow_kappa(kappa, p[2]) + p[3])
}

fn pow_kappa(kappa: f64, c: f64) -> f64 {
    if kappa == 0.0 {
        if c > 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        kappa.powf(c)
    }
}

fn residuals(kappa: &[f64], e: &[f64], p: &[f64; 4]) -> Option<Vec<f64>> {
    let r: Vec<f64> = kappa.iter().zip(e).map(|(&k, &y)| y - kappa_asymptote(k, p)).collect();
    r.iter().all(|x| x.is_finite()).then_some(r)
}

fn jacobian_row(kappa: f64, p: &[f64; 4]) -> [f64; 4] {
    let kc = pow_kappa(kappa, p[2]);
    let den = kc + p[3];
    // κ^c ln κ → 0 as κ → 0 for c > 0
    let dkc = if kappa == 0.0 { 0.0 } else { kc * kappa.ln() };
    [1.0, -1.0 / den, p[1] * dkc / (den * den), p[1] / (den * den)]
}

/// Solves the 4×4 symmetric system by Gaussian elimination with partial pivoting.
fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if !(a[piv][col].abs() > 0.0) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let s: f64 = (row + 1..4).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Levenberg–Marquardt fit of `E(κ) = a − b / (κ^c + d)`, started from
/// `a = max E`, `b = a − min E`, `c = 0.5`, `d = 1`.
pub fn fit_kappa_asymptote(kappa: &[f64], e: &[f64]) -> Result<FitResult> {
    if kappa.len() != e.len() {
        return Err(Error::DimensionMismatch(format!("{} kappa values, {} E_N values", kappa.len(), e.len())));
    }
    if kappa.len() < 12 {
        return Err(Error::InvalidInput(format!("asymptote fit needs at least 12 points, got {}", kappa.len())));
    }
    if kappa.iter().chain(e).any(|x| !x.is_finite()) || kappa.iter().any(|&k| k < 0.0) {
        return Err(Error::InvalidInput("kappa must be finite and >= 0, E_N finite".into()));
    }
    let max = e.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = e.iter().copied().fold(f64::INFINITY, f64::min);
    if max - min <= 1e-14 * max.abs().max(1.0) {
        return Err(Error::Unidentifiable("constant data leaves b, c and d undetermined"));
    }

    let mut p = [max, max - min, 0.5, 1.0];
    let mut r = residuals(kappa, e, &p).ok_or(Error::Unidentifiable("initial guess is not finite"))?;
    let mut cost: f64 = r.iter().map(|x| x * x).sum();
    let mut lambda = 1e-3;

    for _ in 0..KAPPA_FIT_MAX_ITERATIONS {
        let mut jtj = [[0.0; 4]; 4];
        let mut jtr = [0.0; 4];
        for (&k, &ri) in kappa.iter().zip(&r) {
            let row = jacobian_row(k, &p);
            for i in 0..4 {
                jtr[i] += row[i] * ri;
                for j in 0..4 {
                    jtj[i][j] += row[i] * row[j];
                }
            }
        }
        let scale = (0..4).map(|i| jtj[i][i]).fold(0.0_f64, f64::max);
        if !(scale > 0.0) {
            return Err(Error::Unidentifiable("Jacobian vanishes"));
        }
        loop {
            let mut damped = jtj;
            for (i, row) in damped.iter_mut().enumerate() {
                row[i] += lambda * jtj[i][i].max(1e-12 * scale);
            }
            let Some(step) = solve4(damped, jtr) else {
                return Err(Error::Unidentifiable("normal equations are singular"));
            };
            let trial = [p[0] + step[0], p[1] + step[1], p[2] + step[2], p[3] + step[3]];
            let step_norm = step.iter().map(|x| x * x).sum::<f64>().sqrt();
            let p_norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            let small = step_norm <= STEP_TOLERANCE * (p_norm + STEP_TOLERANCE);
            let trial_r = residuals(kappa, e, &trial);
            let trial_cost = trial_r.as_ref().map(|r| r.iter().map(|x| x * x).sum::<f64>());
            match (trial_r, trial_cost) {
                (Some(tr), Some(tc)) if tc <= cost => {
                    p = trial;
                    r = tr;
                    cost = tc;
                    lambda = (lambda * 0.1).max(1e-15);
                    if small || cost == 0.0 {
                        return Ok(finish(kappa, p, cost));
                    }
                    break;
                }
                _ => {
                    // no descent even along a negligible step: at the minimum to working precision
                    if small {
                        return Ok(finish(kappa, p, cost));
                    }
                    lambda *= 10.0;
                    if lambda > 1e20 {
                        return Ok(finish(kappa, p, cost));
                    }
                }
            }
        }
    }
    Err(Error::NoConvergence { what: "kappa asymptote fit", iterations: KAPPA_FIT_MAX_ITERATIONS })
}

fn finish(kappa: &[f64], p: [f64; 4], cost: f64) -> FitResult {
    FitResult {
        parameters: ["a", "b", "c", "d"].iter().map(|s| s.to_string()).zip(p).collect(),
        rms_residual: (cost / kappa.len() as f64).sqrt(),
        grid_used: kappa.to_vec(),
    }
}

/// [`fit_kappa_asymptote`] on the rows of a size sweep with ring size `n`.
pub fn fit_kappa_asymptote_table(table: &Table, n: usize) -> Result<FitResult> {
    let rows = table.filter_eq("N", n as f64)?;
    if rows.rows.is_empty() {
        return Err(Error::InvalidInput(format!("no rows with N = {n}")));
    }
    fit_kappa_asymptote(&rows.column("kappa")?, &rows.column("E_N")?)
}
