//! Purities and entropies from rescaled symplectic eigenvalues.
//!
//! A reduced covariance with common unit `u` has symplectic eigenvalues `ν_k`;
//! the dimensionless `σ̃_k = ν_k / (2u)` equal `1/2` for a pure mode. Each
//! measure is a sum or product of single-mode terms in `σ̃_k`.

use crate::covariance::CovarianceMatrix;
use crate::error::{Error, Result};
use crate::io::Cell;
use crate::linalg::{cholesky_log_det, symplectic_spectrum};
use crate::models::HamiltonianModel;

/// Values this far below `1/2` are treated as roundoff and clamped.
pub const HEISENBERG_SLACK: f64 = 1e-9;

pub const DEFAULT_ALPHAS: [f64; 8] = [0.9, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0];

/// Ascending `σ̃_k`, each at least `1/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticSpectrum {
    values: Vec<f64>,
}

impl SymplecticSpectrum {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        for v in values.iter_mut() {
            if !(*v >= 0.5 - HEISENBERG_SLACK) || !v.is_finite() {
                return Err(Error::SubHeisenberg(*v));
            }
            *v = v.max(0.5);
        }
        values.sort_by(f64::total_cmp);
        Ok(SymplecticSpectrum { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `σ̃ = ν / (2u)` for the symplectic eigenvalues `ν` of `cov`.
pub fn sigma_tilde(cov: &CovarianceMatrix) -> Result<SymplecticSpectrum> {
    let unit = cov.unit()?;
    let nu = symplectic_spectrum(cov.matrix())?;
    SymplecticSpectrum::new(nu.into_iter().map(|v| v / (2.0 * unit)).collect())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::AlphaOutOfDomain(alpha))
    }
}

/// `ln g_α(σ) = −ln[(σ+½)^α − (σ−½)^α]`, factored as
/// `−α ln(σ+½) − ln(1 − ((σ−½)/(σ+½))^α)` so it neither overflows nor cancels.
fn ln_g_alpha(sigma: f64, alpha: f64) -> f64 {
    let hi = sigma + 0.5;
    let ratio_ln = (-1.0 / hi).ln_1p();
    -(alpha * hi.ln() + (-(alpha * ratio_ln).exp_m1()).ln())
}

/// `g_α(σ) = 1 / ((σ+½)^α − (σ−½)^α)`.
pub fn g_alpha_cl(sigma: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha == 1.0 {
        return Err(Error::AlphaOutOfDomain(alpha));
    }
    if !(sigma >= 0.5 - HEISENBERG_SLACK) {
        return Err(Error::SubHeisenberg(sigma));
    }
    Ok(ln_g_alpha(sigma.max(0.5), alpha).exp())
}

fn von_neumann_term(s: f64) -> f64 {
    let lo = s - 0.5;
    let hi = s + 0.5;
    let lo_term = if lo > 0.0 { lo * lo.ln() } else { 0.0 };
    hi * hi.ln() - lo_term
}

pub fn classical_von_neumann(spectrum: &SymplecticSpectrum) -> f64 {
    spectrum.values.iter().map(|&s| von_neumann_term(s)).sum()
}

/// `Π_k 1/(2σ̃_k)`.
pub fn classical_purity(spectrum: &SymplecticSpectrum) -> f64 {
    (-spectrum.values.iter().map(|s| (2.0 * s).ln()).sum::<f64>()).exp()
}

/// `u^n / sqrt(det cov)`, with the determinant taken from a Cholesky factor.
pub fn classical_purity_det(cov: &CovarianceMatrix) -> Result<f64> {
    let unit = cov.unit()?;
    let ln_det = cholesky_log_det(cov.matrix()).ok_or(Error::SingularMatrix)?;
    let dim = cov.matrix().dim() as f64;
    Ok((-0.5 * (ln_det - dim * unit.ln())).exp())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaEntry {
    pub alpha: f64,
    /// `None` at `α = 1`, where the generalized purity is not defined.
    pub mu: Option<f64>,
    pub tsallis: f64,
    pub renyi: f64,
}

pub fn alpha_entry(spectrum: &SymplecticSpectrum, alpha: f64) -> Result<AlphaEntry> {
    check_alpha(alpha)?;
    if alpha == 1.0 {
        let s = classical_von_neumann(spectrum);
        return Ok(AlphaEntry { alpha, mu: None, tsallis: s, renyi: s });
    }
    let ln_mu: f64 = spectrum.values.iter().map(|&s| ln_g_alpha(s, alpha)).sum();
    let one_minus_mu = -ln_mu.exp_m1();
    Ok(AlphaEntry {
        alpha,
        mu: Some(ln_mu.exp()),
        tsallis: one_minus_mu / (alpha - 1.0),
        renyi: ln_mu / (1.0 - alpha),
    })
}

/// Generalized purity, Tsallis and Rényi entropies for each α, in input order.
pub fn alpha_family(spectrum: &SymplecticSpectrum, alphas: &[f64]) -> Result<Vec<AlphaEntry>> {
    alphas.iter().map(|&a| alpha_entry(spectrum, a)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub label: String,
    pub spectrum: SymplecticSpectrum,
    pub purity: f64,
    pub linear_entropy: f64,
    pub von_neumann: f64,
    /// Sorted by ascending α.
    pub families: Vec<AlphaEntry>,
}

impl MeasureReport {
    pub fn from_spectrum(label: impl Into<String>, spectrum: SymplecticSpectrum, alphas: &[f64]) -> Result<Self> {
        let mut alphas = alphas.to_vec();
        alphas.sort_by(f64::total_cmp);
        alphas.dedup();
        let families = alpha_family(&spectrum, &alphas)?;
        let purity = classical_purity(&spectrum);
        Ok(MeasureReport {
            label: label.into(),
            purity,
            linear_entropy: 1.0 - purity,
            von_neumann: classical_von_neumann(&spectrum),
            spectrum,
            families,
        })
    }

    pub fn from_covariance(label: impl Into<String>, cov: &CovarianceMatrix, alphas: &[f64]) -> Result<Self> {
        Self::from_spectrum(label, sigma_tilde(cov)?, alphas)
    }

    /// `subsystem, purity, S_L, S, alpha_1, mu_1, tsallis_1, renyi_1, …`.
    pub fn csv_header(&self) -> Vec<String> {
        let mut h: Vec<String> = ["subsystem", "purity", "S_L", "S"].map(String::from).to_vec();
        for i in 1..=self.families.len() {
            h.extend([format!("alpha_{i}"), format!("mu_{i}"), format!("tsallis_{i}"), format!("renyi_{i}")]);
        }
        h
    }

    pub fn csv_row(&self) -> Vec<Cell> {
        let mut row = vec![
            Cell::from(self.label.as_str()),
            Cell::from(self.purity),
            Cell::from(self.linear_entropy),
            Cell::from(self.von_neumann),
        ];
        for f in &self.families {
            row.extend([
                Cell::from(f.alpha),
                Cell::from(f.mu.unwrap_or(f64::NAN)),
                Cell::from(f.tsallis),
                Cell::from(f.renyi),
            ]);
        }
        row
    }
}

/// One-oscillator purity of a two-mode model from its rotation angle and
/// normal frequencies: `sqrt(ω₁ω₂ / ((ω₁c² + ω₂s²)(ω₂c² + ω₁s²)))`.
pub fn capex2_purity(model: &HamiltonianModel) -> Result<f64> {
    let angles = model.two_mode_angles()?;
    let [w1, w2] = angles.frequencies;
    Ok(capex2_from_angle(angles.angle, w1, w2))
}

pub fn capex2_from_angle(angle: f64, w1: f64, w2: f64) -> f64 {
    let (s, c) = angle.sin_cos();
    let (c2, s2) = (c * c, s * s);
    (w1 * w2 / ((w1 * c2 + w2 * s2) * (w2 * c2 + w1 * s2))).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariance::{classical_covariance, reduce, ActionAssignment};
    use crate::linalg::{Matrix, SymMatrix};

    fn spectrum(v: &[f64]) -> SymplecticSpectrum {
        SymplecticSpectrum::new(v.to_vec()).unwrap()
    }

    fn one_mode(model: &HamiltonianModel) -> CovarianceMatrix {
        let modes = model.normal_modes().unwrap();
        let cov = classical_covariance(&modes, &ActionAssignment::uniform(2, 1.0).unwrap()).unwrap();
        reduce(&cov, &[0]).unwrap()
    }

    /// `(M^{1/2})₁₁ (M^{-1/2})₁₁` for a 2×2 `M` from `M^{1/2} = (M + sI)/sqrt(tr M + 2s)`, `s = sqrt(det M)`.
    fn two_by_two_product(a: f64, b: f64, off: f64) -> f64 {
        let s = (a * b - off * off).sqrt();
        (a + s) * (b + s) / (s * (a + b + 2.0 * s))
    }

    #[test]
    fn g_alpha_examples() {
        for alpha in [0.3, 2.0, 7.0, 64.0] {
            assert!((g_alpha_cl(0.5, alpha).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!((g_alpha_cl(1.0, 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((g_alpha_cl(1.0, 4.0).unwrap() - 0.2).abs() < 1e-15);
        assert!((g_alpha_cl(3.7, 2.0).unwrap() - 1.0 / 7.4).abs() < 1e-15);
        assert!(matches!(g_alpha_cl(1.0, 1.0), Err(Error::AlphaOutOfDomain(_))));
        assert!(matches!(g_alpha_cl(1.0, 0.0), Err(Error::AlphaOutOfDomain(_))));
        assert!(matches!(g_alpha_cl(0.4, 2.0), Err(Error::SubHeisenberg(_))));
    }

    #[test]
    fn g_alpha_large_arguments_do_not_overflow() {
        let g = g_alpha_cl(1e6, 64.0).unwrap();
        assert!(g == 0.0 || g.is_finite());
        let ln = ln_g_alpha(1e6, 64.0);
        assert!(ln.is_finite() && ln < -800.0);
    }

    #[test]
    fn von_neumann_examples() {
        assert_eq!(classical_von_neumann(&spectrum(&[0.5, 0.5])), 0.0);
        assert!((classical_von_neumann(&spectrum(&[1.5])) - 2.0 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn clamp_and_reject() {
        let s = SymplecticSpectrum::new(vec![0.5 - 5e-10, 0.7]).unwrap();
        assert_eq!(s.values(), &[0.5, 0.7]);
        assert!(matches!(SymplecticSpectrum::new(vec![0.49]), Err(Error::SubHeisenberg(_))));
        assert!(SymplecticSpectrum::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn alpha_family_examples() {
        let pure = spectrum(&[0.5, 0.5, 0.5]);
        let e = alpha_entry(&pure, 7.0).unwrap();
        assert_eq!((e.mu, e.tsallis, e.renyi), (Some(1.0), 0.0, 0.0));

        let one = spectrum(&[1.0]);
        let e = alpha_entry(&one, 2.0).unwrap();
        assert!((e.mu.unwrap() - 0.5).abs() < 1e-15);
        assert!((e.tsallis - 0.5).abs() < 1e-15);
        assert!((e.renyi - 2f64.ln()).abs() < 1e-15);

        let e = alpha_entry(&one, 1.0).unwrap();
        assert_eq!(e.mu, None);
        assert_eq!(e.tsallis, classical_von_neumann(&one));
        assert!(matches!(alpha_entry(&one, -1.0), Err(Error::AlphaOutOfDomain(_))));
    }

    #[test]
    fn alpha_limit_brackets_von_neumann() {
        // the offset at α = 1 ± ε is about ε S²/2, so keep S moderate
        let s = spectrum(&[0.5, 0.8, 1.4]);
        let vn = classical_von_neumann(&s);
        for alpha in [1.0 - 1e-6, 1.0 + 1e-6] {
            let e = alpha_entry(&s, alpha).unwrap();
            assert!((e.tsallis - vn).abs() < 1e-5, "{} vs {vn}", e.tsallis);
            assert!((e.renyi - vn).abs() < 1e-5);
        }
    }

    #[test]
    fn renyi_survives_many_mixed_modes() {
        let s = spectrum(&vec![30.0; 100]);
        let e = alpha_entry(&s, 64.0).unwrap();
        assert_eq!(e.mu, Some(0.0));
        assert!(e.renyi.is_finite() && e.renyi > 0.0);
        assert!((e.tsallis - 1.0 / 63.0).abs() < 1e-15);
    }

    #[test]
    fn purity_is_mu_two() {
        let s = spectrum(&[0.5, 0.9, 2.4]);
        let report = MeasureReport::from_spectrum("x", s, &DEFAULT_ALPHAS).unwrap();
        let mu2 = report.families.iter().find(|f| f.alpha == 2.0).unwrap().mu.unwrap();
        assert!((mu2 - report.purity).abs() < 1e-12);
        assert_eq!(report.linear_entropy, 1.0 - report.purity);
    }

    #[test]
    fn report_csv_layout() {
        let report = MeasureReport::from_spectrum("{0}", spectrum(&[0.7]), &[4.0, 1.0, 2.0]).unwrap();
        let h = report.csv_header();
        assert_eq!(&h[..5], &["subsystem", "purity", "S_L", "S", "alpha_1"]);
        assert_eq!(h.len(), 4 + 12);
        let row = report.csv_row();
        assert_eq!(row[4], Cell::Num(1.0));
        assert!(row[5].as_f64().unwrap().is_nan());
        assert_eq!(row[12], Cell::Num(4.0));
    }

    #[test]
    fn whole_system_is_pure() {
        let model = HamiltonianModel::TwoModeGeneralized { x1: 2.0, x2: 2.0, y1: 0.0, y2: 1.2, z: 1.0 };
        let modes = model.normal_modes().unwrap();
        let cov = classical_covariance(&modes, &ActionAssignment::uniform(2, 1.0).unwrap()).unwrap();
        for v in sigma_tilde(&cov).unwrap().values() {
            assert!((v - 0.5).abs() < 1e-9);
        }
        assert!((classical_purity_det(&cov).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn two_mode_one_oscillator_matches_matrix_root_closed_form() {
        for (a, b, c) in [(5.0, 20.0, 10.0), (10.0, 12.0, 15.0), (1.0, 100.0, 19.9), (4.0, 9.0, 0.0)] {
            let model = HamiltonianModel::TwoMode { a, b, c };
            let cov = one_mode(&model);
            let product = two_by_two_product(a, b, 0.5 * c);
            let sigma = sigma_tilde(&cov).unwrap().values()[0];
            assert!((sigma - 0.5 * product.sqrt()).abs() < 1e-12, "{a} {b} {c}");
            let want = 1.0 / product.sqrt();
            assert!((classical_purity_det(&cov).unwrap() - want).abs() < 1e-12);
            assert!((capex2_purity(&model).unwrap() - want).abs() < 1e-12);
        }
        let p = capex2_purity(&HamiltonianModel::TwoMode { a: 5.0, b: 20.0, c: 10.0 }).unwrap();
        assert!((p - 0.967_545_386_773_935).abs() < 1e-12, "{p}");
    }

    #[test]
    fn capex2_on_generalized_chain() {
        let model = HamiltonianModel::TwoModeGeneralized { x1: 2.0, x2: 2.0, y1: 0.0, y2: 1.2, z: 1.0 };
        let cov = one_mode(&model);
        let det = classical_purity_det(&cov).unwrap();
        assert!((capex2_purity(&model).unwrap() - det).abs() < 1e-9);
        let det2 = {
            let modes = model.normal_modes().unwrap();
            let full = classical_covariance(&modes, &ActionAssignment::uniform(2, 1.0).unwrap()).unwrap();
            classical_purity_det(&reduce(&full, &[1]).unwrap()).unwrap()
        };
        assert!((det - det2).abs() < 1e-12);
    }

    #[test]
    fn capex2_equal_frequencies() {
        let model = HamiltonianModel::TwoModeGeneralized { x1: 3.0, x2: 2.0, y1: 1.0, y2: 0.0, z: 0.0 };
        assert!(capex2_purity(&model).is_err());
        for angle in [0.0, 0.3, 1.1] {
            assert!((capex2_from_angle(angle, 1.7, 1.7) - 1.0).abs() < 1e-15);
            assert!(capex2_from_angle(angle + 0.1, 1.7, 2.0) < 1.0);
        }
    }

    #[test]
    fn determinant_purity_matches_symplectic_product() {
        let m = Matrix::from_rows(&[
            vec![2.0, 0.3, 0.1, -0.2],
            vec![0.3, 1.5, 0.0, 0.1],
            vec![0.1, 0.0, 1.1, 0.05],
            vec![-0.2, 0.1, 0.05, 0.9],
        ])
        .unwrap();
        let cov = CovarianceMatrix::new(
            SymMatrix::new(m).unwrap(),
            crate::covariance::Scale::Classical { action: 0.25 },
        )
        .unwrap();
        let s = sigma_tilde(&cov).unwrap();
        assert!((classical_purity(&s) - classical_purity_det(&cov).unwrap()).abs() < 1e-12);
    }
}
