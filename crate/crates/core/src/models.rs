//! Quadratic Hamiltonians `H = ½ pᵀp + ½ qᵀKq + qᵀYp` with diagonal `Y`,
//! their normal modes and stability.
//!
//! All families reduce to a pair `(K, Y)`. The system is stable when
//! `M = K − Y²` is positive definite; the normal frequencies are the square
//! roots of the eigenvalues of `M`.

use std::f64::consts::PI;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{eig_sym, Matrix, SymMatrix};

#[derive(Clone, Debug, PartialEq)]
pub enum HamiltonianModel {
    /// `H = ½(p₁² + p₂² + A q₁² + B q₂² + C q₁q₂)`.
    TwoMode { a: f64, b: f64, c: f64 },
    /// Two oscillators with self-couplings `X`, `qp` couplings `Y` and a
    /// spring `½ Z (q₁ − q₂)²` between them.
    TwoModeGeneralized { x1: f64, x2: f64, y1: f64, y2: f64, z: f64 },
    /// General chain with symmetric `K` and diagonal `Y`.
    GeneralizedChain { k: SymMatrix, y: Vec<f64> },
    /// `N` identical oscillators on a ring with on-site `k` and nearest-neighbour `kappa`.
    CircularLattice { n: usize, k: f64, kappa: f64 },
}

/// Orthogonal `S` and frequencies `ω` with `S·diag(ω²)·Sᵀ = K − Y²`.
#[derive(Clone, Debug)]
pub struct NormalModes {
    pub s: Matrix,
    pub omegas: Vec<f64>,
    pub y_diag: Vec<f64>,
}

impl NormalModes {
    pub fn n(&self) -> usize {
        self.omegas.len()
    }

    /// `S · diag(ω²) · Sᵀ`, i.e. `K − Y²`.
    pub fn reconstruct_m(&self) -> Matrix {
        let w2: Vec<f64> = self.omegas.iter().map(|w| w * w).collect();
        self.s.mul_diag_right(&w2).matmul(&self.s.transpose())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabilityReport {
    pub stable: bool,
    pub min_eigenvalue_of_m: f64,
}

/// Closed-form mixing angle and frequencies of a two-oscillator model.
///
/// `frequencies` follow the closed-form labelling: mode 1 is the column
/// `(cos, −sin)` for [`HamiltonianModel::TwoMode`] and `(cos, sin)` for
/// [`HamiltonianModel::TwoModeGeneralized`]. `swapped` is true when that
/// labelling is the reverse of ascending order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoModeAngles {
    pub angle: f64,
    pub frequencies: [f64; 2],
    pub swapped: bool,
}

impl HamiltonianModel {
    pub fn n_modes(&self) -> usize {
        match self {
            HamiltonianModel::TwoMode { .. } | HamiltonianModel::TwoModeGeneralized { .. } => 2,
            HamiltonianModel::GeneralizedChain { y, .. } => y.len(),
            HamiltonianModel::CircularLattice { n, .. } => *n,
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            HamiltonianModel::TwoMode { .. } => "TwoMode",
            HamiltonianModel::TwoModeGeneralized { .. } => "TwoModeGeneralized",
            HamiltonianModel::GeneralizedChain { .. } => "GeneralizedChain",
            HamiltonianModel::CircularLattice { .. } => "CircularLattice",
        }
    }

    /// Checks the parameter constraints of each family.
    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidModel(format!("{name} must be finite, got {v}")))
            }
        };
        match *self {
            HamiltonianModel::TwoMode { a, b, c } => {
                finite("A", a)?;
                finite("B", b)?;
                finite("C", c)?;
                if !(a > 0.0) {
                    return Err(Error::InvalidModel(format!("A must be > 0, got {a}")));
                }
                if !(b > 0.0) {
                    return Err(Error::InvalidModel(format!("B must be > 0, got {b}")));
                }
                if a == b {
                    return Err(Error::InvalidModel("A and B must differ".into()));
                }
                if 4.0 * a * b - c * c < 0.0 {
                    return Err(Error::InvalidModel(format!("4AB - C^2 must be >= 0, C = {c}")));
                }
            }
            HamiltonianModel::TwoModeGeneralized { x1, x2, y1, y2, z } => {
                for (name, v) in [("X1", x1), ("X2", x2), ("Y1", y1), ("Y2", y2), ("Z", z)] {
                    finite(name, v)?;
                }
            }
            HamiltonianModel::GeneralizedChain { ref k, ref y } => {
                if k.dim() == 0 {
                    return Err(Error::InvalidModel("K must be non-empty".into()));
                }
                if k.dim() != y.len() {
                    return Err(Error::InvalidModel(format!(
                        "K is {0}x{0} but Y has {1} entries",
                        k.dim(),
                        y.len()
                    )));
                }
                if !k.as_matrix().as_slice().iter().all(|v| v.is_finite()) {
                    return Err(Error::InvalidModel("K entries must be finite".into()));
                }
                for &v in y {
                    finite("Y", v)?;
                }
            }
            HamiltonianModel::CircularLattice { n, k, kappa } => {
                if n == 0 {
                    return Err(Error::InvalidModel("N must be positive".into()));
                }
                finite("k", k)?;
                finite("kappa", kappa)?;
                if k < 0.0 {
                    return Err(Error::InvalidModel(format!("k must be >= 0, got {k}")));
                }
                if kappa < 0.0 {
                    return Err(Error::InvalidModel(format!("kappa must be >= 0, got {kappa}")));
                }
            }
        }
        Ok(())
    }

    /// The `(K, Y)` pair of the unified chain form.
    pub fn assemble_ky(&self) -> Result<(SymMatrix, Vec<f64>)> {
        self.validate()?;
        Ok(match *self {
            HamiltonianModel::TwoMode { a, b, c } => {
                // C q₁q₂ = ½ qᵀKq with K₁₂ = K₂₁ = C/2
                let k = Matrix::from_rows(&[vec![a, c / 2.0], vec![c / 2.0, b]])?;
                (SymMatrix::new(k)?, vec![0.0, 0.0])
            }
            HamiltonianModel::TwoModeGeneralized { x1, x2, y1, y2, z } => {
                let k = Matrix::from_rows(&[vec![x1 + z, -z], vec![-z, x2 + z]])?;
                (SymMatrix::new(k)?, vec![y1, y2])
            }
            HamiltonianModel::GeneralizedChain { ref k, ref y } => (k.clone(), y.clone()),
            HamiltonianModel::CircularLattice { n, k, kappa } => {
                (circulant_k(n, k, kappa), vec![0.0; n])
            }
        })
    }

    /// `M = K − Y²`.
    pub fn m_matrix(&self) -> Result<SymMatrix> {
        let (k, y) = self.assemble_ky()?;
        let n = k.dim();
        let m = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                k[(i, i)] - y[i] * y[i]
            } else {
                k[(i, j)]
            }
        });
        Ok(SymMatrix::symmetrize(m))
    }

    pub fn stability(&self) -> Result<StabilityReport> {
        let m = self.m_matrix()?;
        let eig = eig_sym(&m)?;
        Ok(StabilityReport { stable: eig.check_positive_definite().is_ok(), min_eigenvalue_of_m: eig.min() })
    }

    /// Normal modes with frequencies ascending.
    pub fn normal_modes(&self) -> Result<NormalModes> {
        let (_, y) = self.assemble_ky()?;
        let m = self.m_matrix()?;
        let eig = eig_sym(&m)?;
        if eig.check_positive_definite().is_err() {
            return Err(Error::UnstableSystem { min_eigenvalue: eig.min() });
        }
        let omegas = eig.values.iter().map(|l| l.sqrt()).collect();
        Ok(NormalModes { s: eig.vectors, omegas, y_diag: y })
    }

    /// Closed-form mixing angle (β for `TwoMode`, θ for `TwoModeGeneralized`).
    pub fn two_mode_angles(&self) -> Result<TwoModeAngles> {
        self.validate()?;
        match *self {
            HamiltonianModel::TwoMode { a, b, c } => {
                if a == b {
                    return Err(Error::DegenerateParameters("A = B".into()));
                }
                // tan 2β = C / (B − A), principal branch
                let beta = 0.5 * (c / (b - a)).atan();
                let w1 = a - 0.5 * c * beta.tan();
                let w2 = b + 0.5 * c * beta.tan();
                if !(w1 > 0.0 && w2 > 0.0) {
                    return Err(Error::UnstableSystem { min_eigenvalue: w1.min(w2) });
                }
                let (w1, w2) = (w1.sqrt(), w2.sqrt());
                Ok(TwoModeAngles { angle: beta, frequencies: [w1, w2], swapped: w1 > w2 })
            }
            HamiltonianModel::TwoModeGeneralized { x1, x2, y1, y2, z } => {
                let num = x2 - x1 + y1 * y1 - y2 * y2;
                if num == 0.0 {
                    return Err(Error::DegenerateParameters("X2 - X1 + Y1^2 - Y2^2 = 0".into()));
                }
                if z == 0.0 {
                    return Err(Error::DegenerateParameters("Z = 0".into()));
                }
                let gamma = num / (2.0 * z);
                // root of t² + 2γt − 1 = 0 with |t| < 1
                let tan_theta = gamma.signum() * (gamma * gamma + 1.0).sqrt() - gamma;
                let w1 = x1 - y1 * y1 + z - z * tan_theta;
                let w2 = x2 - y2 * y2 + z + z * tan_theta;
                if !(w1 > 0.0 && w2 > 0.0) {
                    return Err(Error::UnstableSystem { min_eigenvalue: w1.min(w2) });
                }
                let (w1, w2) = (w1.sqrt(), w2.sqrt());
                Ok(TwoModeAngles {
                    angle: tan_theta.atan(),
                    frequencies: [w1, w2],
                    swapped: w1 > w2,
                })
            }
            _ => Err(Error::InvalidModel(format!(
                "closed-form angles need a two-oscillator model, got {}",
                self.variant_name()
            ))),
        }
    }

    /// Parses a model description such as `{"variant": "TwoMode", "A": 5, "B": 20, "C": 10}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| Error::parse("<document>", e.to_string()))?;
        Self::from_json(&value)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::parse("<document>", "expected a JSON object"))?;
        let variant = obj
            .get("variant")
            .ok_or_else(|| Error::parse("variant", "missing"))?
            .as_str()
            .ok_or_else(|| Error::parse("variant", "expected a string"))?;
        let allowed: &[&str] = match variant {
            "TwoMode" => &["A", "B", "C"],
            "TwoModeGeneralized" => &["X1", "X2", "Y1", "Y2", "Z"],
            "GeneralizedChain" => &["K", "Y"],
            "CircularLattice" => &["N", "k", "kappa"],
            other => {
                return Err(Error::parse(
                    "variant",
                    format!(
                        "unknown variant `{other}` (expected TwoMode, TwoModeGeneralized, \
                         GeneralizedChain or CircularLattice)"
                    ),
                ))
            }
        };
        if let Some(extra) = obj.keys().find(|k| *k != "variant" && !allowed.contains(&k.as_str())) {
            return Err(Error::parse(extra.clone(), format!("unknown field for {variant}")));
        }
        let model = match variant {
            "TwoMode" => HamiltonianModel::TwoMode {
                a: number(obj, "A")?,
                b: number(obj, "B")?,
                c: number(obj, "C")?,
            },
            "TwoModeGeneralized" => HamiltonianModel::TwoModeGeneralized {
                x1: number(obj, "X1")?,
                x2: number(obj, "X2")?,
                y1: number(obj, "Y1")?,
                y2: number(obj, "Y2")?,
                z: number(obj, "Z")?,
            },
            "GeneralizedChain" => {
                let rows = field(obj, "K")?
                    .as_array()
                    .ok_or_else(|| Error::parse("K", "expected an array of rows"))?
                    .iter()
                    .enumerate()
                    .map(|(i, row)| number_array(row, &format!("K[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                let k = Matrix::from_rows(&rows).map_err(|e| Error::parse("K", e.to_string()))?;
                let k = SymMatrix::new(k).map_err(|e| Error::parse("K", e.to_string()))?;
                let y = number_array(field(obj, "Y")?, "Y")?;
                HamiltonianModel::GeneralizedChain { k, y }
            }
            _ => {
                let n = field(obj, "N")?
                    .as_u64()
                    .ok_or_else(|| Error::parse("N", "expected a positive integer"))?;
                HamiltonianModel::CircularLattice {
                    n: n as usize,
                    k: number(obj, "k")?,
                    kappa: number(obj, "kappa")?,
                }
            }
        };
        model.validate()?;
        Ok(model)
    }

    pub fn to_json(&self) -> Value {
        use serde_json::json;
        match self {
            HamiltonianModel::TwoMode { a, b, c } => {
                json!({"variant": "TwoMode", "A": a, "B": b, "C": c})
            }
            HamiltonianModel::TwoModeGeneralized { x1, x2, y1, y2, z } => json!({
                "variant": "TwoModeGeneralized", "X1": x1, "X2": x2, "Y1": y1, "Y2": y2, "Z": z
            }),
            HamiltonianModel::GeneralizedChain { k, y } => {
                let rows: Vec<&[f64]> = (0..k.dim()).map(|i| k.as_matrix().row(i)).collect();
                json!({"variant": "GeneralizedChain", "K": rows, "Y": y})
            }
            HamiltonianModel::CircularLattice { n, k, kappa } => {
                json!({"variant": "CircularLattice", "N": n, "k": k, "kappa": kappa})
            }
        }
    }
}

/// Symmetric circulant with `k + 2κ` on the diagonal and `−κ` between ring neighbours.
pub fn circulant_k(n: usize, k: f64, kappa: f64) -> SymMatrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] += k + 2.0 * kappa;
        // n = 1 and n = 2 fold the ring links onto the diagonal / the single pair
        let j = (i + 1) % n;
        m[(i, j)] -= kappa;
        m[(j, i)] -= kappa;
    }
    SymMatrix::symmetrize(m)
}

/// `ω_j² = k + 2κ(1 − cos(2πj/N))`, j = 0..N, unsorted.
pub fn circulant_frequencies(n: usize, k: f64, kappa: f64) -> Vec<f64> {
    (0..n)
        .map(|j| (k + 2.0 * kappa * (1.0 - (2.0 * PI * j as f64 / n as f64).cos())).sqrt())
        .collect()
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name).ok_or_else(|| Error::parse(name, "missing"))
}

fn number(obj: &Map<String, Value>, name: &str) -> Result<f64> {
    field(obj, name)?.as_f64().ok_or_else(|| Error::parse(name, "expected a number"))
}

fn number_array(value: &Value, name: &str) -> Result<Vec<f64>> {
    value
        .as_array()
        .ok_or_else(|| Error::parse(name, "expected an array of numbers"))?
        .iter()
        .enumerate()
        .map(|(i, v)| v.as_f64().ok_or_else(|| Error::parse(format!("{name}[{i}]"), "expected a number")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::relative_frobenius_error;

    fn ghoc(y2: f64) -> HamiltonianModel {
        HamiltonianModel::TwoModeGeneralized { x1: 2.0, x2: 2.0, y1: 0.0, y2, z: 1.0 }
    }

    #[test]
    fn assemble_generalized_pair() {
        let (k, y) = ghoc(0.0).assemble_ky().unwrap();
        assert_eq!(k.as_matrix().as_slice(), &[3.0, -1.0, -1.0, 3.0]);
        assert_eq!(y, vec![0.0, 0.0]);
    }

    #[test]
    fn assemble_lattice_with_corners() {
        let m = HamiltonianModel::CircularLattice { n: 4, k: 0.1, kappa: 1.0 };
        let (k, y) = m.assemble_ky().unwrap();
        let expected = [
            [2.1, -1.0, 0.0, -1.0],
            [-1.0, 2.1, -1.0, 0.0],
            [0.0, -1.0, 2.1, -1.0],
            [-1.0, 0.0, -1.0, 2.1],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert!((k[(i, j)] - expected[i][j]).abs() < 1e-15);
            }
        }
        assert_eq!(y, vec![0.0; 4]);
    }

    #[test]
    fn assemble_two_mode_halves_cross_term() {
        let (k, _) = HamiltonianModel::TwoMode { a: 5.0, b: 20.0, c: 10.0 }.assemble_ky().unwrap();
        assert_eq!(k.as_matrix().as_slice(), &[5.0, 5.0, 5.0, 20.0]);
    }

    #[test]
    fn two_mode_invariants_enforced() {
        let bad = [
            HamiltonianModel::TwoMode { a: 0.0, b: 1.0, c: 0.0 },
            HamiltonianModel::TwoMode { a: 2.0, b: 2.0, c: 0.0 },
            HamiltonianModel::TwoMode { a: 5.0, b: 20.0, c: 20.5 },
        ];
        for m in bad {
            assert!(matches!(m.assemble_ky(), Err(Error::InvalidModel(_))), "{m:?}");
        }
    }

    #[test]
    fn stability_boundary_of_generalized_chain() {
        let inside = ghoc(1.0).stability().unwrap();
        assert!(inside.stable);
        let outside = ghoc(1.7).stability().unwrap();
        assert!(!outside.stable);
        // det M = 3(3 − Y₂²) − 1 changes sign at Y₂² = 8/3
        let edge = (8.0_f64 / 3.0).sqrt();
        assert!(ghoc(edge - 1e-6).stability().unwrap().stable);
        assert!(!ghoc(edge + 1e-6).stability().unwrap().stable);
        assert!(matches!(ghoc(1.7).normal_modes(), Err(Error::UnstableSystem { .. })));
    }

    #[test]
    fn lattice_is_stable_for_positive_onsite() {
        for n in [1, 2, 3, 10] {
            let m = HamiltonianModel::CircularLattice { n, k: 0.3, kappa: 2.0 };
            assert!(m.stability().unwrap().stable);
        }
        let zero = HamiltonianModel::CircularLattice { n: 6, k: 0.0, kappa: 1.0 };
        assert!(!zero.stability().unwrap().stable);
    }

    #[test]
    fn two_mode_frequencies() {
        let m = HamiltonianModel::TwoMode { a: 5.0, b: 20.0, c: 10.0 };
        let modes = m.normal_modes().unwrap();
        // eigenvalues of [[5,5],[5,20]]: (25 ∓ sqrt(325))/2
        let l1 = (25.0 - 325.0_f64.sqrt()) / 2.0;
        let l2 = (25.0 + 325.0_f64.sqrt()) / 2.0;
        assert!((modes.omegas[0] - l1.sqrt()).abs() < 1e-12);
        assert!((modes.omegas[1] - l2.sqrt()).abs() < 1e-12);
        assert!((modes.omegas[0] - 1.86712).abs() < 1e-5);
        assert!((modes.omegas[1] - 4.638305).abs() < 1e-6);
        let prod = modes.omegas[0] * modes.omegas[0] * modes.omegas[1] * modes.omegas[1];
        assert!((prod - 75.0).abs() < 1e-11);
        let m_back = modes.reconstruct_m();
        assert!(relative_frobenius_error(&m_back, m.m_matrix().unwrap().as_matrix()) < 1e-12);
    }

    #[test]
    fn decoupled_two_mode() {
        let modes = HamiltonianModel::TwoMode { a: 4.0, b: 9.0, c: 0.0 }.normal_modes().unwrap();
        assert_eq!(modes.omegas, vec![2.0, 3.0]);
        assert!(modes.s.sub(&Matrix::identity(2)).max_abs() < 1e-15);
    }

    #[test]
    fn lattice_normal_modes_match_fourier() {
        let m = HamiltonianModel::CircularLattice { n: 200, k: 0.1, kappa: 1.0 };
        let modes = m.normal_modes().unwrap();
        let mut expected = circulant_frequencies(200, 0.1, 1.0);
        expected.sort_by(f64::total_cmp);
        for (a, b) in modes.omegas.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-11);
        }
    }

    #[test]
    fn closed_form_angles_two_mode() {
        let m = HamiltonianModel::TwoMode { a: 5.0, b: 20.0, c: 10.0 };
        let angles = m.two_mode_angles().unwrap();
        // tan 2β = 10/15
        assert!(((2.0 * angles.angle).tan() - 10.0 / 15.0).abs() < 1e-14);
        // tan β = (−3 + √13)/2
        assert!((angles.angle.tan() - (13.0_f64.sqrt() - 3.0) / 2.0).abs() < 1e-14);
        assert!((angles.angle - 0.29400).abs() < 1e-5);
        let modes = m.normal_modes().unwrap();
        assert!(!angles.swapped);
        assert!((angles.frequencies[0] - modes.omegas[0]).abs() < 1e-9);
        assert!((angles.frequencies[1] - modes.omegas[1]).abs() < 1e-9);
    }

    #[test]
    fn closed_form_angles_generalized() {
        let m = HamiltonianModel::TwoModeGeneralized { x1: 1.0, x2: 2.0, y1: 0.0, y2: 0.0, z: 1.0 };
        let angles = m.two_mode_angles().unwrap();
        // γ = 1/2: t² + t − 1 = 0 → t = (√5 − 1)/2
        assert!((angles.angle.tan() - (5.0_f64.sqrt() - 1.0) / 2.0).abs() < 1e-14);
        // M = [[2, −1], [−1, 3]] has eigenvalues (5 ∓ √5)/2
        let w1 = ((5.0 - 5.0_f64.sqrt()) / 2.0).sqrt();
        let w2 = ((5.0 + 5.0_f64.sqrt()) / 2.0).sqrt();
        assert!((angles.frequencies[0] - w1).abs() < 1e-12);
        assert!((angles.frequencies[1] - w2).abs() < 1e-12);
    }

    #[test]
    fn closed_form_angles_degenerate() {
        assert!(matches!(ghoc(0.0).two_mode_angles(), Err(Error::DegenerateParameters(_))));
        let z0 = HamiltonianModel::TwoModeGeneralized { x1: 1.0, x2: 2.0, y1: 0.0, y2: 0.0, z: 0.0 };
        assert!(matches!(z0.two_mode_angles(), Err(Error::DegenerateParameters(_))));
        let lattice = HamiltonianModel::CircularLattice { n: 3, k: 1.0, kappa: 1.0 };
        assert!(lattice.two_mode_angles().is_err());
    }

    #[test]
    fn swapped_flag_when_labels_reverse() {
        // γ < 0 makes mode 1 the stiffer one
        let m = HamiltonianModel::TwoModeGeneralized { x1: 3.0, x2: 1.0, y1: 0.0, y2: 0.0, z: 1.0 };
        let angles = m.two_mode_angles().unwrap();
        let modes = m.normal_modes().unwrap();
        assert!(angles.swapped);
        assert!((angles.frequencies[0] - modes.omegas[1]).abs() < 1e-12);
        assert!((angles.frequencies[1] - modes.omegas[0]).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip_and_errors() {
        let m = HamiltonianModel::from_json_str(r#"{"variant":"TwoMode","A":5,"B":20,"C":10}"#)
            .unwrap();
        assert_eq!(m, HamiltonianModel::TwoMode { a: 5.0, b: 20.0, c: 10.0 });
        let chain = HamiltonianModel::from_json_str(
            r#"{"variant":"GeneralizedChain","K":[[3,-1],[-1,3]],"Y":[0,0.5]}"#,
        )
        .unwrap();
        assert_eq!(HamiltonianModel::from_json(&chain.to_json()).unwrap(), chain);

        let err = HamiltonianModel::from_json_str(r#"{"variant":"TwoMode","A":5,"B":"x","C":1}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Parse { ref field, .. } if field == "B"), "{err}");
        let err = HamiltonianModel::from_json_str(r#"{"variant":"CircularLattice","N":4,"k":0.1}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Parse { ref field, .. } if field == "kappa"), "{err}");
        let err = HamiltonianModel::from_json_str(
            r#"{"variant":"GeneralizedChain","K":[[1,2],[3,1]],"Y":[0,0]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { ref field, .. } if field == "K"), "{err}");
        let err = HamiltonianModel::from_json_str(r#"{"variant":"TwoMode","A":5,"B":2,"C":1,"D":0}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Parse { ref field, .. } if field == "D"), "{err}");
        let err = HamiltonianModel::from_json_str(r#"{"variant":"Nope"}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { ref field, .. } if field == "variant"), "{err}");
    }
}
