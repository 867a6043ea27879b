//! Parameter sweeps over the model families and fits of their output.
//!
//! Sweep points run in parallel; tables come back in grid order and each
//! point is computed single-threaded, so output is identical across runs and
//! thread counts.

mod fit;

pub use fit::{
    cft_abscissa, fit_adjacent_cft, fit_adjacent_cft_table, fit_kappa_asymptote, fit_kappa_asymptote_table,
    kappa_asymptote, FitResult, KAPPA_FIT_MAX_ITERATIONS,
};

use rayon::prelude::*;

use crate::covariance::{
    classical_covariance, lattice_covariance, reduce, ActionAssignment, Bipartition, CovarianceMatrix,
};
use crate::error::{Error, Result};
use crate::io::{Cell, Table};
use crate::measures::{sigma_tilde, MeasureReport};
use crate::models::HamiltonianModel;
use crate::negativity::log_negativity;

pub const DEFAULT_KAPPAS: [f64; 7] = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0];

/// Nonempty, strictly monotone sequence of sweep values.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid(Vec<f64>);

impl Grid {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("grid is empty".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("grid values must be finite".into()));
        }
        let up = values.windows(2).all(|w| w[0] < w[1]);
        let down = values.windows(2).all(|w| w[0] > w[1]);
        if !(up || down) {
            return Err(Error::InvalidInput("grid must be strictly monotone".into()));
        }
        Ok(Grid(values))
    }

    /// `steps` evenly spaced points from `start` to `stop` inclusive.
    pub fn linspace(start: f64, stop: f64, steps: usize) -> Result<Self> {
        match steps {
            0 => Err(Error::InvalidInput("grid needs at least one step".into())),
            1 => Grid::new(vec![start]),
            _ => {
                let h = (stop - start) / (steps - 1) as f64;
                let mut v: Vec<f64> = (0..steps).map(|i| start + h * i as f64).collect();
                v[steps - 1] = stop;
                Grid::new(v)
            }
        }
    }

    /// `steps` log-spaced points from `start` to `stop` inclusive.
    pub fn geomspace(start: f64, stop: f64, steps: usize) -> Result<Self> {
        if !(start > 0.0 && stop > 0.0) {
            return Err(Error::InvalidInput("log-spaced grid needs positive ends".into()));
        }
        let lin = Grid::linspace(start.ln(), stop.ln(), steps)?;
        let mut v: Vec<f64> = lin.0.iter().map(|x| x.exp()).collect();
        v[0] = start;
        *v.last_mut().unwrap() = stop;
        Grid::new(v)
    }

    /// Parses `start:stop:steps`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        let [start, stop, steps] = parts[..] else {
            return Err(Error::parse("grid", format!("expected start:stop:steps, got `{spec}`")));
        };
        let num = |s: &str| s.trim().parse::<f64>().map_err(|e| Error::parse("grid", format!("`{s}`: {e}")));
        let steps = steps
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::parse("grid", format!("steps `{steps}`: {e}")))?;
        Grid::linspace(num(start)?, num(stop)?, steps)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// Asymptotic κ grid for [`fit_kappa_asymptote`]: 24 log-spaced points on [0.5, 64].
pub fn default_asymptote_kappas() -> Grid {
    Grid::geomspace(0.5, 64.0, 24).expect("static grid")
}

fn alpha_label(alpha: f64) -> String {
    format!("{alpha}")
}

fn measure_header(first: &str, extra: &[&str], alphas: &[f64]) -> Vec<String> {
    let mut h = vec![first.to_owned()];
    h.extend(extra.iter().map(|s| s.to_string()));
    h.extend(["sigma1", "purity", "S_L", "S"].map(String::from));
    for &a in alphas {
        let l = alpha_label(a);
        h.extend([format!("mu_{l}"), format!("tsallis_{l}"), format!("renyi_{l}")]);
    }
    h
}

fn measure_cells(report: &MeasureReport) -> Vec<Cell> {
    let mut row = vec![
        Cell::from(report.spectrum.values()[0]),
        Cell::from(report.purity),
        Cell::from(report.linear_entropy),
        Cell::from(report.von_neumann),
    ];
    for f in &report.families {
        row.extend([Cell::from(f.mu.unwrap_or(f64::NAN)), Cell::from(f.tsallis), Cell::from(f.renyi)]);
    }
    row
}

fn sorted_alphas(alphas: &[f64]) -> Vec<f64> {
    let mut a = alphas.to_vec();
    a.sort_by(f64::total_cmp);
    a.dedup();
    a
}

/// One-oscillator report of a two-mode model at unit actions.
pub fn one_oscillator_report(model: &HamiltonianModel, alphas: &[f64]) -> Result<MeasureReport> {
    let modes = model.normal_modes()?;
    let cov = classical_covariance(&modes, &ActionAssignment::uniform(modes.n(), 1.0)?)?;
    let red = reduce(&cov, &[0])?;
    MeasureReport::from_spectrum("{0}", sigma_tilde(&red)?, alphas)
}

fn measure_sweep(
    column: &str,
    grid: &Grid,
    alphas: &[f64],
    make: impl Fn(f64) -> Result<HamiltonianModel> + Sync,
) -> Result<Table> {
    let alphas = sorted_alphas(alphas);
    let rows: Vec<Vec<Cell>> = grid
        .values()
        .par_iter()
        .map(|&x| {
            let report = one_oscillator_report(&make(x)?, &alphas)?;
            let mut row = vec![Cell::from(x)];
            row.extend(measure_cells(&report));
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(measure_header(column, &[], &alphas));
    table.rows = rows;
    Ok(table)
}

/// Two-mode measures as the coupling `C` varies at fixed `A`, `B`.
pub fn sweep_two_mode_c(a: f64, b: f64, c_grid: &Grid, alphas: &[f64]) -> Result<Table> {
    measure_sweep("C", c_grid, alphas, |c| {
        if !(4.0 * a * b - c * c > 0.0) {
            return Err(Error::InvalidModel(format!("4AB - C^2 must be positive, C = {c}")));
        }
        Ok(HamiltonianModel::TwoMode { a, b, c })
    })
}

/// Generalized two-mode chain with `X₁ = X₂ = 2`, `Z = 1`, `Y₁ = 0` as `Y₂` varies.
pub fn sweep_ghoc_y2(y2_grid: &Grid, alphas: &[f64]) -> Result<Table> {
    measure_sweep("Y2", y2_grid, alphas, |y2| {
        Ok(HamiltonianModel::TwoModeGeneralized { x1: 2.0, x2: 2.0, y1: 0.0, y2, z: 1.0 })
    })
}

fn check_kappas(kappas: &[f64]) -> Result<()> {
    if kappas.is_empty() {
        return Err(Error::InvalidInput("kappa grid is empty".into()));
    }
    if let Some(k) = kappas.iter().find(|k| !(**k >= 0.0 && k.is_finite())) {
        return Err(Error::InvalidModel(format!("kappa must be >= 0, got {k}")));
    }
    Ok(())
}

fn lattice(n: usize, k: f64, kappa: f64) -> Result<CovarianceMatrix> {
    lattice_covariance(n, k, kappa, 1.0)
}

/// Groups of `n1` and `n2` consecutive oscillators on a ring of `n`,
/// the second starting `d` sites after the end of the first.
pub fn separated_groups(n: usize, n1: usize, n2: usize, d: usize) -> Result<Bipartition> {
    if n1 + n2 > n || d > n - n1 - n2 {
        return Err(Error::OverlappingGroups(format!(
            "groups of {n1} and {n2} separated by {d} do not fit on a ring of {n}"
        )));
    }
    Bipartition::new((0..n1).collect(), (n1 + d..n1 + d + n2).map(|i| i % n).collect())
}

/// `E_N` for two groups on a ring as the separation `d` varies.
///
/// Columns: `d, kappa, E_N, N`.
pub fn lattice_disjoint_sweep(
    n: usize,
    k: f64,
    n1: usize,
    n2: usize,
    d_grid: &[usize],
    kappas: &[f64],
) -> Result<Table> {
    check_kappas(kappas)?;
    let parts: Vec<Bipartition> = d_grid.iter().map(|&d| separated_groups(n, n1, n2, d)).collect::<Result<_>>()?;
    let mut table = Table::new(["d", "kappa", "E_N", "N"]);
    for &kappa in kappas {
        let cov = lattice(n, k, kappa)?;
        let values: Vec<f64> = parts
            .par_iter()
            .map(|p| Ok(log_negativity(&cov, p)?.log_negativity))
            .collect::<Result<_>>()?;
        for (&d, e) in d_grid.iter().zip(values) {
            table.push(vec![Cell::from(d), Cell::from(kappa), Cell::from(e), Cell::from(n)]);
        }
    }
    Ok(table)
}

/// `E_N` for adjacent groups `[0, n1)` and `[n1, total)` as `n1` varies.
///
/// Columns: `n1, kappa, E_N, N`.
pub fn lattice_adjacent_sweep(
    n: usize,
    k: f64,
    total: usize,
    n1_grid: &[usize],
    kappas: &[f64],
) -> Result<Table> {
    check_kappas(kappas)?;
    if total > n {
        return Err(Error::OverlappingGroups(format!("{total} oscillators do not fit on a ring of {n}")));
    }
    if let Some(&bad) = n1_grid.iter().find(|&&n1| n1 > total) {
        return Err(Error::InvalidInput(format!("n1 = {bad} exceeds {total}")));
    }
    let parts: Vec<Bipartition> =
        n1_grid.iter().map(|&n1| Bipartition::new((0..n1).collect(), (n1..total).collect())).collect::<Result<_>>()?;
    let mut table = Table::new(["n1", "kappa", "E_N", "N"]);
    for &kappa in kappas {
        let cov = lattice(n, k, kappa)?;
        let values: Vec<f64> = parts
            .par_iter()
            .map(|p| Ok(log_negativity(&cov, p)?.log_negativity))
            .collect::<Result<_>>()?;
        for (&n1, e) in n1_grid.iter().zip(values) {
            table.push(vec![Cell::from(n1), Cell::from(kappa), Cell::from(e), Cell::from(n)]);
        }
    }
    Ok(table)
}

/// `E_N` for adjacent groups of `n1` and `n2` as the ring size varies.
///
/// Columns: `N, kappa, E_N`.
pub fn lattice_size_sweep(n_grid: &[usize], k: f64, n1: usize, n2: usize, kappas: &[f64]) -> Result<Table> {
    check_kappas(kappas)?;
    if let Some(&bad) = n_grid.iter().find(|&&n| n < n1 + n2) {
        return Err(Error::OverlappingGroups(format!("ring of {bad} cannot hold {n1} + {n2} oscillators")));
    }
    let part = Bipartition::new((0..n1).collect(), (n1..n1 + n2).collect())?;
    let points: Vec<(usize, f64)> =
        kappas.iter().flat_map(|&kappa| n_grid.iter().map(move |&n| (n, kappa))).collect();
    let values: Vec<f64> = points
        .par_iter()
        .map(|&(n, kappa)| Ok(log_negativity(&lattice(n, k, kappa)?, &part)?.log_negativity))
        .collect::<Result<_>>()?;
    let mut table = Table::new(["N", "kappa", "E_N"]);
    for (&(n, kappa), e) in points.iter().zip(values) {
        table.push(vec![Cell::from(n), Cell::from(kappa), Cell::from(e)]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::negativity::log_negativity_via_symplectic;

    #[test]
    fn grid_parsing() {
        assert_eq!(Grid::parse("0:1:5").unwrap().values(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(Grid::parse("2:2:1").unwrap().values(), &[2.0]);
        assert!(matches!(Grid::parse("0:1"), Err(Error::Parse { .. })));
        assert!(matches!(Grid::parse("0:1:x"), Err(Error::Parse { .. })));
        assert!(Grid::parse("0:0:3").is_err());
        assert!(Grid::new(vec![1.0, 3.0, 2.0]).is_err());
        let g = default_asymptote_kappas();
        assert_eq!(g.values().len(), 24);
        assert_eq!(g.values()[0], 0.5);
        assert_eq!(g.values()[23], 64.0);
    }

    #[test]
    fn two_mode_sweep_edges() {
        let grid = Grid::new(vec![0.0, 10.0, 19.9]).unwrap();
        let t = sweep_two_mode_c(5.0, 20.0, &grid, &[2.0, 1.0, 4.0]).unwrap();
        assert_eq!(t.header[..6], ["C", "sigma1", "purity", "S_L", "S", "mu_1"]);
        let purity = t.column("purity").unwrap();
        assert!((purity[0] - 1.0).abs() < 1e-12);
        assert_eq!(t.column("S").unwrap()[0], 0.0);
        assert!(purity[1] < 1.0 && purity[2] < purity[1]);
        let too_far = Grid::new(vec![19.0, 20.0]).unwrap();
        assert!(matches!(sweep_two_mode_c(5.0, 20.0, &too_far, &[2.0]), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn two_mode_sweep_approaches_tsallis_limit() {
        // with AB = 100 the stability edge is C = 20
        let grid = Grid::new(vec![19.999_999]).unwrap();
        let t = sweep_two_mode_c(5.0, 20.0, &grid, &[2.0, 4.0]).unwrap();
        assert!(t.column("sigma1").unwrap()[0] > 10.0);
        assert!((t.column("tsallis_4").unwrap()[0] - 1.0 / 3.0).abs() < 1e-3);
    }

    #[test]
    fn ghoc_sweep_to_stability_edge() {
        let edge = (8.0_f64 / 3.0).sqrt();
        let grid = Grid::new(vec![0.0, 1.0, edge - 1e-9]).unwrap();
        let t = sweep_ghoc_y2(&grid, &[2.0, 8.0]).unwrap();
        assert_eq!(t.rows.len(), 3);
        let mu8 = t.column("mu_8").unwrap();
        assert!(mu8[2] < 1e-3);
        assert!((t.column("tsallis_8").unwrap()[2] - 1.0 / 7.0).abs() < 1e-3);
        let beyond = Grid::new(vec![edge + 1e-6]).unwrap();
        assert!(matches!(sweep_ghoc_y2(&beyond, &[2.0]), Err(Error::UnstableSystem { .. })));
    }

    #[test]
    fn separated_groups_wrap_around() {
        let p = separated_groups(200, 50, 50, 100).unwrap();
        assert_eq!(p.group2().first(), Some(&150));
        assert_eq!(p.group2().last(), Some(&199));
        let p = separated_groups(10, 3, 3, 4).unwrap();
        assert_eq!(p.group2(), &[7, 8, 9]);
        assert!(matches!(separated_groups(10, 3, 3, 5), Err(Error::OverlappingGroups(_))));
    }

    #[test]
    fn small_disjoint_sweep_is_symmetric() {
        let d: Vec<usize> = (0..=8).collect();
        let t = lattice_disjoint_sweep(24, 0.1, 8, 8, &d, &[2.0]).unwrap();
        let e = t.column("E_N").unwrap();
        for i in 0..=8 {
            assert!((e[i] - e[8 - i]).abs() < 1e-8, "{e:?}");
        }
        assert!(e[4] <= e[0]);
    }

    #[test]
    fn adjacent_sweep_end_points_vanish() {
        let t = lattice_adjacent_sweep(40, 0.01, 20, &[0, 5, 10, 20], &[1.0, 4.0]).unwrap();
        let e = t.column("E_N").unwrap();
        assert_eq!(e[0], 0.0);
        assert_eq!(e[3], 0.0);
        assert!(e[2] > e[1]);
        assert!(e[6] > e[2], "larger kappa entangles more");
    }

    #[test]
    fn size_sweep_zero_coupling() {
        let t = lattice_size_sweep(&[20, 30], 0.1, 10, 10, &[0.0]).unwrap();
        assert!(t.column("E_N").unwrap().iter().all(|&e| e == 0.0));
        assert!(lattice_size_sweep(&[19], 0.1, 10, 10, &[1.0]).is_err());
    }

    #[test]
    fn lattice_fast_path_matches_generic_model() {
        let model = HamiltonianModel::CircularLattice { n: 16, k: 0.1, kappa: 3.0 };
        let modes = model.normal_modes().unwrap();
        let generic = classical_covariance(&modes, &ActionAssignment::uniform(16, 1.0).unwrap()).unwrap();
        let fast = lattice(16, 0.1, 3.0).unwrap();
        let part = separated_groups(16, 4, 4, 2).unwrap();
        let a = log_negativity(&generic, &part).unwrap().log_negativity;
        let b = log_negativity_via_symplectic(&fast, &part).unwrap().log_negativity;
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn sweeps_are_deterministic() {
        let d: Vec<usize> = (0..=6).collect();
        let a = lattice_disjoint_sweep(20, 0.1, 6, 6, &d, &[1.0, 8.0]).unwrap();
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| lattice_disjoint_sweep(20, 0.1, 6, 6, &d, &[1.0, 8.0]).unwrap());
        let mut ta = Vec::new();
        let mut tb = Vec::new();
        a.write_csv(&mut ta).unwrap();
        b.write_csv(&mut tb).unwrap();
        assert_eq!(ta, tb);
    }
}
