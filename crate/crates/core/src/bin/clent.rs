use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use clent::covariance::{classical_covariance, lattice_covariance, quantum_ground_covariance, reduce};
use clent::experiments::{
    self, default_asymptote_kappas, fit_adjacent_cft_table, fit_kappa_asymptote_table, Grid, DEFAULT_KAPPAS,
};
use clent::io::Table;
use clent::measures::{MeasureReport, DEFAULT_ALPHAS};
use clent::{ActionAssignment, Bipartition, CovarianceMatrix, Error, HamiltonianModel, Result};

#[derive(Parser)]
#[command(name = "clent", version, about = "Classical analogs of entanglement measures for oscillator systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit a JSON array of records instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// One-oscillator measures of the two-mode model as C varies.
    TwomodeSweep {
        #[arg(long, default_value_t = 5.0)]
        a: f64,
        #[arg(long, default_value_t = 20.0)]
        b: f64,
        /// C values as start:stop:steps.
        #[arg(long, default_value = "0:19.9:200")]
        grid: String,
        #[arg(long)]
        alphas: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// One-oscillator measures of the generalized chain (X1 = X2 = 2, Z = 1, Y1 = 0) as Y2 varies.
    GhocSweep {
        #[arg(long, default_value = "0:1.63:164")]
        grid: String,
        #[arg(long)]
        alphas: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Log-negativity of two separated groups on a ring as the separation varies.
    LatticeD {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        k: f64,
        #[arg(long, default_value_t = 50)]
        n1: usize,
        #[arg(long, default_value_t = 50)]
        n2: usize,
        /// Separations as start:stop:steps (integers).
        #[arg(long, default_value = "0:100:101")]
        grid: String,
        /// Comma-separated coupling constants.
        #[arg(long)]
        kappas: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Log-negativity of adjacent groups [0, n1) and [n1, total) as n1 varies.
    LatticeAdjacent {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 0.0001)]
        k: f64,
        #[arg(long, default_value_t = 100)]
        total: usize,
        #[arg(long, default_value = "0:100:101")]
        grid: String,
        #[arg(long)]
        kappas: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Log-negativity of two adjacent groups as the ring size varies.
    LatticeSize {
        #[arg(long, default_value_t = 0.1)]
        k: f64,
        #[arg(long, default_value_t = 10)]
        n1: usize,
        #[arg(long, default_value_t = 10)]
        n2: usize,
        /// Ring sizes as start:stop:steps (integers).
        #[arg(long, default_value = "20:500:25")]
        grid: String,
        #[arg(long)]
        kappas: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Fit E = (b1/4) ln[(L/pi) sin(pi n1/L)] + b2 to an adjacent sweep.
    FitCft {
        /// Output of lattice-adjacent; computed on the fly when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 4.0)]
        kappa: f64,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 0.0001)]
        k: f64,
        #[arg(long, default_value_t = 100)]
        total: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Fit E = a - b/(kappa^c + d) to a size sweep at one ring size.
    FitKappa {
        /// Output of lattice-size; computed on the fly when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        k: f64,
        #[arg(long, default_value_t = 10)]
        n1: usize,
        #[arg(long, default_value_t = 10)]
        n2: usize,
        /// Coupling grid when computing on the fly (default: 24 log-spaced points on [0.5, 64]).
        #[arg(long)]
        kappas: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Purities and entropies of a subsystem of a model read from JSON.
    Measures {
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated 0-based oscillator indices (default: all).
        #[arg(long)]
        subsystem: Option<String>,
        #[arg(long)]
        alphas: Option<String>,
        #[command(flatten)]
        state: State,
        /// Also write the reduced covariance matrix as CSV.
        #[arg(long)]
        cov_out: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Log-negativity of a bipartition of a model read from JSON.
    Negativity {
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated 0-based indices of the first group.
        #[arg(long)]
        group1: String,
        /// Comma-separated 0-based indices of the second group (may be empty).
        #[arg(long, default_value = "")]
        group2: String,
        /// Compute through the symplectic spectrum of the partial transpose.
        #[arg(long)]
        symplectic: bool,
        #[command(flatten)]
        state: State,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct State {
    /// Common action variable of the classical state.
    #[arg(long, default_value_t = 1.0, conflicts_with = "hbar")]
    action: f64,
    /// Use the quantum ground state with this hbar instead.
    #[arg(long)]
    hbar: Option<f64>,
}

fn parse_list<T: std::str::FromStr>(field: &str, text: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| Error::parse(field, format!("`{s}`: {e}"))))
        .collect()
}

fn alphas(arg: &Option<String>) -> Result<Vec<f64>> {
    match arg {
        Some(s) => parse_list("alphas", s),
        None => Ok(DEFAULT_ALPHAS.to_vec()),
    }
}

fn kappas(arg: &Option<String>) -> Result<Vec<f64>> {
    match arg {
        Some(s) => parse_list("kappas", s),
        None => Ok(DEFAULT_KAPPAS.to_vec()),
    }
}

fn integer_grid(field: &str, spec: &str) -> Result<Vec<usize>> {
    Grid::parse(spec)?
        .values()
        .iter()
        .map(|&x| {
            let r = x.round();
            if (x - r).abs() > 1e-9 || r < 0.0 {
                Err(Error::parse(field, format!("grid value {x} is not a nonnegative integer")))
            } else {
                Ok(r as usize)
            }
        })
        .collect()
}

fn emit(table: &Table, output: &Output) -> Result<()> {
    let sink: Box<dyn Write> = match &output.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| io_error(path, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    if output.json {
        table.write_json(sink)
    } else {
        table.write_csv(sink)
    }
}

fn io_error(path: &Path, e: io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

fn read_table(path: &Path) -> Result<Table> {
    Table::read_csv(File::open(path).map_err(|e| io_error(path, e))?)
}

fn load_model(path: &Path) -> Result<HamiltonianModel> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    HamiltonianModel::from_json_str(&text)
}

fn covariance(model: &HamiltonianModel, state: &State) -> Result<CovarianceMatrix> {
    if let Some(hbar) = state.hbar {
        return quantum_ground_covariance(&model.normal_modes()?, hbar);
    }
    match *model {
        HamiltonianModel::CircularLattice { n, k, kappa } => lattice_covariance(n, k, kappa, state.action),
        _ => {
            let modes = model.normal_modes()?;
            classical_covariance(&modes, &ActionAssignment::uniform(modes.n(), state.action)?)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::TwomodeSweep { a, b, grid, alphas: al, output } => {
            emit(&experiments::sweep_two_mode_c(a, b, &Grid::parse(&grid)?, &alphas(&al)?)?, &output)
        }
        Command::GhocSweep { grid, alphas: al, output } => {
            emit(&experiments::sweep_ghoc_y2(&Grid::parse(&grid)?, &alphas(&al)?)?, &output)
        }
        Command::LatticeD { n, k, n1, n2, grid, kappas: ks, output } => {
            let d = integer_grid("grid", &grid)?;
            emit(&experiments::lattice_disjoint_sweep(n, k, n1, n2, &d, &kappas(&ks)?)?, &output)
        }
        Command::LatticeAdjacent { n, k, total, grid, kappas: ks, output } => {
            let n1 = integer_grid("grid", &grid)?;
            emit(&experiments::lattice_adjacent_sweep(n, k, total, &n1, &kappas(&ks)?)?, &output)
        }
        Command::LatticeSize { k, n1, n2, grid, kappas: ks, output } => {
            let sizes = integer_grid("grid", &grid)?;
            emit(&experiments::lattice_size_sweep(&sizes, k, n1, n2, &kappas(&ks)?)?, &output)
        }
        Command::FitCft { input, kappa, n, k, total, output } => {
            let table = match input {
                Some(path) => read_table(&path)?,
                None => {
                    let n1: Vec<usize> = (0..=total).collect();
                    experiments::lattice_adjacent_sweep(n, k, total, &n1, &[kappa])?
                }
            };
            emit(&fit_adjacent_cft_table(&table, kappa, total as f64)?.to_table(), &output)
        }
        Command::FitKappa { input, n, k, n1, n2, kappas: ks, output } => {
            let table = match input {
                Some(path) => read_table(&path)?,
                None => {
                    let grid = match ks {
                        Some(s) => parse_list("kappas", &s)?,
                        None => default_asymptote_kappas().values().to_vec(),
                    };
                    experiments::lattice_size_sweep(&[n], k, n1, n2, &grid)?
                }
            };
            emit(&fit_kappa_asymptote_table(&table, n)?.to_table(), &output)
        }
        Command::Measures { model, subsystem, alphas: al, state, cov_out, output } => {
            let model = load_model(&model)?;
            let cov = covariance(&model, &state)?;
            let idx: Vec<usize> = match subsystem {
                Some(s) => parse_list("subsystem", &s)?,
                None => (0..cov.n_modes()).collect(),
            };
            let red = reduce(&cov, &idx)?;
            if let Some(path) = cov_out {
                red.write_csv(BufWriter::new(File::create(&path).map_err(|e| io_error(&path, e))?))?;
            }
            let label = idx.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let report = MeasureReport::from_covariance(format!("{{{label}}}"), &red, &alphas(&al)?)?;
            let mut table = Table::new(report.csv_header());
            table.push(report.csv_row());
            emit(&table, &output)
        }
        Command::Negativity { model, group1, group2, symplectic, state, output } => {
            let model = load_model(&model)?;
            let cov = covariance(&model, &state)?;
            let part = Bipartition::new(parse_list("group1", &group1)?, parse_list("group2", &group2)?)?;
            let result = if symplectic {
                clent::log_negativity_via_symplectic(&cov, &part)?
            } else {
                clent::log_negativity(&cov, &part)?
            };
            let mut table = Table::new(["n1", "n2", "E_N", "negativity", "lambda_min"]);
            table.push(vec![
                part.group1().len().into(),
                part.group2().len().into(),
                result.log_negativity.into(),
                result.negativity.into(),
                result.lambda_tilde.first().copied().unwrap_or(f64::NAN).into(),
            ]);
            emit(&table, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("clent: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
