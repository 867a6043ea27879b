//! Classical analogs of Gaussian-state purities, entropies and logarithmic
//! negativity for systems of coupled harmonic oscillators.
//!
//! The pipeline is model → normal modes → angle-averaged covariance matrix →
//! reduction to a subsystem → symplectic spectrum → measures.

pub mod covariance;
pub mod error;
pub mod experiments;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod models;
pub mod negativity;

pub use covariance::{
    angle_average_oracle, classical_covariance, lattice_covariance, partial_transpose,
    quantum_ground_covariance, reduce, ActionAssignment, Bipartition, CovarianceMatrix, Scale,
};
pub use error::{Error, Result};
pub use measures::{MeasureReport, SymplecticSpectrum};
pub use models::{HamiltonianModel, NormalModes};
pub use negativity::{log_negativity, log_negativity_via_symplectic, NegativityResult};
