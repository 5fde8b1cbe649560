//! State-vector simulation of pulse schedules.

mod krylov;
mod measure;
mod pauli;
mod runner;
mod state;

use thiserror::Error;

pub use krylov::{evolve_in_place, DEFAULT_TOL};
pub use measure::{measure_qubit, pauli_expectation};
pub use pauli::{PauliString, PauliStringOperator};
pub use runner::{
    apply_instant_layer, run_interval_finite, run_schedule, ErrorModel, RunOptions,
};
pub use state::StateVector;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("propagator did not reach tolerance {tol} for time {time}")]
    NonConvergence { time: f64, tol: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Schedule(#[from] crate::compiler::CompileError),
}

/// `exp(−i t H) ψ`.
pub fn evolve(
    h: &PauliStringOperator,
    t: f64,
    psi: &StateVector,
    tol: f64,
) -> Result<StateVector, SimError> {
    let mut out = psi.clone();
    evolve_in_place(h, t, out.amplitudes_mut(), tol)?;
    Ok(out)
}
