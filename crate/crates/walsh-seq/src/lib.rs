//! Walsh pulse sequences for programming spin Hamiltonians.
//!
//! A fixed resource interaction (power-law XY or Ising couplings) is turned into a
//! chosen two-body target by interleaving it with layers of single-qubit Pauli
//! pulses whose pattern follows Walsh functions. This crate compiles targets into
//! such schedules, simulates them exactly on state vectors and reproduces the
//! accuracy, robustness and application benchmarks.
//!
//! ```
//! use walsh_seq::compiler::{compile, CompileOptions, ResourceHamiltonian, TargetSpec};
//!
//! let resource = ResourceHamiltonian::power_law_chain(4, 1.0, 3.0).unwrap();
//! let target = TargetSpec::ising_chain(4, 1.0);
//! let schedule = compile(&target, &resource, &CompileOptions::default()).unwrap();
//! assert_eq!(schedule.n_blocks(), 2);
//! ```

pub mod analysis;
pub mod compiler;
pub mod experiments;
pub mod graphdecomp;
pub mod sim;
pub mod walsh;
