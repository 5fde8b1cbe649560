//! Metrics, analytical bounds, dense oracles and the application benchmarks.

pub mod bounds;
pub mod maxcut;
pub mod metrics;
pub mod oracle;
pub mod reference;
pub mod surface;

pub use bounds::{a_alpha, b_alpha, cycle_period_for, trotter_bound, BoundError, TrotterBound};
pub use maxcut::{dqa_run, maxcut_energy_gap, registry_graph, DqaOptions, GapReport};
pub use metrics::{
    fidelity, infidelity, log_log_slope, log_space, pauli_deviation, stabilizer_expectations,
};
pub use reference::cluster_reference;
pub use surface::{surface7_run, Geometry, Surface7};
