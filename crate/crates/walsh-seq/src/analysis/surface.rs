//! Stabilizer readout of the seven-qubit surface code, four gate layers deep.
//!
//! Data qubits are 0–3, the X-type ancillas 4 and 5 and the Y-type ancilla 6.
//! Every layer of controlled gates is compiled into its own Walsh schedule.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::metrics::pauli_deviation;
use crate::compiler::{
    compile, gate_layer_to_target, CompileOptions, LayerGate, LayerProgram, PulseSchedule,
    ResourceHamiltonian, ResourceModel,
};
use crate::sim::{
    evolve_in_place, run_schedule, ErrorModel, PauliString, RunOptions, SimError, StateVector,
};
use crate::walsh::PulseSymbol;

pub const N_QUBITS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    /// Square plaquette with ancillas at the centre and above and below.
    Grid,
    /// All seven qubits on a line.
    Chain,
}

impl Geometry {
    pub fn name(self) -> &'static str {
        match self {
            Geometry::Grid => "grid",
            Geometry::Chain => "chain",
        }
    }

    pub fn positions(self) -> [[f64; 2]; N_QUBITS] {
        match self {
            Geometry::Grid => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let p = [[0.0, 0.0], [2.0, 0.0], [0.0, 2.0], [2.0, 2.0], [1.0, -1.0], [1.0, 3.0], [1.0, 1.0]];
                p.map(|[x, y]| [x * s, y * s])
            }
            Geometry::Chain => {
                let p = [0.0, 1.0, 5.0, 4.0, 2.0, 6.0, 3.0];
                p.map(|x| [x, 0.0])
            }
        }
    }
}

impl std::str::FromStr for Geometry {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "grid" => Ok(Geometry::Grid),
            "chain" => Ok(Geometry::Chain),
            _ => Err(format!("unknown geometry `{s}`")),
        }
    }
}

/// The four layers of controlled gates.
pub fn gate_layers() -> Vec<Vec<LayerGate>> {
    use LayerGate::{Cxx, Cyy};
    vec![
        vec![Cyy { a: 6, b: 0 }, Cxx { a: 5, b: 2 }],
        vec![Cyy { a: 6, b: 1 }, Cxx { a: 5, b: 3 }],
        vec![Cyy { a: 6, b: 2 }, Cxx { a: 4, b: 0 }],
        vec![Cyy { a: 6, b: 3 }, Cxx { a: 4, b: 1 }],
    ]
}

/// Ancilla-stabilizer correlators `Z_a · S`, all `+1` after the ideal circuit.
pub fn readout_strings() -> [PauliString; 3] {
    use PulseSymbol::{X, Y, Z};
    [
        PauliString::from_factors(&[(4, Z), (0, X), (1, X)]),
        PauliString::from_factors(&[(5, Z), (2, X), (3, X)]),
        PauliString::from_factors(&[(6, Z), (0, Y), (1, Y), (2, Y), (3, Y)]),
    ]
}

#[derive(Debug, Clone)]
pub struct CompiledLayer {
    pub program: LayerProgram,
    pub schedule: PulseSchedule,
}

#[derive(Debug, Clone)]
pub struct Surface7 {
    pub geometry: Geometry,
    pub resource: ResourceHamiltonian,
    pub layers: Vec<CompiledLayer>,
    pub j: f64,
}

impl Surface7 {
    pub fn new(geometry: Geometry, alpha: f64, trotter_order: u8) -> Result<Self, SimError> {
        let j = 1.0;
        let resource =
            ResourceHamiltonian::power_law(&geometry.positions(), j, alpha, ResourceModel::Xy)?;
        let options = CompileOptions { trotter_order, ..Default::default() };
        let layers = gate_layers()
            .iter()
            .map(|l| {
                let program = gate_layer_to_target(l, N_QUBITS, j)?;
                let schedule = compile(&program.target, &resource, &options)?;
                Ok(CompiledLayer { program, schedule })
            })
            .collect::<Result<Vec<_>, crate::compiler::CompileError>>()?;
        Ok(Surface7 { geometry, resource, layers, j })
    }

    /// Total number of Walsh sequences over the four layers.
    pub fn n_blocks(&self) -> usize {
        self.layers.iter().map(|l| l.schedule.n_blocks()).sum()
    }

    /// Haar-random data qubits with all ancillas in `|0⟩`.
    pub fn initial_state(seed: u64) -> StateVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        StateVector::haar(4, &mut rng).tensor(&StateVector::zero(3))
    }

    /// Mean `J τ/n` over the layers after rounding to whole cycles.
    pub fn realized_tau_over_n(&self, tau_over_n: f64) -> f64 {
        let sum: f64 = self
            .layers
            .iter()
            .map(|l| {
                let (tau, _) = cycle_split(&l.schedule, tau_over_n / self.j, l.program.time);
                self.j * tau / l.schedule.sequence_length() as f64
            })
            .sum();
        sum / self.layers.len() as f64
    }

    /// Runs the circuit; `tau_over_n = None` evolves each layer target exactly.
    pub fn run(
        &self,
        psi0: &StateVector,
        tau_over_n: Option<f64>,
        tol: f64,
    ) -> Result<StateVector, SimError> {
        let mut psi = psi0.clone();
        for layer in &self.layers {
            for &(q, g) in &layer.program.pre_rotations {
                psi.apply_su2(q, g);
            }
            let time = layer.program.time;
            match tau_over_n {
                None => {
                    let h = layer.program.target.to_operator();
                    evolve_in_place(&h, time, psi.amplitudes_mut(), tol)?;
                }
                Some(dt) => {
                    let (tau, cycles) = cycle_split(&layer.schedule, dt / self.j, time);
                    psi = run_schedule(
                        &layer.schedule,
                        &self.resource,
                        tau,
                        cycles,
                        &ErrorModel::default(),
                        &psi,
                        RunOptions { tol },
                    )?;
                }
            }
        }
        Ok(psi)
    }
}

/// Cycle time `τ` and cycle count for a target time `total` with `τ/n` close to `dt`,
/// `n` being the Walsh sequence length.
pub fn cycle_split(schedule: &PulseSchedule, dt: f64, total: f64) -> (f64, usize) {
    let tau = dt * schedule.sequence_length() as f64;
    let cycles = ((total / tau).round() as usize).max(1);
    (total / cycles as f64, cycles)
}

/// `1 − |⟨Z_a S⟩|` for each of the three readout correlators.
pub fn readout_deviations(psi: &StateVector) -> [f64; 3] {
    readout_strings().map(|p| pauli_deviation(psi, p))
}

/// Readout deviations for one Haar-random data state.
pub fn surface7_run(
    geometry: Geometry,
    alpha: f64,
    tau_over_n: f64,
    trotter_order: u8,
    seed: u64,
) -> Result<[f64; 3], SimError> {
    let code = Surface7::new(geometry, alpha, trotter_order)?;
    let psi = code.run(&Surface7::initial_state(seed), Some(tau_over_n), crate::sim::DEFAULT_TOL)?;
    Ok(readout_deviations(&psi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_circuit_reads_out_stabilizers() {
        let code = Surface7::new(Geometry::Grid, 3.0, 2).unwrap();
        for seed in 0..3 {
            let psi = code.run(&Surface7::initial_state(seed), None, 1e-13).unwrap();
            for d in readout_deviations(&psi) {
                assert!(d < 1e-10, "{d}");
            }
        }
    }

    #[test]
    fn block_counts() {
        assert_eq!(Surface7::new(Geometry::Grid, 3.0, 2).unwrap().n_blocks(), 4);
        assert_eq!(Surface7::new(Geometry::Chain, 0.2, 2).unwrap().n_blocks(), 5);
    }
}
