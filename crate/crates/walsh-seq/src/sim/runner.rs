//! Execution of pulse layers and whole schedules.

use super::krylov::{evolve_in_place, DEFAULT_TOL};
use super::pauli::{PauliString, PauliStringOperator};
use super::state::StateVector;
use super::SimError;
use crate::compiler::{PulseSchedule, ResourceHamiltonian, Su2};
use crate::walsh::PulseSymbol;

/// Pulse imperfections applied during a run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ErrorModel {
    /// Rotation-angle error `δ_i` per qubit, fixed for the whole trajectory.
    pub rotation_errors: Option<Vec<f64>>,
    /// Fraction of every pulsed interval taken by the two square pulses.
    pub fp_epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub tol: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { tol: DEFAULT_TOL }
    }
}

fn pulse_rotation(p: PulseSymbol, sign: i8, delta: f64) -> Su2 {
    let axis = match p {
        PulseSymbol::X => [1.0, 0.0, 0.0],
        PulseSymbol::Y => [0.0, 1.0, 0.0],
        _ => [0.0, 0.0, 1.0],
    };
    Su2::rotation(axis, sign as f64 * (std::f64::consts::PI + delta))
}

/// Applies `⊗_i exp(−i s_i (π + δ_i) O_i / 2)`, or its inverse.
pub fn apply_instant_layer(
    layer: &[PulseSymbol],
    signs: &[i8],
    deltas: Option<&[f64]>,
    inverse: bool,
    psi: &mut StateVector,
) {
    for (q, &p) in layer.iter().enumerate() {
        if p.is_identity() {
            continue;
        }
        match deltas {
            None => psi.apply_pauli(q, p),
            Some(d) => {
                let g = pulse_rotation(p, signs[q], d[q]);
                psi.apply_su2(q, if inverse { g.inverse() } else { g });
            }
        }
    }
}

/// One interval of length `interval` with square pulses of width `t_p` at both ends:
/// `exp(−i t_p (H_R − H_p)) exp(−i (interval − 2 t_p) H_R) exp(−i t_p (H_R + H_p))`.
#[allow(clippy::too_many_arguments)]
pub fn run_interval_finite(
    h_r: &PauliStringOperator,
    layer: &[PulseSymbol],
    signs: &[i8],
    deltas: Option<&[f64]>,
    interval: f64,
    t_p: f64,
    psi: &mut StateVector,
    tol: f64,
) -> Result<(), SimError> {
    if !(t_p >= 0.0 && 2.0 * t_p <= interval) {
        return Err(SimError::InvalidArgument(format!(
            "pulse width {t_p} does not fit twice into interval {interval}"
        )));
    }
    let idle = layer.iter().all(|p| p.is_identity());
    if t_p == 0.0 || idle {
        apply_instant_layer(layer, signs, deltas, false, psi);
        evolve_in_place(h_r, interval, psi.amplitudes_mut(), tol)?;
        apply_instant_layer(layer, signs, deltas, true, psi);
        return Ok(());
    }
    let n = h_r.n_qubits();
    let hp = PauliStringOperator::new(
        n,
        layer.iter().enumerate().filter(|(_, p)| !p.is_identity()).map(|(q, &p)| {
            let d = deltas.map(|d| d[q]).unwrap_or(0.0);
            (signs[q] as f64 * (std::f64::consts::PI + d) / (2.0 * t_p), PauliString::single(q, p))
        }),
    );
    let on = h_r.plus(&hp);
    let off = h_r.plus(&hp.scaled(-1.0));
    evolve_in_place(&on, t_p, psi.amplitudes_mut(), tol)?;
    evolve_in_place(h_r, interval - 2.0 * t_p, psi.amplitudes_mut(), tol)?;
    evolve_in_place(&off, t_p, psi.amplitudes_mut(), tol)?;
    Ok(())
}

fn apply_set(gates: &[Su2], deltas: Option<&[f64]>, inverse: bool, psi: &mut StateVector) {
    for (q, &g) in gates.iter().enumerate() {
        let g = if inverse { g.inverse() } else { g };
        let g = match deltas {
            // The erroneous gate is fixed by the forward rotation; its partner undoes it exactly.
            Some(d) if inverse => g.inverse().with_angle_error(d[q]).inverse(),
            Some(d) => g.with_angle_error(d[q]),
            None => g,
        };
        psi.apply_su2(q, g);
    }
}

/// Runs `cycles` cycles of `schedule`, each simulating target time `tau`.
///
/// With second order, odd cycles traverse the blocks in reverse so that
/// consecutive cycle pairs form a symmetric product.
pub fn run_schedule(
    schedule: &PulseSchedule,
    resource: &ResourceHamiltonian,
    tau: f64,
    cycles: usize,
    errors: &ErrorModel,
    psi0: &StateVector,
    options: RunOptions,
) -> Result<StateVector, SimError> {
    schedule.validate()?;
    resource.validate()?;
    let n = schedule.n_qubits;
    if resource.n_qubits != n || psi0.n_qubits() != n {
        return Err(SimError::DimensionMismatch { expected: n, got: psi0.n_qubits() });
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(SimError::InvalidArgument(format!("cycle time {tau} must be positive")));
    }
    if !(0.0..1.0).contains(&errors.fp_epsilon) {
        return Err(SimError::InvalidArgument("finite-pulse epsilon outside [0, 1)".into()));
    }
    let deltas = errors.rotation_errors.as_deref();
    if deltas.is_some_and(|d| d.len() != n) {
        return Err(SimError::InvalidArgument("one rotation error per qubit required".into()));
    }
    let h_r = resource.to_operator();
    let rescale = schedule.fp_deformation.map(|f| f.rescale).unwrap_or(1.0);
    struct Prepared {
        layers: Vec<Vec<PulseSymbol>>,
        nominal: Vec<f64>,
        actual: Vec<f64>,
    }
    let prepared: Vec<Prepared> = (0..schedule.n_blocks())
        .map(|q| {
            let span = schedule.blocks[q].c * tau * rescale;
            Prepared {
                layers: schedule.block_layers(q),
                nominal: schedule.blocks[q].interval_durations.iter().map(|f| f * span).collect(),
                actual: schedule.effective_fractions(q).iter().map(|f| f * span).collect(),
            }
        })
        .collect();
    let mut psi = psi0.clone();
    let mut signs = vec![1i8; n];
    for l in 0..cycles {
        for (q, s) in signs.iter_mut().enumerate() {
            *s = schedule.pulse_sign(q, l);
        }
        let order: Vec<usize> = if schedule.trotter_order == 2 && l % 2 == 1 {
            (0..schedule.n_blocks()).rev().collect()
        } else {
            (0..schedule.n_blocks()).collect()
        };
        for q in order {
            let block = &schedule.blocks[q];
            let p = &prepared[q];
            apply_set(&block.set_post, deltas, true, &mut psi);
            for k in 0..p.layers.len() {
                let t_p = errors.fp_epsilon * p.nominal[k] / 2.0;
                run_interval_finite(
                    &h_r,
                    &p.layers[k],
                    &signs,
                    deltas,
                    p.actual[k],
                    t_p,
                    &mut psi,
                    options.tol,
                )?;
            }
            apply_set(&block.set_post, deltas, false, &mut psi);
        }
    }
    Ok(psi)
}
