//! Second averaging over cycles and finite-pulse time deformations.

use super::schedule::{FpDeformation, PulseSchedule};
use super::CompileError;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RobustnessPolicy {
    /// Cycle-sign Walsh indices; `None` uses `e_i = i + 1`.
    pub e: Option<Vec<usize>>,
    /// Fraction of every interval spent pulsing; `None` or 0 leaves durations alone.
    pub fp_epsilon: Option<f64>,
}

/// Adds the cycle sign pattern and, if requested, the finite-pulse deformation.
pub fn robustify(
    schedule: &PulseSchedule,
    policy: &RobustnessPolicy,
) -> Result<PulseSchedule, CompileError> {
    let n = schedule.n_qubits;
    let e = policy.e.clone().unwrap_or_else(|| (1..=n).collect());
    if e.len() != n {
        return Err(CompileError::Robustness(format!("{} sign indices for {n} qubits", e.len())));
    }
    if let Some(i) = e.iter().position(|&v| v == 0) {
        return Err(CompileError::Robustness(format!("sign index of qubit {i} is zero")));
    }
    let eps = policy.fp_epsilon.unwrap_or(0.0);
    if !(0.0..1.0).contains(&eps) {
        return Err(CompileError::Robustness(format!(
            "pulses would fill {eps} of each interval; need less than 1"
        )));
    }
    let mut out = schedule.clone();
    out.sign_e = e.clone();
    out.fp_deformation = None;
    if eps > 0.0 {
        let mut sorted = e.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(CompileError::Robustness("sign indices must be distinct".into()));
        }
        for (q, b) in schedule.blocks.iter().enumerate() {
            if let Some(i) = (0..n).find(|&i| b.x[i] == 0 || b.y[i] == 0) {
                return Err(CompileError::Robustness(format!(
                    "block {q}: qubit {i} has a zero walsh index; apply dd_guard first"
                )));
            }
        }
        let fp = FpDeformation::for_epsilon(eps);
        for q in 0..schedule.blocks.len() {
            let layers = schedule.block_layers(q);
            let idle: f64 = (0..layers.len())
                .filter(|&k| layers[k].iter().all(|p| p.is_identity()))
                .map(|k| schedule.blocks[q].interval_durations[k])
                .sum();
            if idle < fp.shrink {
                return Err(CompileError::Robustness(format!(
                    "block {q}: identity intervals are shorter than the required shrink"
                )));
            }
        }
        out.fp_deformation = Some(fp);
    }
    out.validate()?;
    Ok(out)
}
