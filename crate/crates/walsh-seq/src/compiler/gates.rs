//! Layers of parallel two-qubit rotations expressed as target Hamiltonians.

use serde::{Deserialize, Serialize};

use super::model::{OpLabel, TargetSpec, TargetTerm};
use super::su2::Su2;
use super::CompileError;

/// A gate acting on two qubits within one layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LayerGate {
    /// `exp(i θ/2 · O_a O_b)`.
    Rotation { a: usize, b: usize, ops: [OpLabel; 2], theta: f64 },
    /// Controlled gate diagonal in the X basis: `exp(iπ/4 (1−X_a)(1−X_b))`.
    Cxx { a: usize, b: usize },
    /// Same in the Y basis.
    Cyy { a: usize, b: usize },
}

impl LayerGate {
    pub fn qubits(&self) -> (usize, usize) {
        match *self {
            LayerGate::Rotation { a, b, .. } | LayerGate::Cxx { a, b } | LayerGate::Cyy { a, b } => {
                (a, b)
            }
        }
    }
}

/// A gate layer as `exp(−i·time·target)` preceded by single-qubit rotations.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerProgram {
    pub target: TargetSpec,
    pub time: f64,
    pub pre_rotations: Vec<(usize, Su2)>,
}

pub fn gate_layer_to_target(
    layer: &[LayerGate],
    n_qubits: usize,
    j: f64,
) -> Result<LayerProgram, CompileError> {
    if !(j > 0.0 && j.is_finite()) {
        return Err(CompileError::InvalidOption(format!("coupling scale {j} must be positive")));
    }
    let mut busy = vec![false; n_qubits];
    let mut rotations = Vec::new();
    let mut pre_rotations = Vec::new();
    for g in layer {
        let (a, b) = g.qubits();
        if a >= n_qubits || b >= n_qubits || a == b {
            return Err(CompileError::InvalidTarget(format!("gate on ({a}, {b})")));
        }
        for q in [a, b] {
            if busy[q] {
                return Err(CompileError::InvalidTarget(format!(
                    "qubit {q} is used by two gates of one layer"
                )));
            }
            busy[q] = true;
        }
        let half = std::f64::consts::FRAC_PI_2;
        match *g {
            LayerGate::Rotation { ops, theta, .. } => rotations.push((a, b, ops, theta)),
            LayerGate::Cxx { .. } | LayerGate::Cyy { .. } => {
                let (op, axis) = match g {
                    LayerGate::Cxx { .. } => (OpLabel::X, [1.0, 0.0, 0.0]),
                    _ => (OpLabel::Y, [0.0, 1.0, 0.0]),
                };
                rotations.push((a, b, [op, op], half));
                pre_rotations.push((a, Su2::rotation(axis, half)));
                pre_rotations.push((b, Su2::rotation(axis, half)));
            }
        }
    }
    let theta_max = rotations.iter().map(|r| r.3.abs()).fold(0.0, f64::max);
    let time = theta_max / (2.0 * j);
    let terms = rotations
        .iter()
        .filter(|r| r.3 != 0.0)
        .map(|&(a, b, ops, theta)| TargetTerm { i: a, j: b, ops, strength: -j * theta / theta_max })
        .collect();
    Ok(LayerProgram { target: TargetSpec::new(n_qubits, terms)?, time, pre_rotations })
}
