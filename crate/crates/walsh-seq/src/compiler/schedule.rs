//! Compiled pulse schedules and their JSON form.

use serde::{Deserialize, Serialize};

use super::su2::Su2;
use super::CompileError;
use crate::walsh::{length_for_max_index, pulse_layers, walsh_sign, PulseSymbol, WalshAssignment};

pub const SCHEDULE_VERSION: u32 = 1;

/// One Walsh sequence run for `c_q · τ` per cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Block {
    #[serde(rename = "c_q")]
    pub c: f64,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// Fractions of the block duration, one per layer; they sum to 1.
    pub interval_durations: Vec<f64>,
    pub set_pre: Vec<Su2>,
    pub set_post: Vec<Su2>,
}

impl Block {
    pub fn assignment(&self) -> WalshAssignment {
        WalshAssignment { x: self.x.clone(), y: self.y.clone() }
    }

    pub fn has_set_pulses(&self) -> bool {
        self.set_pre.iter().chain(&self.set_post).any(|g| !g.is_identity())
    }
}

/// Finite-pulse compensation: each block's identity-frame intervals lose the fraction
/// `shrink` of the block duration and every duration is stretched by `rescale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FpDeformation {
    pub epsilon: f64,
    pub shrink: f64,
    pub rescale: f64,
}

impl FpDeformation {
    pub fn for_epsilon(epsilon: f64) -> FpDeformation {
        FpDeformation {
            epsilon,
            shrink: 3.0 * epsilon / 8.0,
            rescale: 1.0 / (1.0 - 5.0 * epsilon / 8.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseSchedule {
    pub version: u32,
    pub n_qubits: usize,
    pub trotter_order: u8,
    pub blocks: Vec<Block>,
    /// Second-averaging Walsh indices `e_i`; empty for constant pulse signs.
    #[serde(default)]
    pub sign_e: Vec<usize>,
    #[serde(default)]
    pub fp_deformation: Option<FpDeformation>,
}

/// Pulse counts of one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PulseCounts {
    /// Every non-identity single-qubit pulse, each layer applied and undone separately.
    pub raw: usize,
    /// Consecutive layer pulses merged into one operation per qubit.
    pub merged: usize,
}

impl PulseSchedule {
    pub fn validate(&self) -> Result<(), CompileError> {
        let bad = |m: String| Err(CompileError::InvalidSchedule(m));
        if self.version != SCHEDULE_VERSION {
            return bad(format!("unsupported schedule version {}", self.version));
        }
        if self.trotter_order != 1 && self.trotter_order != 2 {
            return bad(format!("trotter order {} is not 1 or 2", self.trotter_order));
        }
        if !self.sign_e.is_empty() && self.sign_e.len() != self.n_qubits {
            return bad("sign_e needs one index per qubit".into());
        }
        if let Some(fp) = self.fp_deformation {
            if !(0.0..1.0).contains(&fp.epsilon) {
                return bad(format!("finite-pulse epsilon {} outside [0, 1)", fp.epsilon));
            }
        }
        for (q, b) in self.blocks.iter().enumerate() {
            let n = self.n_qubits;
            if b.x.len() != n || b.y.len() != n || b.set_pre.len() != n || b.set_post.len() != n {
                return bad(format!("block {q} has per-qubit arrays of the wrong length"));
            }
            for (pre, post) in b.set_pre.iter().zip(&b.set_post) {
                let p = pre.compose(*post);
                if (p.w.abs() - 1.0).abs() > 1e-9 {
                    return bad(format!("block {q}: set_pre is not the inverse of set_post"));
                }
            }
            if !(b.c.is_finite() && b.c > 0.0) {
                return bad(format!("block {q} has non-positive duration {}", b.c));
            }
            if b.interval_durations.len() != self.block_layers(q).len() {
                return bad(format!("block {q} interval count does not match its layers"));
            }
            let s: f64 = b.interval_durations.iter().sum();
            if (s - 1.0).abs() > 1e-9 || b.interval_durations.iter().any(|d| *d < 0.0) {
                return bad(format!("block {q} interval fractions do not sum to 1"));
            }
        }
        Ok(())
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Pulse layers of block `q`, mirrored into a palindrome for second order.
    pub fn block_layers(&self, q: usize) -> Vec<Vec<PulseSymbol>> {
        let mut layers = pulse_layers(&self.blocks[q].assignment());
        if self.trotter_order == 2 {
            let back: Vec<_> = layers.iter().rev().cloned().collect();
            layers.extend(back);
        }
        layers
    }

    /// Interval count of block `q` (including the mirrored half).
    pub fn block_intervals(&self, q: usize) -> usize {
        self.blocks[q].interval_durations.len()
    }

    /// Longest Walsh sequence length `n` over the blocks, excluding any mirrored half.
    pub fn sequence_length(&self) -> usize {
        self.blocks.iter().map(|b| b.assignment().sequence_length()).max().unwrap_or(1)
    }

    pub fn max_intervals(&self) -> usize {
        (0..self.blocks.len()).map(|q| self.block_intervals(q)).max().unwrap_or(1)
    }

    /// Sum of `c_q`: physical time per cycle over target time per cycle.
    pub fn total_weight(&self) -> f64 {
        self.blocks.iter().map(|b| b.c).sum()
    }

    /// Period `L` of the cycle sign pattern.
    pub fn sign_period(&self) -> usize {
        self.sign_e.iter().copied().max().map(length_for_max_index).unwrap_or(1)
    }

    /// Pulse sign of `qubit` in cycle `l`.
    pub fn pulse_sign(&self, qubit: usize, l: usize) -> i8 {
        if self.sign_e.is_empty() {
            1
        } else {
            walsh_sign(self.sign_e[qubit], l % self.sign_period())
        }
    }

    /// Layer durations of block `q` as fractions of `c_q τ`, after finite-pulse shrinking.
    pub fn effective_fractions(&self, q: usize) -> Vec<f64> {
        let mut d = self.blocks[q].interval_durations.clone();
        if let Some(fp) = self.fp_deformation {
            let layers = self.block_layers(q);
            let idle: Vec<usize> =
                (0..layers.len()).filter(|&k| layers[k].iter().all(|p| p.is_identity())).collect();
            for &k in &idle {
                d[k] -= fp.shrink / idle.len() as f64;
            }
        }
        d
    }

    pub fn pulse_counts(&self) -> PulseCounts {
        let mut raw = 0;
        let mut merged = 0;
        for (q, b) in self.blocks.iter().enumerate() {
            let set = b.set_pre.iter().chain(&b.set_post).filter(|g| !g.is_identity()).count();
            raw += set;
            merged += set;
            let layers = self.block_layers(q);
            let idle = vec![PulseSymbol::I; self.n_qubits];
            let mut prev = &idle;
            for layer in &layers {
                raw += 2 * layer.iter().filter(|p| !p.is_identity()).count();
                merged += prev.iter().zip(layer).filter(|(a, b)| a != b).count();
                prev = layer;
            }
            merged += prev.iter().filter(|p| !p.is_identity()).count();
        }
        PulseCounts { raw, merged }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("schedule serialises");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CompileError> {
        let s: PulseSchedule =
            serde_json::from_str(text).map_err(|e| CompileError::InvalidSchedule(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }
}

pub(crate) fn equal_fractions(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

