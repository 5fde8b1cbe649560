//! Walsh functions, sequence lengths and pulse layers.
//!
//! Walsh function `w_a` of length `n = 2^q` is row `a` of the Hadamard matrix
//! `H_q = H_1 ⊗ H_{q-1}`. Layer `k` of a sequence applies to qubit `i` the
//! Pauli whose commutation signs with `(X_i, Y_i)` are `(w_{x_i}^{(k)}, w_{y_i}^{(k)})`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalshError {
    #[error("sequence length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("walsh index {index} out of range for length {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("assignment channels have different lengths ({x} vs {y})")]
    LengthMismatch { x: usize, y: usize },
}

/// One Walsh function as a vector of ±1 values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSequence {
    pub index: usize,
    pub values: Vec<i8>,
}

impl SignSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Row `index` of the `size × size` Hadamard matrix, built by Kronecker recursion.
pub fn hadamard_row(index: usize, size: usize) -> Result<SignSequence, WalshError> {
    if size == 0 || !size.is_power_of_two() {
        return Err(WalshError::NotPowerOfTwo(size));
    }
    if index >= size {
        return Err(WalshError::IndexOutOfRange { index, size });
    }
    Ok(SignSequence { index, values: kron_row(index, size) })
}

fn kron_row(index: usize, size: usize) -> Vec<i8> {
    if size == 1 {
        return vec![1];
    }
    let half = size / 2;
    let sub = kron_row(index % half, half);
    let flip = if index >= half { -1 } else { 1 };
    let mut row = sub.clone();
    row.extend(sub.iter().map(|v| v * flip));
    row
}

/// `w_a^{(k)}` for zero-based layer `k`; any length `n > max(a, k)` gives the same value.
#[inline]
pub fn walsh_sign(a: usize, k: usize) -> i8 {
    if (a & k).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Normalised inner product `(1/n) Σ_k w_a^{(k)} w_b^{(k)}` over the shortest common length.
pub fn walsh_inner(a: usize, b: usize) -> Result<f64, WalshError> {
    let n = (a.max(b) + 1).next_power_of_two();
    let ra = hadamard_row(a, n)?;
    let rb = hadamard_row(b, n)?;
    let s: i64 = ra.values.iter().zip(&rb.values).map(|(u, v)| (u * v) as i64).sum();
    Ok(s as f64 / n as f64)
}

/// Smallest power of two strictly larger than `max_index`.
pub fn length_for_max_index(max_index: usize) -> usize {
    (max_index + 1).next_power_of_two()
}

/// Single-qubit Pauli applied by a pulse layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PulseSymbol {
    I,
    X,
    Y,
    Z,
}

impl PulseSymbol {
    /// Pulse with commutation signs `(sx, sy)` against `(X, Y)`.
    pub fn from_signs(sx: i8, sy: i8) -> PulseSymbol {
        match (sx > 0, sy > 0) {
            (true, true) => PulseSymbol::I,
            (true, false) => PulseSymbol::X,
            (false, true) => PulseSymbol::Y,
            (false, false) => PulseSymbol::Z,
        }
    }

    /// Signs acquired by `(X, Y, Z)` under conjugation with this Pauli.
    pub fn conjugation_signs(self) -> [i8; 3] {
        match self {
            PulseSymbol::I => [1, 1, 1],
            PulseSymbol::X => [1, -1, -1],
            PulseSymbol::Y => [-1, 1, -1],
            PulseSymbol::Z => [-1, -1, 1],
        }
    }

    pub fn is_identity(self) -> bool {
        self == PulseSymbol::I
    }

    /// Index into `[X, Y, Z]`, `None` for the identity.
    pub fn axis(self) -> Option<usize> {
        match self {
            PulseSymbol::I => None,
            PulseSymbol::X => Some(0),
            PulseSymbol::Y => Some(1),
            PulseSymbol::Z => Some(2),
        }
    }
}

/// Walsh indices per qubit for the X and Y channels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalshAssignment {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl WalshAssignment {
    pub fn new(x: Vec<usize>, y: Vec<usize>) -> Result<Self, WalshError> {
        if x.len() != y.len() {
            return Err(WalshError::LengthMismatch { x: x.len(), y: y.len() });
        }
        Ok(WalshAssignment { x, y })
    }

    pub fn n_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn max_index(&self) -> usize {
        self.x.iter().chain(&self.y).copied().max().unwrap_or(0)
    }

    /// Number of intervals `n` of one (first-order) sequence.
    pub fn sequence_length(&self) -> usize {
        length_for_max_index(self.max_index())
    }

    /// `true` when every qubit's X and Y coupling and its fields average out.
    pub fn is_dd_guarded(&self) -> bool {
        self.x.iter().zip(&self.y).all(|(&a, &b)| a != 0 && b != 0 && a != b)
    }
}

/// Pulse layers `P^{(k)}`, `k = 0..n`, indexed `[k][qubit]`.
pub fn pulse_layers(assignment: &WalshAssignment) -> Vec<Vec<PulseSymbol>> {
    let n = assignment.sequence_length();
    (0..n)
        .map(|k| {
            assignment
                .x
                .iter()
                .zip(&assignment.y)
                .map(|(&xi, &yi)| PulseSymbol::from_signs(walsh_sign(xi, k), walsh_sign(yi, k)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_zero_is_constant() {
        for size in [1, 2, 8, 64] {
            assert!(hadamard_row(0, size).unwrap().values.iter().all(|&v| v == 1));
        }
    }

    #[test]
    fn small_rows() {
        assert_eq!(hadamard_row(1, 2).unwrap().values, vec![1, -1]);
        assert_eq!(hadamard_row(3, 4).unwrap().values, vec![1, -1, -1, 1]);
        assert_eq!(hadamard_row(2, 4).unwrap().values, vec![1, 1, -1, -1]);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert_eq!(hadamard_row(0, 6), Err(WalshError::NotPowerOfTwo(6)));
        assert_eq!(hadamard_row(4, 4), Err(WalshError::IndexOutOfRange { index: 4, size: 4 }));
    }

    #[test]
    fn closed_form_matches_recursion() {
        for size in [2usize, 4, 8, 16, 32] {
            for a in 0..size {
                let row = hadamard_row(a, size).unwrap();
                for k in 0..size {
                    assert_eq!(row.values[k], walsh_sign(a, k));
                }
            }
        }
    }

    #[test]
    fn first_column_is_identity_layer() {
        let asg = WalshAssignment::new(vec![0, 1, 5, 3], vec![2, 7, 0, 6]).unwrap();
        let layers = pulse_layers(&asg);
        assert_eq!(layers.len(), 8);
        assert!(layers[0].iter().all(|p| p.is_identity()));
    }

    #[test]
    fn sign_pairs_to_pulses() {
        assert_eq!(PulseSymbol::from_signs(1, 1), PulseSymbol::I);
        assert_eq!(PulseSymbol::from_signs(1, -1), PulseSymbol::X);
        assert_eq!(PulseSymbol::from_signs(-1, 1), PulseSymbol::Y);
        assert_eq!(PulseSymbol::from_signs(-1, -1), PulseSymbol::Z);
    }

    #[test]
    fn sequence_lengths() {
        assert_eq!(length_for_max_index(0), 1);
        assert_eq!(length_for_max_index(1), 2);
        assert_eq!(length_for_max_index(3), 4);
        assert_eq!(length_for_max_index(4), 8);
        assert_eq!(length_for_max_index(8), 16);
    }

    #[test]
    fn inner_products() {
        assert_eq!(walsh_inner(3, 3).unwrap(), 1.0);
        assert_eq!(walsh_inner(0, 5).unwrap(), 0.0);
    }
}
