use num_complex::Complex64;
use rand::Rng;

use super::pauli::{PauliString, PauliStringOperator};
use super::state::StateVector;
use crate::walsh::PulseSymbol;

/// `⟨ψ|P|ψ⟩` for a single Pauli string.
pub fn pauli_expectation(psi: &StateVector, p: PauliString) -> f64 {
    PauliStringOperator::new(psi.n_qubits(), [(1.0, p)]).expectation(psi.amplitudes())
}

/// Projective measurement of `qubit` in the eigenbasis of `basis`; returns the ±1
/// outcome and the collapsed state. Zero-probability outcomes are never drawn.
pub fn measure_qubit<R: Rng + ?Sized>(
    psi: &StateVector,
    qubit: usize,
    basis: PulseSymbol,
    rng: &mut R,
) -> (i8, StateVector) {
    assert!(basis != PulseSymbol::I, "measurement basis must be X, Y or Z");
    let mut flipped = psi.clone();
    flipped.apply_pauli(qubit, basis);
    let p_plus = ((1.0 + psi.inner(&flipped).re) / 2.0).clamp(0.0, 1.0);
    let m: i8 = if rng.random::<f64>() < p_plus { 1 } else { -1 };
    let p = if m == 1 { p_plus } else { 1.0 - p_plus };
    let s = Complex64::new(m as f64, 0.0);
    let amps: Vec<Complex64> = psi
        .amplitudes()
        .iter()
        .zip(flipped.amplitudes())
        .map(|(a, b)| (a + s * b) / (2.0 * p.sqrt()))
        .collect();
    (m, StateVector::from_amplitudes(amps).expect("sampled outcome has weight"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn certain_outcomes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let s = StateVector::basis(2, 2);
        for _ in 0..20 {
            let (m0, _) = measure_qubit(&s, 0, PulseSymbol::Z, &mut rng);
            let (m1, post) = measure_qubit(&s, 1, PulseSymbol::Z, &mut rng);
            assert_eq!((m0, m1), (1, -1));
            assert_eq!(post, s);
        }
    }

    #[test]
    fn collapse_is_eigenstate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let s = StateVector::haar(3, &mut rng);
        let (m, post) = measure_qubit(&s, 1, PulseSymbol::X, &mut rng);
        let e = pauli_expectation(&post, PauliString::single(1, PulseSymbol::X));
        assert!((e - m as f64).abs() < 1e-12);
    }
}
