use crate::sim::StateVector;
use crate::walsh::PulseSymbol;

/// `Π_i exp(i (π/4) X_i X_{i+1}) |0…0⟩`, the Ising chain evolved for `T = π/(4J)`.
pub fn cluster_reference(n_qubits: usize) -> StateVector {
    let mut s = StateVector::zero(n_qubits);
    for i in 0..n_qubits.saturating_sub(1) {
        s.apply_two_qubit_rotation(i, PulseSymbol::X, i + 1, PulseSymbol::X, std::f64::consts::FRAC_PI_4);
    }
    s
}
