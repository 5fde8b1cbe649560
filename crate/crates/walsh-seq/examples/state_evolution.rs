//! Krylov time evolution of a Pauli-string Hamiltonian and projective measurement.
//! A single flipped spin spreads along an XY chain.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use walsh_seq::compiler::ResourceHamiltonian;
use walsh_seq::sim::{evolve, measure_qubit, pauli_expectation, PauliString, StateVector, DEFAULT_TOL};
use walsh_seq::walsh::PulseSymbol;

fn main() {
    let h = ResourceHamiltonian::power_law_chain(5, 1.0, 1.0).unwrap().to_operator();
    let z0 = PauliString::single(0, PulseSymbol::Z);
    let mut psi = StateVector::basis(5, 1);
    for step in 0..5 {
        println!("t={:.1} <Z_0>={:+.6} norm={:.15}", step as f64 * 0.5, pauli_expectation(&psi, z0), psi.norm());
        psi = evolve(&h, 0.5, &psi, DEFAULT_TOL).unwrap();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (m, post) = measure_qubit(&psi, 0, PulseSymbol::Z, &mut rng);
    println!("measured Z_0 = {m:+}, afterwards <Z_0> = {:+.3}", pauli_expectation(&post, z0));
}
