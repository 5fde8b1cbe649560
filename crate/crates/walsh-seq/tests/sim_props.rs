use nalgebra::DVector;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use walsh_seq::analysis::oracle::{dense_resource, kron_all, pauli_matrix, su2_matrix, Dense};
use walsh_seq::compiler::{
    compile, CompileOptions, PulseSchedule, ResourceHamiltonian, TargetSpec, TargetTerm, OpLabel,
};
use walsh_seq::sim::{
    evolve, measure_qubit, pauli_expectation, run_interval_finite, run_schedule, ErrorModel,
    PauliString, RunOptions, StateVector, DEFAULT_TOL,
};
use walsh_seq::walsh::PulseSymbol;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn propagator(h: &Dense, t: f64) -> Dense {
    (h * Complex64::new(0.0, -t)).exp()
}

fn to_vec(psi: &StateVector) -> DVector<Complex64> {
    DVector::from_column_slice(psi.amplitudes())
}

fn dist(a: &DVector<Complex64>, psi: &StateVector) -> f64 {
    (a - to_vec(psi)).norm()
}

fn layer_matrix(layer: &[PulseSymbol]) -> Dense {
    kron_all(&layer.iter().map(|&p| pauli_matrix(p)).collect::<Vec<_>>())
}

/// Dense product for ideal instantaneous pulses.
fn dense_cycle(s: &PulseSchedule, h: &Dense, tau: f64, l: usize) -> Dense {
    let mut u = Dense::identity(h.nrows(), h.ncols());
    let order: Vec<usize> = if s.trotter_order == 2 && l % 2 == 1 {
        (0..s.n_blocks()).rev().collect()
    } else {
        (0..s.n_blocks()).collect()
    };
    for q in order {
        let b = &s.blocks[q];
        let set = kron_all(&b.set_post.iter().map(|g| su2_matrix(*g)).collect::<Vec<_>>());
        u = set.adjoint() * u;
        for (layer, f) in s.block_layers(q).iter().zip(&b.interval_durations) {
            let p = layer_matrix(layer);
            u = &p * propagator(h, f * b.c * tau) * &p * u;
        }
        u = set * u;
    }
    u
}

fn random_target(n: usize, seed: u64) -> TargetSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    use rand::Rng;
    let labels = [OpLabel::X, OpLabel::Y, OpLabel::Z];
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < 0.7 {
                let ops = [labels[rng.random_range(0..3)], labels[rng.random_range(0..3)]];
                terms.push(TargetTerm { i, j, ops, strength: rng.random_range(-1.0..1.0) });
            }
        }
    }
    TargetSpec::new(n, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn schedule_matches_dense_products(n in 2usize..=4, seed in any::<u64>(), p in 1u8..=2, alpha in 0.0..3.0f64) {
        let r = ResourceHamiltonian::power_law_chain(n, 1.0, alpha).unwrap();
        let t = random_target(n, seed);
        let s = compile(&t, &r, &CompileOptions { trotter_order: p, ..Default::default() }).unwrap();
        let psi0 = StateVector::haar(n, &mut ChaCha8Rng::seed_from_u64(seed ^ 1));
        let tau = 0.07;
        let cycles = 3;
        let out = run_schedule(&s, &r, tau, cycles, &ErrorModel::default(), &psi0, RunOptions::default()).unwrap();
        let h = dense_resource(&r);
        let mut v = to_vec(&psi0);
        for l in 0..cycles {
            v = dense_cycle(&s, &h, tau, l) * v;
        }
        prop_assert!(dist(&v, &out) < 1e-10, "{}", dist(&v, &out));
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn krylov_matches_dense_exponential(n in 1usize..=4, seed in any::<u64>(), t in -3.0..3.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let r = ResourceHamiltonian::power_law_chain(n.max(2), rng.random_range(0.1..2.0), rng.random_range(0.0..3.0)).unwrap();
        let fields: Vec<[f64; 3]> = (0..r.n_qubits).map(|_| [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]).collect();
        let r = r.with_fields(fields).unwrap();
        let psi = StateVector::haar(r.n_qubits, &mut rng);
        let out = evolve(&r.to_operator(), t, &psi, DEFAULT_TOL).unwrap();
        let want = propagator(&dense_resource(&r), t) * to_vec(&psi);
        prop_assert!(dist(&want, &out) < 1e-10);
    }

    #[test]
    fn finite_interval_matches_dense(seed in any::<u64>(), eps in 0.0..0.5f64, d in -0.1..0.1f64) {
        let n = 3;
        let r = ResourceHamiltonian::power_law_chain(n, 1.0, 1.0).unwrap();
        let h = dense_resource(&r);
        let layer = [PulseSymbol::X, PulseSymbol::I, PulseSymbol::Y];
        let signs = [1i8, 1, -1];
        let deltas = [d, 0.0, -d];
        let interval = 0.3;
        let tp = eps * interval / 2.0;
        let psi0 = StateVector::haar(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let mut psi = psi0.clone();
        run_interval_finite(&r.to_operator(), &layer, &signs, Some(&deltas), interval, tp, &mut psi, DEFAULT_TOL).unwrap();
        let hp = {
            let mut m = Dense::zeros(8, 8);
            for q in [0usize, 2] {
                let f: Vec<Dense> = (0..n).map(|k| if k == q { pauli_matrix(layer[q]) } else { pauli_matrix(PulseSymbol::I) }).collect();
                m += kron_all(&f) * c(signs[q] as f64 * (std::f64::consts::PI + deltas[q]));
            }
            m
        };
        let want = if tp == 0.0 {
            let pulse = |inv: bool| (&hp * Complex64::new(0.0, if inv { 0.5 } else { -0.5 })).exp();
            pulse(true) * propagator(&h, interval) * pulse(false) * to_vec(&psi0)
        } else {
            let hp = &hp / c(2.0 * tp);
            propagator(&(&h - &hp), tp) * propagator(&h, interval - 2.0 * tp) * propagator(&(&h + &hp), tp) * to_vec(&psi0)
        };
        prop_assert!(dist(&want, &psi) < 1e-10, "{}", dist(&want, &psi));
    }

    #[test]
    fn measurement_collapses_to_eigenstates(seed in any::<u64>(), q in 0usize..3, b in 1usize..4) {
        let basis = [PulseSymbol::I, PulseSymbol::X, PulseSymbol::Y, PulseSymbol::Z][b];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = StateVector::haar(3, &mut rng);
        let (m, post) = measure_qubit(&psi, q, basis, &mut rng);
        prop_assert!((post.norm() - 1.0).abs() < 1e-12);
        let e = pauli_expectation(&post, PauliString::single(q, basis));
        prop_assert!((e - m as f64).abs() < 1e-12);
    }
}

#[test]
fn short_pulses_approach_instantaneous_ones() {
    let n = 3;
    let r = ResourceHamiltonian::power_law_chain(n, 1.0, 1.0).unwrap();
    let h = r.to_operator();
    let layer = [PulseSymbol::Z, PulseSymbol::X, PulseSymbol::I];
    let psi0 = StateVector::haar(n, &mut ChaCha8Rng::seed_from_u64(9));
    let mut ideal = psi0.clone();
    run_interval_finite(&h, &layer, &[1; 3], None, 0.2, 0.0, &mut ideal, DEFAULT_TOL).unwrap();
    let mut last = f64::INFINITY;
    for tp in [1e-2, 1e-3, 1e-4, 1e-5] {
        let mut psi = psi0.clone();
        run_interval_finite(&h, &layer, &[1; 3], None, 0.2, tp, &mut psi, DEFAULT_TOL).unwrap();
        let d = dist(&to_vec(&ideal), &psi);
        assert!(d < last);
        last = d;
    }
    assert!(last < 1e-4, "{last}");
}

#[test]
fn runs_are_bitwise_deterministic() {
    let r = ResourceHamiltonian::power_law_chain(4, 1.0, 1.5).unwrap();
    let s = compile(&TargetSpec::ising_chain(4, 1.0), &r, &CompileOptions::default()).unwrap();
    let errs = ErrorModel { rotation_errors: Some(vec![0.01, -0.02, 0.003, 0.0]), fp_epsilon: 0.05 };
    let psi0 = StateVector::haar(4, &mut ChaCha8Rng::seed_from_u64(2));
    let a = run_schedule(&s, &r, 0.05, 7, &errs, &psi0, RunOptions::default()).unwrap();
    let b = run_schedule(&s, &r, 0.05, 7, &errs, &psi0, RunOptions::default()).unwrap();
    assert_eq!(a.amplitudes(), b.amplitudes());
    assert!((a.norm() - 1.0).abs() < 1e-12);
}

#[test]
fn mismatched_inputs_are_rejected() {
    let r = ResourceHamiltonian::power_law_chain(3, 1.0, 1.0).unwrap();
    let s = compile(&TargetSpec::ising_chain(3, 1.0), &r, &CompileOptions::default()).unwrap();
    let psi = StateVector::zero(2);
    assert!(run_schedule(&s, &r, 0.1, 1, &ErrorModel::default(), &psi, RunOptions::default()).is_err());
    let psi = StateVector::zero(3);
    assert!(run_schedule(&s, &r, -0.1, 1, &ErrorModel::default(), &psi, RunOptions::default()).is_err());
    let bad = ErrorModel { fp_epsilon: 1.5, ..Default::default() };
    assert!(run_schedule(&s, &r, 0.1, 1, &bad, &psi, RunOptions::default()).is_err());
}
