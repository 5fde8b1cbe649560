use proptest::prelude::*;
use walsh_seq::analysis::oracle::{
    averaged_toggling_hamiltonian, dense_target, max_abs_diff, rotation_error_first_order,
    toggled_field_average,
};
use walsh_seq::analysis::surface::Surface7;
use walsh_seq::analysis::Geometry;
use walsh_seq::compiler::{
    assign_indices_with_cutoff, compile, robustify, CompileOptions, DecompositionStrategy,
    OpLabel, PulseSchedule, ResourceHamiltonian, RobustnessPolicy, TargetSpec, TargetTerm,
};
use walsh_seq::graphdecomp::Matching;

const ALPHAS: [f64; 3] = [0.2, 1.2, 3.0];

fn label() -> impl Strategy<Value = OpLabel> {
    prop_oneof![
        4 => Just(OpLabel::X),
        4 => Just(OpLabel::Y),
        1 => Just(OpLabel::Z),
        1 => prop::array::uniform3(-1.0..1.0f64)
            .prop_filter("nonzero axis", |a| a.iter().map(|v| v * v).sum::<f64>() > 0.1)
            .prop_map(OpLabel::Axis),
    ]
}

fn target() -> impl Strategy<Value = TargetSpec> {
    (2usize..=6).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let m = pairs.len();
        proptest::collection::vec(
            proptest::option::weighted(0.6, (label(), label(), -2.0..2.0f64)),
            m,
        )
        .prop_map(move |choice| {
            let terms = pairs
                .iter()
                .zip(choice)
                .filter_map(|(&(i, j), c)| {
                    c.map(|(a, b, s)| TargetTerm { i, j, ops: [a, b], strength: s })
                })
                .collect();
            TargetSpec::new(n, terms).unwrap()
        })
    })
}

fn scale(t: &TargetSpec) -> f64 {
    t.terms.iter().map(|t| t.strength.abs()).fold(1.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn averaged_hamiltonian_equals_target(t in target(), a in 0usize..3, p in 1u8..=2, guard in any::<bool>()) {
        let r = ResourceHamiltonian::power_law_chain(t.n_qubits, 1.0, ALPHAS[a]).unwrap();
        let opts = CompileOptions { trotter_order: p, dd_guard: guard, ..Default::default() };
        let s = compile(&t, &r, &opts).unwrap();
        let diff = max_abs_diff(&averaged_toggling_hamiltonian(&s, &r), &dense_target(&t));
        prop_assert!(diff < 1e-10 * scale(&t), "diff {}", diff);
        let back = PulseSchedule::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(&back, &s);
    }

    #[test]
    fn hamilton_strategy_also_reproduces(t in target(), a in 0usize..3) {
        let r = ResourceHamiltonian::power_law_chain(t.n_qubits, 1.0, ALPHAS[a]).unwrap();
        let opts = CompileOptions { strategy: DecompositionStrategy::HamiltonPaths, ..Default::default() };
        let s = compile(&t, &r, &opts).unwrap();
        let diff = max_abs_diff(&averaged_toggling_hamiltonian(&s, &r), &dense_target(&t));
        prop_assert!(diff < 1e-10 * scale(&t));
    }

    #[test]
    fn set_pulses_telescope(t in target()) {
        let r = ResourceHamiltonian::power_law_chain(t.n_qubits, 1.0, 1.2).unwrap();
        let s = compile(&t, &r, &CompileOptions::default()).unwrap();
        for b in &s.blocks {
            for (pre, post) in b.set_pre.iter().zip(&b.set_post) {
                let g = pre.compose(*post);
                prop_assert!(g.v.iter().all(|v| v.abs() < 1e-14) && (g.w.abs() - 1.0).abs() < 1e-14);
            }
            let total: f64 = b.interval_durations.iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
            prop_assert!(b.c > 0.0);
        }
    }

    #[test]
    fn second_order_blocks_are_palindromes(t in target()) {
        let r = ResourceHamiltonian::power_law_chain(t.n_qubits, 1.0, 3.0).unwrap();
        let s = compile(&t, &r, &CompileOptions { trotter_order: 2, ..Default::default() }).unwrap();
        for q in 0..s.n_blocks() {
            let layers = s.block_layers(q);
            let m = layers.len();
            prop_assert_eq!(m, 2 * s.blocks[q].assignment().sequence_length());
            for k in 0..m {
                prop_assert_eq!(&layers[k], &layers[m - 1 - k]);
            }
        }
    }

    #[test]
    fn cutoff_indices_stay_below_twice_the_cutoff(n in 2usize..14, lambda in 1usize..6, seed in any::<u64>()) {
        // random nearest-neighbour links are always within the cutoff
        let links: Vec<(usize, usize)> = (0..n.saturating_sub(1))
            .step_by(2)
            .filter(|i| (seed >> (i % 64)) & 1 == 1)
            .map(|i| (i, i + 1))
            .collect();
        let x = Matching::new(n, links).unwrap();
        let a = assign_indices_with_cutoff(&x, &Matching::empty(n), n, lambda).unwrap();
        prop_assert!(a.max_index() < 2 * lambda.max(1));
        for i in 0..n {
            for j in i + 1..n {
                if a.x[i] == a.x[j] && !x.contains(i, j) {
                    prop_assert!(j - i > lambda);
                }
                if a.y[i] == a.y[j] {
                    prop_assert!(j - i > lambda);
                }
            }
        }
    }

    #[test]
    fn cycle_signs_cancel_rotation_errors(n in 2usize..5, seed in any::<u64>()) {
        let r = ResourceHamiltonian::power_law_chain(n, 1.0, 1.2).unwrap();
        let t = TargetSpec::ising_chain(n, 1.0);
        let opts = CompileOptions { strategy: DecompositionStrategy::chain_links(n), ..Default::default() };
        let s = compile(&t, &r, &opts).unwrap();
        let robust = robustify(&s, &RobustnessPolicy::default()).unwrap();
        let deltas: Vec<f64> = (0..n).map(|i| (((seed >> (8 * i)) & 0xff) as f64 / 255.0 - 0.5) * 0.02).collect();
        let period = robust.sign_period();
        for q in 0..robust.n_blocks() {
            let mut sum = rotation_error_first_order(&robust, &r, q, &deltas, 0);
            for l in 1..period {
                sum += rotation_error_first_order(&robust, &r, q, &deltas, l);
            }
            let norm = sum.iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!(norm < 1e-13, "block {} residual {}", q, norm);
        }
    }

    #[test]
    fn guarded_schedules_decouple_fields(n in 2usize..6, a in 0usize..3, h in prop::collection::vec(prop::array::uniform3(-1.0..1.0f64), 6)) {
        let r = ResourceHamiltonian::power_law_chain(n, 1.0, ALPHAS[a]).unwrap();
        let t = TargetSpec::ising_chain(n, 1.0);
        let s = compile(&t, &r, &CompileOptions { dd_guard: true, ..Default::default() }).unwrap();
        for q in 0..s.n_blocks() {
            let avg = toggled_field_average(&s, q, &h[..n]);
            let norm = avg.iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!(norm < 1e-13);
        }
    }
}

#[test]
fn constant_signs_leave_first_order_rotation_error() {
    let r = ResourceHamiltonian::power_law_chain(3, 1.0, 1.2).unwrap();
    let s = compile(&TargetSpec::ising_chain(3, 1.0), &r, &CompileOptions::default()).unwrap();
    let d = [0.01, -0.005, 0.007];
    let first = rotation_error_first_order(&s, &r, 0, &d, 0);
    assert!(first.iter().map(|z| z.norm()).fold(0.0, f64::max) > 1e-4);
}

#[test]
fn resource_target_needs_no_pulses() {
    for alpha in ALPHAS {
        let r = ResourceHamiltonian::power_law_chain(5, 1.0, alpha).unwrap();
        let s = compile(&TargetSpec::from_resource(&r), &r, &CompileOptions::default()).unwrap();
        assert_eq!(s.n_blocks(), 1);
        assert_eq!(s.pulse_counts().raw, 0);
    }
}

#[test]
fn ising_chain_uses_two_blocks() {
    let r = ResourceHamiltonian::power_law_chain(8, 1.0, 3.0).unwrap();
    let opts = CompileOptions { strategy: DecompositionStrategy::chain_links(8), ..Default::default() };
    let s = compile(&TargetSpec::ising_chain(8, 1.0), &r, &opts).unwrap();
    assert_eq!(s.n_blocks(), 2);
}

#[test]
fn chain_surface_first_layer_weights() {
    for alpha in ALPHAS {
        let code = Surface7::new(Geometry::Chain, alpha, 1).unwrap();
        let mut c: Vec<f64> = code.layers[0].schedule.blocks.iter().map(|b| b.c).collect();
        c.sort_by(f64::total_cmp);
        let mut want = vec![1.0, 3f64.powf(alpha) - 1.0];
        want.sort_by(f64::total_cmp);
        assert_eq!(c.len(), 2);
        for (a, b) in c.iter().zip(&want) {
            assert!((a - b).abs() < 1e-12, "alpha {alpha}: {c:?} vs {want:?}");
        }
    }
}

#[test]
fn grid_surface_uses_one_block_per_layer() {
    let code = Surface7::new(Geometry::Grid, 3.0, 1).unwrap();
    assert!(code.layers.iter().all(|l| l.schedule.n_blocks() == 1));
}

#[test]
fn zero_resource_coupling_is_reported() {
    let mut r = ResourceHamiltonian::power_law_chain(3, 1.0, 1.0).unwrap();
    r.jx[0][1] = 0.0;
    r.jx[1][0] = 0.0;
    assert!(compile(&TargetSpec::ising_chain(3, 1.0), &r, &CompileOptions::default()).is_err());
}
