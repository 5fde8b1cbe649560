//! Compile a nearest-neighbour Ising chain from a long-range XY resource and check
//! the averaged Hamiltonian against the target.

use walsh_seq::analysis::oracle::{averaged_toggling_hamiltonian, dense_target, max_abs_diff};
use walsh_seq::compiler::{compile, CompileOptions, DecompositionStrategy, ResourceHamiltonian, TargetSpec};

fn main() {
    let n = 6;
    let resource = ResourceHamiltonian::power_law_chain(n, 1.0, 1.2).unwrap();
    let target = TargetSpec::ising_chain(n, 1.0);
    for (name, strategy) in [
        ("greedy", DecompositionStrategy::Greedy),
        ("chain", DecompositionStrategy::chain_links(n)),
    ] {
        let opts = CompileOptions { strategy, ..Default::default() };
        let s = compile(&target, &resource, &opts).unwrap();
        let diff = max_abs_diff(&averaged_toggling_hamiltonian(&s, &resource), &dense_target(&target));
        let counts = s.pulse_counts();
        println!(
            "{name:>6}: Q = {}, n = {}, weight {:.3}, pulses {} ({} merged), oracle diff {diff:.1e}",
            s.n_blocks(),
            s.sequence_length(),
            s.total_weight(),
            counts.raw,
            counts.merged
        );
    }
}
