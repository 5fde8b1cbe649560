//! Digitized annealing towards the maximum cut of a small graph; more steps at fixed
//! Kτ close the energy gap.

use walsh_seq::experiments::maxcut_point;
use walsh_seq::sim::DEFAULT_TOL;

fn main() {
    for k in [4, 8, 16, 32] {
        let p = maxcut_point("g6", k, 0.5, 2, 1e-2, 1.0, DEFAULT_TOL).unwrap();
        println!(
            "K={k:>2} K²τ={:>4}: gap {:.3e} (exact slices {:.3e}), largest excited probability {:.1e}",
            k as f64 * 0.5,
            p.gap,
            p.gap_exact,
            p.max_excited
        );
    }
}
