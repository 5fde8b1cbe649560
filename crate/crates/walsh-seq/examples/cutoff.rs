//! Reusing Walsh indices beyond a cutoff distance keeps sequences short; the price
//! is the neglected long-range tail.

use walsh_seq::experiments::cutoff_point;
use walsh_seq::sim::DEFAULT_TOL;

fn main() {
    for alpha in [3.0, 0.2] {
        for lw in [4, 6] {
            let pt = cutoff_point(8, alpha, lw, 1e-2, 1.0, DEFAULT_TOL).unwrap();
            println!(
                "alpha={alpha} Λ_w={lw}: full 1-F={:.2e} (n={}), cutoff 1-F={:.2e} (n={})",
                pt.full, pt.full_length, pt.cutoff, pt.cutoff_length
            );
        }
    }
}
