//! Prepare a cluster state with the compiled Ising chain and watch the error shrink
//! with the cycle time, for first and second order.

use walsh_seq::analysis::metrics::log_log_slope;
use walsh_seq::experiments::ising_point;
use walsh_seq::sim::DEFAULT_TOL;

fn main() {
    let taus = [1e-2, 5e-3, 2.5e-3];
    for p in [1u8, 2] {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for &dt in &taus {
            let pt = ising_point(6, 3.0, p, dt, 1.0, DEFAULT_TOL).unwrap();
            println!("p={p} Jτ/n={:.2e} cycles={:>4} 1-F={:.3e} bound={:.3}", pt.tau_over_n, pt.cycles, pt.infidelity, pt.bound);
            xs.push(pt.tau_over_n);
            ys.push(pt.infidelity);
        }
        let (slope, _) = log_log_slope(&xs, &ys, 1e-15).unwrap();
        println!("p={p} slope {slope:.2}");
    }
}
