//! Rotation-angle and finite-width pulse errors with and without the robust variants.

use walsh_seq::experiments::robust_point;
use walsh_seq::sim::DEFAULT_TOL;

fn main() {
    for dt in [1e-2, 1e-3] {
        let p = robust_point(4, 1.2, 1, 1e-2, dt, 0, 1.0, DEFAULT_TOL).unwrap();
        println!("Jτ/n = {dt:e} ({} cycles)", p.cycles);
        println!("  perfect pulses      {:.2e}", p.ideal);
        println!("  rotation error      {:.2e}", p.ra_single);
        println!("  ... with cycle signs {:.2e}", p.ra_double);
        println!("  finite pulses       {:.2e}", p.fp_plain);
        println!("  ... deformed        {:.2e}", p.fp_deformed);
    }
}
