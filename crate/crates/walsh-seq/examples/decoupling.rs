//! Static background fields are averaged out when no qubit keeps Walsh index 0.

use walsh_seq::analysis::oracle::toggled_field_average;
use walsh_seq::experiments::{ising_schedule, robust_point, sample_fields};
use walsh_seq::sim::DEFAULT_TOL;

fn main() {
    let n = 4;
    let fields = sample_fields(n, 1.0, 7);
    for guard in [false, true] {
        let (_, s) = ising_schedule(n, 1.2, 1, 1.0, None, guard).unwrap();
        let worst = (0..s.n_blocks())
            .map(|q| toggled_field_average(&s, q, &fields).iter().map(|z| z.norm()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        println!("dd_guard={guard}: x = {:?}, largest averaged field entry {worst:.2e}", s.blocks[0].x);
    }
    let p = robust_point(n, 1.2, 1, 1e-2, 5e-3, 7, 1.0, DEFAULT_TOL).unwrap();
    println!("1-F with fields: unguarded {:.2e}, guarded {:.2e}, no fields {:.2e}", p.fields_unguarded, p.fields_guarded, p.ideal);
}
