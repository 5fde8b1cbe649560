//! Stabilizer readout of the seven-qubit surface code from four compiled gate layers.

use walsh_seq::analysis::{Geometry, Surface7};
use walsh_seq::analysis::surface::readout_deviations;
use walsh_seq::sim::DEFAULT_TOL;

fn fmt(d: [f64; 3]) -> String {
    d.map(|x| format!("{x:.2e}")).join(" ")
}

fn main() {
    for (geometry, alpha) in [(Geometry::Grid, 3.0), (Geometry::Chain, 0.2)] {
        let code = Surface7::new(geometry, alpha, 2).unwrap();
        let c: Vec<Vec<f64>> = code
            .layers
            .iter()
            .map(|l| l.schedule.blocks.iter().map(|b| (b.c * 1e3).round() / 1e3).collect())
            .collect();
        println!("{} alpha={alpha}: Q = {}, weights {c:?}", geometry.name(), code.n_blocks());
        let psi0 = Surface7::initial_state(1);
        let exact = code.run(&psi0, None, DEFAULT_TOL).unwrap();
        println!("  exact circuit deviations {}", fmt(readout_deviations(&exact)));
        for dt in [2e-2, 1e-2] {
            let psi = code.run(&psi0, Some(dt), DEFAULT_TOL).unwrap();
            println!("  Jτ/n={dt:e}: deviations {}", fmt(readout_deviations(&psi)));
        }
    }
}
