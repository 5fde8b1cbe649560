//! Compiled schedules round-trip through JSON; a robust variant adds cycle signs and
//! finite-pulse deformations.

use walsh_seq::compiler::{compile, robustify, CompileOptions, PulseSchedule, ResourceHamiltonian, RobustnessPolicy, TargetSpec};
use walsh_seq::experiments::schedule_hash;

fn main() {
    let r = ResourceHamiltonian::power_law_chain(3, 1.0, 3.0).unwrap();
    let opts = CompileOptions { dd_guard: true, ..Default::default() };
    let s = compile(&TargetSpec::ising_chain(3, 1.0), &r, &opts).unwrap();
    let robust = robustify(&s, &RobustnessPolicy { e: None, fp_epsilon: Some(0.02) }).unwrap();
    let text = robust.to_json();
    print!("{text}");
    let back = PulseSchedule::from_json(&text).unwrap();
    assert_eq!(back, robust);
    println!("sha256 {}", schedule_hash(&back));
    println!("sign period L = {}", back.sign_period());
}
