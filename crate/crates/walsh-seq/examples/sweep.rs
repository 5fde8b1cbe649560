//! Run a small experiment sweep in-process and print its CSV.

use walsh_seq::experiments::{run_experiment, RunConfig};

fn main() {
    let mut config = RunConfig::for_experiment("ising").unwrap();
    config.n = vec![4];
    config.tau_over_n = vec![1e-2, 5e-3];
    let out = run_experiment(&config).unwrap();
    print!("{}", out.csv());
    eprintln!("{} schedules hashed, {} failures", out.schedules.len(), out.failures);
}
