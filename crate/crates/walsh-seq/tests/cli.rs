use std::path::Path;
use std::process::{Command, Output};

use walsh_seq::compiler::PulseSchedule;
use walsh_seq::experiments::CSV_HEADER;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_walsh-seq"));
    c.env("WALSH_WORKERS", "2");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["compile", "--target"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["experiment", "nonsense"]);
    assert_eq!(code(&o), 2);
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "UnknownExperiment");

    let missing = dir.path().join("absent.json");
    let o = run(&["compile", "--target", missing.to_str().unwrap(), "--resource", missing.to_str().unwrap()]);
    assert_eq!(code(&o), 2);

    let target = write(dir.path(), "t.json", r#"{"ising_chain": 3}"#);
    let resource = write(
        dir.path(),
        "r.json",
        r#"{"n_qubits": 3, "jx": [[0,0,1],[0,0,1],[1,1,0]], "jy": [[0,0,0],[0,0,0],[0,0,0]]}"#,
    );
    let o = run(&["compile", "--target", &target, "--resource", &resource]);
    assert_eq!(code(&o), 2);
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "DivisionByZeroCoupling");

    let bad = write(dir.path(), "bad.toml", "alpha = []\n");
    assert_eq!(code(&run(&["experiment", "bounds", "--config", &bad])), 2);
    let unknown = write(dir.path(), "unknown.toml", "colour = 3\n");
    assert_eq!(code(&run(&["experiment", "bounds", "--config", &unknown])), 2);
}

#[test]
fn nonconvergence_exits_with_three() {
    let o = run(&["experiment", "ising", "--N", "8", "--p", "1", "--tau-over-n", "0.01", "--tol", "1e-300"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn compile_then_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let target = write(dir.path(), "t.json", r#"{"ising_chain": 4}"#);
    let resource = write(dir.path(), "r.json", r#"{"chain": 4, "alpha": 3}"#);
    let sched = dir.path().join("s.json");
    let o = run(&[
        "compile", "--target", &target, "--resource", &resource, "--order", "2", "--strategy", "chain",
        "--stats", "-o", sched.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Q = 2"));
    let text = std::fs::read_to_string(&sched).unwrap();
    let parsed = PulseSchedule::from_json(&text).unwrap();
    assert_eq!(parsed.to_json(), text);

    let o = run(&[
        "simulate", "--schedule", sched.to_str().unwrap(), "--resource", &resource, "--time",
        "0.7853981633974483", "--tau-over-n", "0.005", "--target", &target, "--summary",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["infidelity"].as_f64().unwrap() < 1e-6);
    assert!((v["norm"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn experiment_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = ["experiment", "ising", "--N", "4", "--tau-over-n", "0.01,0.005"];
    let o1 = bin().args(args).args(["-o", a.to_str().unwrap()]).output().unwrap();
    let o2 = bin().args(args).args(["-o", b.to_str().unwrap(), "--workers", "1"]).output().unwrap();
    assert_eq!(code(&o1), 0);
    assert_eq!(code(&o2), 0);
    let ta = std::fs::read(&a).unwrap();
    assert_eq!(ta, std::fs::read(&b).unwrap());
    let text = String::from_utf8(ta).unwrap();
    assert_eq!(text.lines().next(), Some(CSV_HEADER));
    assert!(text.lines().skip(1).all(|l| l.split(',').count() == 8));

    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["experiment"], "ising");
    assert_eq!(m["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(m["config"]["n"], serde_json::json!([4]));
    assert!(!m["schedules"].as_object().unwrap().is_empty());
    assert_eq!(m["csv_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", "alpha = [1.5, 2.5]\nkappa = [0.1]\n");
    let o = run(&["experiment", "bounds", "--config", &cfg, "--alpha", "3"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let alphas: std::collections::BTreeSet<&str> =
        text.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(alphas.into_iter().collect::<Vec<_>>(), vec!["3.0"]);
    assert!(text.contains("kappa=0.1/"));
}

#[test]
fn bounds_subcommand_prints_constants() {
    let o = run(&["bounds", "--alpha", "3"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains(",a_alpha,4.5"), "{text}");
}
