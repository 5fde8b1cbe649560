use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use walsh_seq::analysis::metrics::infidelity;
use walsh_seq::analysis::surface::cycle_split;
use walsh_seq::compiler::{
    compile, robustify, CompileError, CompileOptions, DecompositionStrategy, PulseSchedule,
    ResourceHamiltonian, ResourceModel, RobustnessPolicy, TargetSpec,
};
use walsh_seq::experiments::{
    run_experiment, sample_rotation_errors, ConfigOverrides, ExperimentError, RunConfig,
    EXPERIMENTS,
};
use walsh_seq::sim::{evolve, run_schedule, ErrorModel, RunOptions, SimError, StateVector};

#[derive(Parser)]
#[command(name = "walsh-seq", version, about = "Walsh pulse-sequence compiler and simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a target Hamiltonian into a pulse schedule.
    Compile(CompileArgs),
    /// Run a compiled schedule on a resource Hamiltonian.
    Simulate(SimulateArgs),
    /// Run a benchmark sweep and write CSV rows plus a manifest.
    Experiment(ExperimentArgs),
    /// Trotter bound constants and cycle periods.
    Bounds(BoundsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Greedy,
    Hamilton,
    Chain,
}

#[derive(Args)]
struct CompileArgs {
    /// Target JSON file.
    #[arg(long)]
    target: PathBuf,
    /// Resource JSON file.
    #[arg(long)]
    resource: PathBuf,
    #[arg(long, default_value_t = 1)]
    order: u8,
    /// Neglect resource couplings beyond this chain distance.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Keep every Walsh index nonzero so that background fields average out.
    #[arg(long)]
    dd_guard: bool,
    #[arg(long, value_enum, default_value = "greedy")]
    strategy: Strategy,
    /// Add the cycle sign pattern that cancels rotation-angle errors.
    #[arg(long)]
    robust: bool,
    /// Deform durations for pulses filling this fraction of each interval.
    #[arg(long)]
    fp_epsilon: Option<f64>,
    /// Print block count, sequence lengths and pulse counts to stderr.
    #[arg(long)]
    stats: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    schedule: PathBuf,
    #[arg(long)]
    resource: PathBuf,
    /// Target time `T`.
    #[arg(long)]
    time: f64,
    /// Interval scale `J τ/n`.
    #[arg(long)]
    tau_over_n: f64,
    /// Compare against exact evolution under this target.
    #[arg(long)]
    target: Option<PathBuf>,
    /// Rotation-angle error scale; offsets are drawn uniformly from `[−2εJ, 2εJ]`.
    #[arg(long)]
    rotation_error: Option<f64>,
    /// Fraction of each interval spent pulsing.
    #[arg(long, default_value_t = 0.0)]
    fp_epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    j: f64,
    /// Leave amplitudes out of the output.
    #[arg(long)]
    summary: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Default)]
struct GridArgs {
    /// Qubit counts.
    #[arg(long = "N", value_delimiter = ',')]
    n: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    alpha: Option<Vec<f64>>,
    /// Trotter orders.
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<u8>>,
    #[arg(long, value_delimiter = ',')]
    tau_over_n: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    epsilon: Option<Vec<f64>>,
    /// Largest Walsh index of the cutoff sweep.
    #[arg(long, value_delimiter = ',')]
    cutoff: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    geometry: Option<Vec<String>>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    graphs: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    k_steps: Option<Vec<usize>>,
    #[arg(long)]
    k_tau: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    kappa: Option<Vec<f64>>,
    #[arg(long)]
    j: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Worker threads; defaults to $WALSH_WORKERS, then all cores.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// One of ising, cutoff, robust, surface7, maxcut, bounds.
    name: String,
    /// TOML file with grid values; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    grid: GridArgs,
    /// Include the largest system sizes.
    #[arg(long)]
    full: bool,
    /// CSV destination; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Manifest destination; defaults to the CSV path with a `.manifest.json` suffix.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    Input(String, String),
    Numerical(String, String),
}

impl Failure {
    fn input(kind: &str, e: impl std::fmt::Display) -> Self {
        Failure::Input(kind.into(), e.to_string())
    }
}

fn variant(e: &impl std::fmt::Debug) -> String {
    let s = format!("{e:?}");
    s.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

impl From<CompileError> for Failure {
    fn from(e: CompileError) -> Self {
        Failure::Input(variant(&e), e.to_string())
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Schedule(c) => c.into(),
            SimError::NonConvergence { .. } => Failure::Numerical("NonConvergence".into(), e.to_string()),
            _ => Failure::Input(variant(&e), e.to_string()),
        }
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Compile(c) => c.into(),
            ExperimentError::Sim(s) => s.into(),
            other => Failure::Input(variant(&other), other.to_string()),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ResourceFile {
    Chain { chain: usize, alpha: f64, #[serde(default = "one")] j: f64, #[serde(default)] model: Option<ResourceModel> },
    Full(ResourceHamiltonian),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TargetFile {
    Ising { ising_chain: usize, #[serde(default = "one")] j: f64 },
    Full(TargetSpec),
}

fn one() -> f64 {
    1.0
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input("Io", format!("{}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::input("Parse", format!("{}: {e}", path.display())))
}

fn load_resource(path: &Path) -> Result<ResourceHamiltonian, Failure> {
    let r = match parse_json::<ResourceFile>(path)? {
        ResourceFile::Chain { chain, alpha, j, model } => {
            let pos: Vec<[f64; 2]> = (0..chain).map(|i| [i as f64, 0.0]).collect();
            ResourceHamiltonian::power_law(&pos, j, alpha, model.unwrap_or(ResourceModel::Xy))?
        }
        ResourceFile::Full(r) => r,
    };
    r.validate()?;
    Ok(r)
}

fn load_target(path: &Path) -> Result<TargetSpec, Failure> {
    let t = match parse_json::<TargetFile>(path)? {
        TargetFile::Ising { ising_chain, j } => TargetSpec::ising_chain(ising_chain, j),
        TargetFile::Full(t) => t,
    };
    t.validate()?;
    Ok(t)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::input("Io", format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_compile(a: CompileArgs) -> Result<(), Failure> {
    let target = load_target(&a.target)?;
    let resource = load_resource(&a.resource)?;
    let strategy = match a.strategy {
        Strategy::Greedy => DecompositionStrategy::Greedy,
        Strategy::Hamilton => DecompositionStrategy::HamiltonPaths,
        Strategy::Chain => DecompositionStrategy::chain_links(target.n_qubits),
    };
    let options = CompileOptions { trotter_order: a.order, cutoff: a.cutoff, dd_guard: a.dd_guard, strategy };
    let mut s = compile(&target, &resource, &options)?;
    if a.robust || a.fp_epsilon.is_some() {
        s = robustify(&s, &RobustnessPolicy { e: None, fp_epsilon: a.fp_epsilon })?;
    }
    if a.stats {
        let counts = s.pulse_counts();
        eprintln!("Q = {}", s.n_blocks());
        for (q, b) in s.blocks.iter().enumerate() {
            eprintln!("block {q}: c = {} n = {}", b.c, b.assignment().sequence_length());
        }
        eprintln!("pulses = {} (merged {})", counts.raw, counts.merged);
    }
    write_out(a.output.as_deref(), &s.to_json())
}

fn cmd_simulate(a: SimulateArgs) -> Result<(), Failure> {
    let schedule = PulseSchedule::from_json(&read(&a.schedule)?)?;
    let resource = load_resource(&a.resource)?;
    if !(a.time > 0.0 && a.tau_over_n > 0.0 && a.j > 0.0) {
        return Err(Failure::input("InvalidArgument", "time, tau_over_n and j must be positive"));
    }
    let (_, c0) = cycle_split(&schedule, a.tau_over_n / a.j, a.time);
    let period = schedule.sign_period();
    let cycles = c0.div_ceil(period) * period;
    let tau = a.time / cycles as f64;
    let errors = ErrorModel {
        rotation_errors: a
            .rotation_error
            .map(|e| sample_rotation_errors(schedule.n_qubits, e, a.j, a.seed)),
        fp_epsilon: a.fp_epsilon,
    };
    let psi0 = StateVector::zero(schedule.n_qubits);
    let psi = run_schedule(&schedule, &resource, tau, cycles, &errors, &psi0, RunOptions::default())?;
    let mut out = json!({
        "n_qubits": schedule.n_qubits,
        "cycles": cycles,
        "tau": tau,
        "time": a.time,
        "norm": psi.norm(),
    });
    if let Some(t) = &a.target {
        let target = load_target(t)?;
        let exact = evolve(&target.to_operator(), a.time, &psi0, 1e-13)?;
        out["infidelity"] = json!(infidelity(&psi, &exact));
    }
    if !a.summary {
        out["amplitudes"] = psi.amplitudes().iter().map(|z| json!([z.re, z.im])).collect();
    }
    let mut text = serde_json::to_string_pretty(&out).expect("json");
    text.push('\n');
    write_out(a.output.as_deref(), &text)
}

fn overrides(g: GridArgs) -> Result<ConfigOverrides, Failure> {
    let geometry = match g.geometry {
        Some(v) => Some(
            v.iter()
                .map(|s| s.parse().map_err(|e: String| Failure::input("InvalidConfig", e)))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    Ok(ConfigOverrides {
        n: g.n,
        alpha: g.alpha,
        p: g.p,
        tau_over_n: g.tau_over_n,
        seeds: g.seeds,
        epsilon: g.epsilon,
        cutoff: g.cutoff,
        geometry,
        samples: g.samples,
        graphs: g.graphs,
        k_steps: g.k_steps,
        k_tau: g.k_tau,
        kappa: g.kappa,
        j: g.j,
        tol: g.tol,
        output: None,
        manifest: None,
        workers: g.workers,
    })
}

fn run_sweep(mut config: RunConfig) -> Result<(), Failure> {
    if config.manifest.is_none() {
        config.manifest = config.output.as_ref().map(|p| p.with_extension("manifest.json"));
    }
    let out = run_experiment(&config)?;
    write_out(config.output.as_deref(), &out.csv())?;
    if let Some(m) = &config.manifest {
        write_out(Some(m), &out.manifest_json(&config))?;
    }
    if out.numerical_failures > 0 {
        return Err(Failure::Numerical(
            "NonConvergence".into(),
            format!("{} sweep points failed to converge", out.numerical_failures),
        ));
    }
    if out.failures > 0 {
        return Err(Failure::input("PointFailure", format!("{} sweep points failed", out.failures)));
    }
    Ok(())
}

fn cmd_experiment(a: ExperimentArgs) -> Result<(), Failure> {
    if !EXPERIMENTS.contains(&a.name.as_str()) {
        return Err(ExperimentError::UnknownExperiment(a.name).into());
    }
    let mut config = RunConfig::for_experiment(&a.name)?;
    if a.full {
        config = config.full_scale();
    }
    if let Some(path) = &a.config {
        config.apply(&ConfigOverrides::from_toml(&read(path)?)?);
    }
    let mut o = overrides(a.grid)?;
    o.output = a.output;
    o.manifest = a.manifest;
    config.apply(&o);
    run_sweep(config)
}

fn cmd_bounds(a: BoundsArgs) -> Result<(), Failure> {
    let mut config = RunConfig::for_experiment("bounds")?;
    let mut o = overrides(a.grid)?;
    o.output = a.output;
    config.apply(&o);
    run_sweep(config)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Compile(a) => cmd_compile(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Bounds(a) => cmd_bounds(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Input(k, m) => (2, k, m),
                Failure::Numerical(k, m) => (3, k, m),
            };
            eprintln!("{}", json!({ "error": kind, "message": msg }));
            ExitCode::from(code)
        }
    }
}
