//! Parameter sweeps behind the benchmarks, with CSV and manifest output.
//!
//! Each sweep expands a [`RunConfig`] into independent points, evaluates them on a
//! worker pool and returns the rows sorted by their parameters, so identical
//! configurations give identical bytes.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::analysis::bounds::{cycle_period_for, trotter_bound, BoundError};
use crate::analysis::maxcut::{
    dqa_run, max_excited_probability, maxcut_energy_gap, registry_graph, DqaOptions,
};
use crate::analysis::metrics::infidelity;
use crate::analysis::reference::cluster_reference;
use crate::analysis::surface::{cycle_split, readout_deviations, Geometry, Surface7};
use crate::compiler::{
    compile, robustify, CompileError, CompileOptions, DecompositionStrategy, PulseSchedule,
    ResourceHamiltonian, RobustnessPolicy, TargetSpec,
};
use crate::sim::{run_schedule, ErrorModel, RunOptions, SimError, StateVector, DEFAULT_TOL};

pub const EXPERIMENTS: [&str; 6] = ["ising", "cutoff", "robust", "surface7", "maxcut", "bounds"];

pub const CSV_HEADER: &str = "experiment,N,alpha,p,tau_over_n,seed,metric,value";

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "WALSH_WORKERS";

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

impl ExperimentError {
    /// Numerical failures as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, ExperimentError::Sim(SimError::NonConvergence { .. }))
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub experiment: String,
    pub n: usize,
    pub alpha: f64,
    pub p: u8,
    pub tau_over_n: f64,
    pub seed: u64,
    pub metric: String,
    pub value: f64,
}

fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        ryu::Buffer::new().format_finite(x).to_string()
    }
}

impl Record {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.experiment,
            self.n,
            fmt_f64(self.alpha),
            self.p,
            fmt_f64(self.tau_over_n),
            self.seed,
            self.metric,
            fmt_f64(self.value)
        )
    }

    fn sort_key(&self) -> impl Ord + '_ {
        (
            &self.experiment,
            self.n,
            ordered(self.alpha),
            self.p,
            ordered(self.tau_over_n),
            self.seed,
            &self.metric,
        )
    }
}

fn ordered(x: f64) -> i64 {
    // total order on f64 bit patterns
    let b = x.to_bits() as i64;
    b ^ (((b >> 63) as u64) >> 1) as i64
}

pub fn to_csv(records: &[Record]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&r.csv_line());
        s.push('\n');
    }
    s
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn schedule_hash(s: &PulseSchedule) -> String {
    sha256_hex(s.to_json().as_bytes())
}

/// Sweep definition; every list is a grid axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub experiment: String,
    pub n: Vec<usize>,
    pub alpha: Vec<f64>,
    pub p: Vec<u8>,
    pub tau_over_n: Vec<f64>,
    pub seeds: Vec<u64>,
    /// Pulse error magnitudes `ε_RA = ε_FP` for the robustness sweep.
    pub epsilon: Vec<f64>,
    /// Largest Walsh index allowed by the cutoff sweep.
    pub cutoff: Vec<usize>,
    pub geometry: Vec<Geometry>,
    /// Haar samples per surface-code point.
    pub samples: usize,
    pub graphs: Vec<String>,
    pub k_steps: Vec<usize>,
    /// Fixed `K τ` of the annealing sweep.
    pub k_tau: f64,
    pub kappa: Vec<f64>,
    pub j: f64,
    pub tol: f64,
    pub output: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub workers: Option<usize>,
}

/// Optional values from a config file or the command line.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub n: Option<Vec<usize>>,
    pub alpha: Option<Vec<f64>>,
    pub p: Option<Vec<u8>>,
    pub tau_over_n: Option<Vec<f64>>,
    pub seeds: Option<Vec<u64>>,
    pub epsilon: Option<Vec<f64>>,
    pub cutoff: Option<Vec<usize>>,
    pub geometry: Option<Vec<Geometry>>,
    pub samples: Option<usize>,
    pub graphs: Option<Vec<String>>,
    pub k_steps: Option<Vec<usize>>,
    pub k_tau: Option<f64>,
    pub kappa: Option<Vec<f64>>,
    pub j: Option<f64>,
    pub tol: Option<f64>,
    pub output: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub workers: Option<usize>,
}

impl ConfigOverrides {
    pub fn from_toml(text: &str) -> Result<Self, ExperimentError> {
        toml::from_str(text).map_err(|e| ExperimentError::InvalidConfig(e.to_string()))
    }
}

fn decade(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    crate::analysis::metrics::log_space(lo, hi, n)
}

impl RunConfig {
    /// Defaults for a named experiment.
    pub fn for_experiment(name: &str) -> Result<Self, ExperimentError> {
        let mut c = RunConfig {
            experiment: name.to_string(),
            n: vec![8],
            alpha: vec![3.0],
            p: vec![1],
            tau_over_n: decade(1e-3, 1e-2, 6),
            seeds: vec![0],
            epsilon: vec![],
            cutoff: vec![],
            geometry: vec![],
            samples: 0,
            graphs: vec![],
            k_steps: vec![],
            k_tau: 0.0,
            kappa: vec![],
            j: 1.0,
            tol: DEFAULT_TOL,
            output: None,
            manifest: None,
            workers: None,
        };
        match name {
            "ising" => c.p = vec![1, 2],
            "cutoff" => {
                c.n = vec![12];
                c.alpha = vec![0.2, 3.0];
                c.cutoff = vec![8];
                c.tau_over_n = decade(1e-3, 1e-1, 5);
            }
            "robust" => {
                c.n = vec![6];
                c.alpha = vec![1.2];
                c.epsilon = vec![1e-2];
                c.tau_over_n = decade(1e-4, 1e-2, 5);
                c.seeds = vec![0, 1, 2];
            }
            "surface7" => {
                c.n = vec![7];
                c.alpha = vec![3.0, 0.2];
                c.p = vec![2];
                c.geometry = vec![Geometry::Grid, Geometry::Chain];
                c.samples = 64;
                c.tau_over_n = decade(1e-3, 1e-2, 5);
            }
            "maxcut" => {
                c.n = vec![];
                c.alpha = vec![0.0];
                c.p = vec![2];
                c.graphs = vec!["g6".into()];
                c.k_steps = vec![4, 8, 16, 32, 64];
                c.k_tau = 0.5;
                c.tau_over_n = vec![1e-2];
            }
            "bounds" => {
                c.alpha = vec![0.2, 3.0];
                c.tau_over_n = vec![1e-2];
                c.kappa = vec![1e-2];
            }
            other => return Err(ExperimentError::UnknownExperiment(other.to_string())),
        }
        Ok(c)
    }

    /// Adds the larger system sizes that need extended runtime.
    pub fn full_scale(mut self) -> Self {
        match self.experiment.as_str() {
            "ising" => self.n = vec![8, 12, 14, 16],
            "cutoff" => self.n = vec![12, 14],
            "maxcut" => self.graphs = vec!["g6".into(), "g10".into()],
            _ => {}
        }
        self
    }

    pub fn apply(&mut self, o: &ConfigOverrides) {
        macro_rules! take {
            ($($f:ident),*) => {$(
                if let Some(v) = &o.$f {
                    self.$f = v.clone();
                }
            )*};
        }
        take!(n, alpha, p, tau_over_n, seeds, epsilon, cutoff, geometry, samples, graphs, k_steps);
        take!(k_tau, kappa, j, tol);
        if o.output.is_some() {
            self.output = o.output.clone();
        }
        if o.manifest.is_some() {
            self.manifest = o.manifest.clone();
        }
        if o.workers.is_some() {
            self.workers = o.workers;
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: &str| Err(ExperimentError::InvalidConfig(m.to_string()));
        if !EXPERIMENTS.contains(&self.experiment.as_str()) {
            return Err(ExperimentError::UnknownExperiment(self.experiment.clone()));
        }
        if self.alpha.is_empty() || self.p.is_empty() || self.tau_over_n.is_empty() || self.seeds.is_empty() {
            return bad("parameter grid is empty");
        }
        let need = |v: bool, m: &str| if v { bad(m) } else { Ok(()) };
        match self.experiment.as_str() {
            "ising" | "bounds" => need(self.n.is_empty(), "parameter grid is empty")?,
            "cutoff" => need(self.n.is_empty() || self.cutoff.is_empty(), "parameter grid is empty")?,
            "robust" => need(self.n.is_empty() || self.epsilon.is_empty(), "parameter grid is empty")?,
            "surface7" => need(self.geometry.is_empty() || self.samples == 0, "parameter grid is empty")?,
            "maxcut" => need(self.graphs.is_empty() || self.k_steps.is_empty(), "parameter grid is empty")?,
            _ => {}
        }
        if self.experiment == "bounds" && self.kappa.is_empty() {
            return bad("parameter grid is empty");
        }
        if self.p.iter().any(|p| *p != 1 && *p != 2) {
            return bad("trotter order must be 1 or 2");
        }
        if self.tau_over_n.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return bad("tau_over_n values must be positive");
        }
        if !(self.j.is_finite() && self.j > 0.0) || !(self.tol > 0.0) {
            return bad("j and tol must be positive");
        }
        if self.n.iter().any(|&n| !(2..=20).contains(&n)) {
            return bad("N must lie in 2..=20");
        }
        if let Some(g) = self.graphs.iter().find(|g| registry_graph(g).is_none()) {
            return Err(ExperimentError::InvalidConfig(format!("unknown graph `{g}`")));
        }
        if self.experiment == "maxcut" && !(self.k_tau > 0.0) {
            return bad("k_tau must be positive");
        }
        Ok(())
    }
}

/// Sweep output.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub records: Vec<Record>,
    /// Schedule label to SHA-256 of its JSON.
    pub schedules: BTreeMap<String, String>,
    pub failures: usize,
    pub numerical_failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub experiment: &'a str,
    pub config: &'a RunConfig,
    pub rows: usize,
    pub failures: usize,
    pub csv_sha256: String,
    pub schedules: &'a BTreeMap<String, String>,
}

impl RunOutput {
    pub fn csv(&self) -> String {
        to_csv(&self.records)
    }

    pub fn manifest_json(&self, config: &RunConfig) -> String {
        let m = Manifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            experiment: &config.experiment,
            config,
            rows: self.records.len(),
            failures: self.failures,
            csv_sha256: sha256_hex(self.csv().as_bytes()),
            schedules: &self.schedules,
        };
        let mut s = serde_json::to_string_pretty(&m).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// Worker count: explicit value, then the environment, then all cores.
pub fn worker_count(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok()))
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

// ---------------------------------------------------------------------------
// single points

fn chain_options(n: usize, p: u8) -> CompileOptions {
    CompileOptions {
        trotter_order: p,
        strategy: DecompositionStrategy::chain_links(n),
        ..Default::default()
    }
}

/// Ising-chain schedule targeting `−J Σ X_i X_{i+1}` on a power-law chain.
pub fn ising_schedule(
    n: usize,
    alpha: f64,
    p: u8,
    j: f64,
    cutoff: Option<usize>,
    dd_guard: bool,
) -> Result<(ResourceHamiltonian, PulseSchedule), ExperimentError> {
    let resource = ResourceHamiltonian::power_law_chain(n, j, alpha)?;
    let options = CompileOptions { cutoff, dd_guard, ..chain_options(n, p) };
    let s = compile(&TargetSpec::ising_chain(n, j), &resource, &options)?;
    Ok((resource, s))
}

/// Cluster-state preparation time `π/(4J)`.
pub fn cluster_time(j: f64) -> f64 {
    FRAC_PI_4 / j
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsingPoint {
    pub infidelity: f64,
    /// Realised `J τ/n` after rounding to a whole number of cycles.
    pub tau_over_n: f64,
    pub bound: f64,
    pub cycles: usize,
    pub tau: f64,
}

fn run_plain(
    schedule: &PulseSchedule,
    resource: &ResourceHamiltonian,
    tau: f64,
    cycles: usize,
    errors: &ErrorModel,
    tol: f64,
) -> Result<StateVector, SimError> {
    run_schedule(
        schedule,
        resource,
        tau,
        cycles,
        errors,
        &StateVector::zero(schedule.n_qubits),
        RunOptions { tol },
    )
}

/// Cluster-state preparation error of the Ising schedule at interval length `tau_over_n / J`.
pub fn ising_point(
    n: usize,
    alpha: f64,
    p: u8,
    tau_over_n: f64,
    j: f64,
    tol: f64,
) -> Result<IsingPoint, ExperimentError> {
    let (resource, s) = ising_schedule(n, alpha, p, j, None, false)?;
    let t = cluster_time(j);
    let (tau, cycles) = cycle_split(&s, tau_over_n / j, t);
    let psi = run_plain(&s, &resource, tau, cycles, &ErrorModel::default(), tol)?;
    let block_times: Vec<f64> = s.blocks.iter().map(|b| b.c * tau).collect();
    let bound = trotter_bound(alpha, n, j, &block_times, t)?.value;
    Ok(IsingPoint {
        infidelity: infidelity(&psi, &cluster_reference(n)),
        tau_over_n: j * tau / s.sequence_length() as f64,
        bound,
        cycles,
        tau,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffPoint {
    pub full: f64,
    pub cutoff: f64,
    pub full_length: usize,
    pub cutoff_length: usize,
}

/// Full and cut-off schedules run on the same full resource.
pub fn cutoff_point(
    n: usize,
    alpha: f64,
    lambda_w: usize,
    tau_over_n: f64,
    j: f64,
    tol: f64,
) -> Result<CutoffPoint, ExperimentError> {
    let reference = cluster_reference(n);
    let t = cluster_time(j);
    let mut out = [(0.0, 0); 2];
    for (k, cut) in [None, Some(lambda_w)].into_iter().enumerate() {
        let (resource, s) = ising_schedule(n, alpha, 1, j, cut, false)?;
        let (tau, cycles) = cycle_split(&s, tau_over_n / j, t);
        let psi = run_plain(&s, &resource, tau, cycles, &ErrorModel::default(), tol)?;
        let len = (0..s.n_blocks()).map(|q| s.block_intervals(q)).max().unwrap_or(1);
        out[k] = (infidelity(&psi, &reference), len);
    }
    Ok(CutoffPoint { full: out[0].0, cutoff: out[1].0, full_length: out[0].1, cutoff_length: out[1].1 })
}

/// `δ_i` uniform in `[−2εJ, 2εJ]`.
pub fn sample_rotation_errors(n: usize, epsilon: f64, j: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = 2.0 * epsilon * j;
    (0..n).map(|_| rng.random_range(-a..=a)).collect()
}

/// Fields with every component uniform in `[−h/√3, h/√3]`, so `|h_i| ≤ h`.
pub fn sample_fields(n: usize, h: f64, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let a = h / 3f64.sqrt();
    (0..n).map(|_| [0; 3].map(|_| rng.random_range(-a..=a))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RobustPoint {
    pub ideal: f64,
    pub ra_single: f64,
    pub ra_double: f64,
    pub fp_plain: f64,
    pub fp_deformed: f64,
    pub fields_unguarded: f64,
    pub fields_guarded: f64,
    pub cycles: usize,
}

/// Ising preparation under rotation-angle, finite-pulse and background-field errors.
#[allow(clippy::too_many_arguments)]
pub fn robust_point(
    n: usize,
    alpha: f64,
    p: u8,
    epsilon: f64,
    tau_over_n: f64,
    seed: u64,
    j: f64,
    tol: f64,
) -> Result<RobustPoint, ExperimentError> {
    let reference = cluster_reference(n);
    let t = cluster_time(j);
    let (resource, guarded) = ising_schedule(n, alpha, p, j, None, true)?;
    let double = robustify(&guarded, &RobustnessPolicy::default())?;
    let deformed = robustify(&guarded, &RobustnessPolicy { e: None, fp_epsilon: Some(epsilon) })?;
    let period = double.sign_period();
    let (_, c0) = cycle_split(&guarded, tau_over_n / j, t);
    let cycles = c0.div_ceil(period) * period;
    let tau = t / cycles as f64;
    let run = |s: &PulseSchedule, r: &ResourceHamiltonian, e: &ErrorModel| -> Result<f64, ExperimentError> {
        let psi = run_plain(s, r, tau, cycles, e, tol)?;
        Ok(infidelity(&psi, &reference))
    };
    let none = ErrorModel::default();
    let ra = ErrorModel {
        rotation_errors: Some(sample_rotation_errors(n, epsilon, j, seed)),
        fp_epsilon: 0.0,
    };
    let fp = ErrorModel { rotation_errors: None, fp_epsilon: epsilon };
    let with_fields = resource.clone().with_fields(sample_fields(n, j, seed))?;
    let (_, unguarded) = ising_schedule(n, alpha, p, j, None, false)?;
    Ok(RobustPoint {
        ideal: run(&guarded, &resource, &none)?,
        ra_single: run(&guarded, &resource, &ra)?,
        ra_double: run(&double, &resource, &ra)?,
        fp_plain: run(&guarded, &resource, &fp)?,
        fp_deformed: run(&deformed, &resource, &fp)?,
        fields_unguarded: run(&unguarded, &with_fields, &none)?,
        fields_guarded: run(&guarded, &with_fields, &none)?,
        cycles,
    })
}

/// Mean readout deviations over `samples` Haar states starting at `seed`.
pub fn surface_point(
    code: &Surface7,
    tau_over_n: f64,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<[f64; 3], ExperimentError> {
    let per: Vec<[f64; 3]> = (0..samples as u64)
        .into_par_iter()
        .map(|s| {
            let psi = code.run(&Surface7::initial_state(seed + s), Some(tau_over_n), tol)?;
            Ok(readout_deviations(&psi))
        })
        .collect::<Result<_, SimError>>()?;
    let mut mean = [0.0; 3];
    for d in &per {
        for k in 0..3 {
            mean[k] += d[k] / samples as f64;
        }
    }
    Ok(mean)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxcutPoint {
    pub gap: f64,
    pub gap_exact: f64,
    pub max_excited: f64,
    pub energy: f64,
}

pub fn maxcut_point(
    graph: &str,
    k_steps: usize,
    k_tau: f64,
    p: u8,
    tau_over_n: f64,
    j: f64,
    tol: f64,
) -> Result<MaxcutPoint, ExperimentError> {
    let g = registry_graph(graph)
        .ok_or_else(|| ExperimentError::InvalidConfig(format!("unknown graph `{graph}`")))?;
    let tau = k_tau / k_steps as f64;
    let opts = DqaOptions { j, max_interval: Some(tau_over_n / j), trotter_order: p, tol };
    let psi = dqa_run(&g, k_steps, tau, &opts)?;
    let exact = dqa_run(&g, k_steps, tau, &DqaOptions { max_interval: None, ..opts })?;
    let r = maxcut_energy_gap(&psi, &g, j);
    Ok(MaxcutPoint {
        gap: r.gap,
        gap_exact: maxcut_energy_gap(&exact, &g, j).gap,
        max_excited: max_excited_probability(&psi, &g, j),
        energy: r.energy,
    })
}

// ---------------------------------------------------------------------------
// sweeps

struct Point {
    records: Vec<Record>,
    schedules: Vec<(String, String)>,
}

type Task = Box<dyn Fn() -> Result<Point, ExperimentError> + Send + Sync>;

struct Row<'a> {
    experiment: &'a str,
    n: usize,
    alpha: f64,
    p: u8,
    tau_over_n: f64,
    seed: u64,
}

impl Row<'_> {
    fn rec(&self, metric: impl Into<String>, value: f64) -> Record {
        Record {
            experiment: self.experiment.to_string(),
            n: self.n,
            alpha: self.alpha,
            p: self.p,
            tau_over_n: self.tau_over_n,
            seed: self.seed,
            metric: metric.into(),
            value,
        }
    }
}

fn tasks(c: &RunConfig) -> Vec<(Record, Task)> {
    let mut out: Vec<(Record, Task)> = Vec::new();
    let (j, tol) = (c.j, c.tol);
    let key = |n, alpha, p, t, seed, label: &str| Record {
        experiment: c.experiment.clone(),
        n,
        alpha,
        p,
        tau_over_n: t,
        seed,
        metric: label.to_string(),
        value: f64::NAN,
    };
    match c.experiment.as_str() {
        "ising" => {
            for &n in &c.n {
                for &alpha in &c.alpha {
                    for &p in &c.p {
                        for &t in &c.tau_over_n {
                            let task: Task = Box::new(move || {
                                let row = Row { experiment: "ising", n, alpha, p, tau_over_n: t, seed: 0 };
                                let r = ising_point(n, alpha, p, t, j, tol)?;
                                let (_, s) = ising_schedule(n, alpha, p, j, None, false)?;
                                Ok(Point {
                                    records: vec![
                                        row.rec("infidelity", r.infidelity),
                                        row.rec("sqrt_infidelity", r.infidelity.sqrt()),
                                        row.rec("trotter_bound", r.bound),
                                        row.rec("cycles", r.cycles as f64),
                                        row.rec("tau_over_n_actual", r.tau_over_n),
                                    ],
                                    schedules: vec![(format!("ising/N={n}/alpha={alpha}/p={p}"), schedule_hash(&s))],
                                })
                            });
                            out.push((key(n, alpha, p, t, 0, ""), task));
                        }
                    }
                }
            }
        }
        "cutoff" => {
            for &n in &c.n {
                for &alpha in &c.alpha {
                    for &lw in &c.cutoff {
                        for &t in &c.tau_over_n {
                            let task: Task = Box::new(move || {
                                let row = Row { experiment: "cutoff", n, alpha, p: 1, tau_over_n: t, seed: 0 };
                                let r = cutoff_point(n, alpha, lw, t, j, tol)?;
                                let (_, s) = ising_schedule(n, alpha, 1, j, Some(lw), false)?;
                                let m = |name: &str| format!("lambda_w={lw}/{name}");
                                Ok(Point {
                                    records: vec![
                                        row.rec(m("infidelity_full"), r.full),
                                        row.rec(m("infidelity_cutoff"), r.cutoff),
                                        row.rec(m("abs_difference"), (r.cutoff - r.full).abs()),
                                        row.rec(m("sequence_length_full"), r.full_length as f64),
                                        row.rec(m("sequence_length_cutoff"), r.cutoff_length as f64),
                                    ],
                                    schedules: vec![(
                                        format!("cutoff/N={n}/alpha={alpha}/lambda_w={lw}"),
                                        schedule_hash(&s),
                                    )],
                                })
                            });
                            out.push((key(n, alpha, 1, t, lw as u64, ""), task));
                        }
                    }
                }
            }
        }
        "robust" => {
            for &n in &c.n {
                for &alpha in &c.alpha {
                    for &p in &c.p {
                        for &eps in &c.epsilon {
                            for &t in &c.tau_over_n {
                                for &seed in &c.seeds {
                                    let task: Task = Box::new(move || {
                                        let row = Row { experiment: "robust", n, alpha, p, tau_over_n: t, seed };
                                        let r = robust_point(n, alpha, p, eps, t, seed, j, tol)?;
                                        let m = |name: &str| format!("epsilon={}/{name}", fmt_f64(eps));
                                        Ok(Point {
                                            records: vec![
                                                row.rec(m("infidelity_ideal"), r.ideal),
                                                row.rec(m("infidelity_ra_single"), r.ra_single),
                                                row.rec(m("infidelity_ra_double"), r.ra_double),
                                                row.rec(m("infidelity_fp_plain"), r.fp_plain),
                                                row.rec(m("infidelity_fp_deformed"), r.fp_deformed),
                                                row.rec(m("infidelity_fields_unguarded"), r.fields_unguarded),
                                                row.rec(m("infidelity_fields_guarded"), r.fields_guarded),
                                                row.rec(m("cycles"), r.cycles as f64),
                                            ],
                                            schedules: vec![],
                                        })
                                    });
                                    out.push((key(n, alpha, p, t, seed, ""), task));
                                }
                            }
                        }
                    }
                }
            }
        }
        "surface7" => {
            let samples = c.samples;
            for &geometry in &c.geometry {
                for &alpha in &c.alpha {
                    for &p in &c.p {
                        for &t in &c.tau_over_n {
                            for &seed in &c.seeds {
                                let task: Task = Box::new(move || {
                                    let row = Row { experiment: "surface7", n: 7, alpha, p, tau_over_n: t, seed };
                                    let code = Surface7::new(geometry, alpha, p)?;
                                    let d = surface_point(&code, t, samples, seed, tol)?;
                                    let g = geometry.name();
                                    let mean = d.iter().sum::<f64>() / 3.0;
                                    Ok(Point {
                                        records: vec![
                                            row.rec(format!("{g}/deviation_o1"), d[0]),
                                            row.rec(format!("{g}/deviation_o2"), d[1]),
                                            row.rec(format!("{g}/deviation_o3"), d[2]),
                                            row.rec(format!("{g}/deviation_mean"), mean),
                                            row.rec(format!("{g}/blocks"), code.n_blocks() as f64),
                                            row.rec(format!("{g}/tau_over_n_actual"), code.realized_tau_over_n(t)),
                                        ],
                                        schedules: code
                                            .layers
                                            .iter()
                                            .enumerate()
                                            .map(|(k, l)| {
                                                (format!("surface7/{g}/alpha={alpha}/p={p}/layer={k}"), schedule_hash(&l.schedule))
                                            })
                                            .collect(),
                                    })
                                });
                                let mut k = key(7, alpha, p, t, seed, geometry.name());
                                k.metric = geometry.name().into();
                                out.push((k, task));
                            }
                        }
                    }
                }
            }
        }
        "maxcut" => {
            let k_tau = c.k_tau;
            for graph in &c.graphs {
                let n = registry_graph(graph).map(|g| g.n_vertices()).unwrap_or(0);
                for &p in &c.p {
                    for &t in &c.tau_over_n {
                        for &k in &c.k_steps {
                            let name = graph.clone();
                            let task: Task = Box::new(move || {
                                let graph = &name;
                                let row = Row { experiment: "maxcut", n, alpha: 0.0, p, tau_over_n: t, seed: 0 };
                                let r = maxcut_point(graph, k, k_tau, p, t, j, tol)?;
                                let g = registry_graph(graph).expect("validated");
                                let (_, s) = crate::analysis::maxcut::dqa_schedule(
                                    &g,
                                    &DqaOptions { j, max_interval: None, trotter_order: p, tol },
                                )?;
                                let m = |name: &str| format!("{graph}/K={k}/{name}");
                                Ok(Point {
                                    records: vec![
                                        row.rec(m("k2tau"), k as f64 * k_tau),
                                        row.rec(m("gap"), r.gap),
                                        row.rec(m("gap_exact"), r.gap_exact),
                                        row.rec(m("energy"), r.energy),
                                        row.rec(m("max_excited_probability"), r.max_excited),
                                    ],
                                    schedules: vec![(format!("maxcut/{graph}/p={p}"), schedule_hash(&s))],
                                })
                            });
                            let mut kk = key(n, 0.0, p, t, 0, "");
                            kk.metric = format!("{graph}/{k:08}");
                            out.push((kk, task));
                        }
                    }
                }
            }
        }
        "bounds" => {
            for &n in &c.n {
                for &alpha in &c.alpha {
                    for &t in &c.tau_over_n {
                        let kappa = c.kappa.clone();
                        let task: Task = Box::new(move || {
                            let row = Row { experiment: "bounds", n, alpha, p: 1, tau_over_n: t, seed: 0 };
                            let (_, s) = ising_schedule(n, alpha, 1, j, None, false)?;
                            let total = cluster_time(j);
                            let tau = t / j * s.sequence_length() as f64;
                            let times: Vec<f64> = s.blocks.iter().map(|b| b.c * tau).collect();
                            let b = trotter_bound(alpha, n, j, &times, total)?;
                            let mut records = vec![
                                row.rec(if alpha > 1.0 { "a_alpha" } else { "b_alpha" }, b.constant),
                                row.rec("size_factor", b.size_factor),
                                row.rec("bound", b.value),
                            ];
                            for &k in &kappa {
                                let period = cycle_period_for(alpha, n, j * total, k)?;
                                records.push(row.rec(format!("kappa={}/cycle_period", fmt_f64(k)), period));
                            }
                            Ok(Point { records, schedules: vec![(format!("bounds/N={n}/alpha={alpha}"), schedule_hash(&s))] })
                        });
                        out.push((key(n, alpha, 1, t, 0, ""), task));
                    }
                }
            }
        }
        _ => {}
    }
    out
}

/// Runs a validated sweep. Failed points become `failed` rows holding `NaN`.
pub fn run_experiment(config: &RunConfig) -> Result<RunOutput, ExperimentError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count(config.workers))
        .build()
        .map_err(|e| ExperimentError::InvalidConfig(e.to_string()))?;
    let tasks = tasks(config);
    let results: Vec<(Record, Result<Point, ExperimentError>)> =
        pool.install(|| tasks.into_par_iter().map(|(k, f)| (k, f())).collect());
    let mut out = RunOutput { records: Vec::new(), schedules: BTreeMap::new(), failures: 0, numerical_failures: 0 };
    for (mut key, r) in results {
        match r {
            Ok(p) => {
                out.records.extend(p.records);
                out.schedules.extend(p.schedules);
            }
            Err(e) => {
                out.failures += 1;
                if e.is_numerical() {
                    out.numerical_failures += 1;
                }
                key.metric = if key.metric.is_empty() {
                    "failed".into()
                } else {
                    format!("{}/failed", key.metric)
                };
                out.records.push(key);
            }
        }
    }
    out.records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(out)
}
