//! Compilation of a target two-body Hamiltonian into Walsh pulse schedules.
//!
//! The target is split per interaction channel into a rescaling graph
//! `g_ij = J̃_ij / J_ij`, decomposed into uniformly weighted matchings, and each
//! matching (paired with one from the other channel when possible) becomes a block.

mod assign;
mod gates;
mod model;
mod robust;
mod schedule;
mod su2;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub use assign::{assign_indices, assign_indices_with_cutoff, dd_guard, residual_couplings};
pub use gates::{gate_layer_to_target, LayerGate, LayerProgram};
pub use model::{
    Channel, OpLabel, ResourceHamiltonian, ResourceModel, TargetSpec, TargetTerm,
};
pub use robust::{robustify, RobustnessPolicy};
pub use schedule::{Block, FpDeformation, PulseCounts, PulseSchedule, SCHEDULE_VERSION};
pub use su2::Su2;

use crate::graphdecomp::{
    complete_graph_matchings, greedy_degree1, weighted_decompose, GraphError, Matching,
    WeightedGraph, WEIGHT_TOL,
};
use crate::walsh::WalshError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CompileError {
    #[error("target couples ({i}, {j}) in channel {channel:?} but the resource coupling is zero")]
    DivisionByZeroCoupling { i: usize, j: usize, channel: Channel },
    #[error("target has {target} qubits but the resource has {resource}")]
    SizeMismatch { target: usize, resource: usize },
    #[error("invalid resource: {0}")]
    InvalidResource(String),
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("invalid option: {0}")]
    InvalidOption(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("linked qubits {i} and {j} are farther apart than the cutoff {lambda}")]
    LinkBeyondCutoff { i: usize, j: usize, lambda: usize },
    #[error("robustness precondition failed: {0}")]
    Robustness(String),
    #[error(transparent)]
    Walsh(#[from] WalshError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// How each channel's rescaling graph is split into matchings.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum DecompositionStrategy {
    #[default]
    Greedy,
    /// Intersect the graph with a Hamilton-path decomposition of the complete graph.
    HamiltonPaths,
    /// Caller-supplied matchings for the X and Y channels.
    Given { x: Vec<Matching>, y: Vec<Matching> },
}

impl DecompositionStrategy {
    /// Even and odd nearest-neighbour links of an open chain on the X channel.
    pub fn chain_links(n: usize) -> Self {
        let links = |start: usize| {
            Matching::new(n, (start..n.saturating_sub(1)).step_by(2).map(|i| (i, i + 1)))
                .expect("disjoint links")
        };
        let x = [links(0), links(1)].into_iter().filter(|m| !m.is_empty()).collect();
        DecompositionStrategy::Given { x, y: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompileOptions {
    pub trotter_order: u8,
    /// Chain distance beyond which resource couplings are neglected.
    pub cutoff: Option<usize>,
    pub dd_guard: bool,
    pub strategy: DecompositionStrategy,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions { trotter_order: 1, cutoff: None, dd_guard: false, strategy: Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Link {
    i: usize,
    j: usize,
    negate: bool,
    rot_i: Option<Su2>,
    rot_j: Option<Su2>,
}

/// Uniform-weight piece of one channel: `groups` share a Walsh index.
#[derive(Debug, Clone, PartialEq)]
struct ChannelTerm {
    c: f64,
    groups: Vec<Vec<usize>>,
    links: Vec<Link>,
}

impl ChannelTerm {
    fn linked(&self) -> BTreeSet<usize> {
        self.groups.iter().flatten().copied().collect()
    }

    fn rotated(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for l in &self.links {
            if l.rot_i.is_some() {
                s.insert(l.i);
            }
            if l.rot_j.is_some() {
                s.insert(l.j);
            }
        }
        s
    }
}

fn compatible(a: &ChannelTerm, b: &ChannelTerm) -> bool {
    a.rotated().is_disjoint(&b.linked()) && b.rotated().is_disjoint(&a.linked())
}

/// Rescaling graphs `(g^X, g^Y)` of the terms whose labels match a resource channel.
pub fn rescaling_graph(
    target: &TargetSpec,
    resource: &ResourceHamiltonian,
) -> Result<(WeightedGraph, WeightedGraph), CompileError> {
    let n = target.n_qubits;
    let mut gx = WeightedGraph::new(n);
    let mut gy = WeightedGraph::new(n);
    for t in &target.terms {
        if let (Some(c), true) = (t.ops[0].channel(), t.ops[0] == t.ops[1]) {
            let jr = resource.coupling(c, t.i, t.j);
            if jr == 0.0 {
                return Err(CompileError::DivisionByZeroCoupling { i: t.i.min(t.j), j: t.i.max(t.j), channel: c });
            }
            let g = match c {
                Channel::X => &mut gx,
                Channel::Y => &mut gy,
            };
            g.add_edge(t.i, t.j, t.strength / jr)?;
        }
    }
    Ok((gx, gy))
}

/// Components of `g` if it is a disjoint union of cliques with one positive weight,
/// where pairs without resource coupling may be missing.
fn uniform_clusters(
    g: &WeightedGraph,
    resource: &ResourceHamiltonian,
    channel: Channel,
) -> Option<(f64, Vec<Vec<usize>>)> {
    let (_, _, w) = g.edges().next()?;
    if w <= 0.0 || g.edges().any(|(_, _, v)| (v - w).abs() > WEIGHT_TOL * w.abs().max(1.0)) {
        return None;
    }
    let n = g.n_vertices();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while c[r] != r {
            r = c[r];
        }
        c[v] = r;
        r
    }
    for (a, b, _) in g.edges() {
        let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
        comp[ra.max(rb)] = ra.min(rb);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut comp, v);
        groups.entry(r).or_default().push(v);
    }
    let groups: Vec<Vec<usize>> = groups.into_values().filter(|m| m.len() > 1).collect();
    for m in &groups {
        for (k, &a) in m.iter().enumerate() {
            for &b in &m[k + 1..] {
                if g.weight(a, b) == 0.0 && resource.coupling(channel, a, b) != 0.0 {
                    return None;
                }
            }
        }
    }
    Some((w, groups))
}

fn base_matchings(
    g: &WeightedGraph,
    strategy: &DecompositionStrategy,
    channel: Channel,
) -> Vec<Matching> {
    match strategy {
        DecompositionStrategy::Greedy => greedy_degree1(g),
        DecompositionStrategy::HamiltonPaths => complete_graph_matchings(g.n_vertices())
            .into_iter()
            .filter_map(|m| {
                let kept: Vec<_> = m.pairs().filter(|&(a, b)| g.weight(a, b) != 0.0).collect();
                (!kept.is_empty()).then(|| Matching::new(g.n_vertices(), kept).expect("subset"))
            })
            .collect(),
        DecompositionStrategy::Given { x, y } => match channel {
            Channel::X => x.clone(),
            Channel::Y => y.clone(),
        },
    }
}

type Rotations = BTreeMap<(usize, usize), (Option<Su2>, Option<Su2>)>;

fn channel_terms(
    g: &WeightedGraph,
    base: &[Matching],
    rotations: &Rotations,
) -> Result<Vec<ChannelTerm>, CompileError> {
    let d = weighted_decompose(g, base)?;
    Ok(d.terms
        .into_iter()
        .map(|t| {
            let links = t
                .matching
                .pairs()
                .map(|(i, j)| {
                    let (rot_i, rot_j) = rotations.get(&(i, j)).copied().unwrap_or((None, None));
                    Link { i, j, negate: t.negate.contains(&(i, j)), rot_i, rot_j }
                })
                .collect();
            ChannelTerm {
                c: t.coefficient,
                groups: t.matching.pairs().map(|(i, j)| vec![i, j]).collect(),
                links,
            }
        })
        .collect())
}

/// Channel terms for labels that need a basis rotation, split so that no
/// pair appears twice within one decomposition.
fn general_terms(
    target: &TargetSpec,
    resource: &ResourceHamiltonian,
) -> Result<(Vec<ChannelTerm>, Vec<ChannelTerm>), CompileError> {
    let n = target.n_qubits;
    let mut layers: Vec<(Channel, WeightedGraph, Rotations)> = Vec::new();
    for t in &target.terms {
        if t.ops[0].channel().is_some() && t.ops[0] == t.ops[1] {
            continue;
        }
        if t.strength == 0.0 {
            continue;
        }
        let channel = if resource.coupling(Channel::X, t.i, t.j) != 0.0 {
            Channel::X
        } else if resource.coupling(Channel::Y, t.i, t.j) != 0.0 {
            Channel::Y
        } else {
            return Err(CompileError::DivisionByZeroCoupling {
                i: t.i.min(t.j),
                j: t.i.max(t.j),
                channel: Channel::X,
            });
        };
        let (a, b, oa, ob) =
            if t.i < t.j { (t.i, t.j, t.ops[0], t.ops[1]) } else { (t.j, t.i, t.ops[1], t.ops[0]) };
        let rot = |o: OpLabel| {
            let r = Su2::mapping(channel.bloch(), o.bloch());
            (!r.is_identity()).then_some(r)
        };
        let g = t.strength / resource.coupling(channel, a, b);
        let slot = layers
            .iter_mut()
            .find(|(c, graph, _)| *c == channel && graph.weight(a, b) == 0.0);
        let (_, graph, rots) = match slot {
            Some(s) => s,
            None => {
                layers.push((channel, WeightedGraph::new(n), Rotations::new()));
                layers.last_mut().expect("just pushed")
            }
        };
        graph.add_edge(a, b, g)?;
        rots.insert((a, b), (rot(oa), rot(ob)));
    }
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (c, graph, rots) in layers {
        let terms = channel_terms(&graph, &greedy_degree1(&graph), &rots)?;
        match c {
            Channel::X => xs.extend(terms),
            Channel::Y => ys.extend(terms),
        }
    }
    Ok((xs, ys))
}

fn plain_terms(
    g: &WeightedGraph,
    resource: &ResourceHamiltonian,
    channel: Channel,
    options: &CompileOptions,
) -> Result<Vec<ChannelTerm>, CompileError> {
    if g.is_empty() {
        return Ok(Vec::new());
    }
    let shortcut = options.cutoff.is_none()
        && !matches!(options.strategy, DecompositionStrategy::Given { .. });
    if shortcut {
        if let Some((c, groups)) = uniform_clusters(g, resource, channel) {
            return Ok(vec![ChannelTerm { c, groups, links: Vec::new() }]);
        }
    }
    channel_terms(g, &base_matchings(g, &options.strategy, channel), &Rotations::new())
}

/// Pairs X and Y terms into blocks `(c, x term, y term)`.
fn merge(
    mut xs: Vec<ChannelTerm>,
    mut ys: Vec<ChannelTerm>,
) -> Vec<(f64, Option<ChannelTerm>, Option<ChannelTerm>)> {
    let mut out = Vec::new();
    let tol = |c: f64| c > WEIGHT_TOL;
    while !xs.is_empty() {
        let partner = ys.iter().position(|y| compatible(&xs[0], y));
        match partner {
            None => {
                let x = xs.remove(0);
                out.push((x.c, Some(x), None));
            }
            Some(k) => {
                let c = xs[0].c.min(ys[k].c);
                out.push((c, Some(xs[0].clone()), Some(ys[k].clone())));
                let (cx, cy) = (xs[0].c - c, ys[k].c - c);
                if tol(cy) {
                    ys[k].c = cy;
                } else {
                    ys.remove(k);
                }
                if tol(cx) {
                    xs[0].c = cx;
                } else {
                    xs.remove(0);
                }
            }
        }
    }
    out.extend(ys.into_iter().map(|y| (y.c, None, Some(y))));
    out
}

fn build_block(
    n: usize,
    c: f64,
    x: Option<&ChannelTerm>,
    y: Option<&ChannelTerm>,
    options: &CompileOptions,
) -> Result<Block, CompileError> {
    let groups = |t: Option<&ChannelTerm>| t.map(|t| t.groups.clone()).unwrap_or_default();
    let xi = assign::assign_groups(&groups(x), n, options.cutoff)?;
    let yi = assign::assign_groups(&groups(y), n, options.cutoff)?;
    let mut asg = crate::walsh::WalshAssignment::new(xi, yi)?;
    if options.dd_guard {
        asg = dd_guard(&asg);
    }
    let mut flip = vec![(false, false); n];
    let mut rot = vec![Su2::IDENTITY; n];
    for (t, ch) in [(x, Channel::X), (y, Channel::Y)] {
        for l in t.map(|t| t.links.as_slice()).unwrap_or(&[]) {
            if l.negate {
                match ch {
                    Channel::X => flip[l.i].0 = true,
                    Channel::Y => flip[l.i].1 = true,
                }
            }
            if let Some(r) = l.rot_i {
                rot[l.i] = r;
            }
            if let Some(r) = l.rot_j {
                rot[l.j] = r;
            }
        }
    }
    let post: Vec<Su2> = (0..n)
        .map(|q| {
            let f = match flip[q] {
                (false, false) => Su2::IDENTITY,
                (true, false) => Su2::Y,
                (false, true) => Su2::X,
                (true, true) => Su2::Z,
            };
            if rot[q].is_identity() {
                f
            } else {
                rot[q].compose(f)
            }
        })
        .collect();
    let n_int = asg.sequence_length() * options.trotter_order as usize;
    Ok(Block {
        c,
        x: asg.x,
        y: asg.y,
        interval_durations: schedule::equal_fractions(n_int),
        set_pre: post.iter().map(|g| g.inverse()).collect(),
        set_post: post,
    })
}

/// Compiles `target` for the given resource into a schedule whose cycle-averaged
/// toggling-frame Hamiltonian per unit target time equals the target.
pub fn compile(
    target: &TargetSpec,
    resource: &ResourceHamiltonian,
    options: &CompileOptions,
) -> Result<PulseSchedule, CompileError> {
    target.validate()?;
    resource.validate()?;
    let n = target.n_qubits;
    if n != resource.n_qubits {
        return Err(CompileError::SizeMismatch { target: n, resource: resource.n_qubits });
    }
    if options.trotter_order != 1 && options.trotter_order != 2 {
        return Err(CompileError::InvalidOption(format!(
            "trotter order {} is not 1 or 2",
            options.trotter_order
        )));
    }
    if let Some(l) = options.cutoff {
        if l == 0 {
            return Err(CompileError::InvalidOption("cutoff distance must be positive".into()));
        }
        for t in &target.terms {
            if t.i.abs_diff(t.j) > l && t.strength != 0.0 {
                return Err(CompileError::LinkBeyondCutoff { i: t.i, j: t.j, lambda: l });
            }
        }
    }
    let (gx, gy) = rescaling_graph(target, resource)?;
    let mut xs = plain_terms(&gx, resource, Channel::X, options)?;
    let mut ys = plain_terms(&gy, resource, Channel::Y, options)?;
    let (gxs, gys) = general_terms(target, resource)?;
    xs.extend(gxs);
    ys.extend(gys);
    let mut blocks = Vec::new();
    for (c, x, y) in merge(xs, ys) {
        blocks.push(build_block(n, c, x.as_ref(), y.as_ref(), options)?);
    }
    if blocks.is_empty() {
        blocks.push(build_block(n, 1.0, None, None, options)?);
    }
    let s = PulseSchedule {
        version: SCHEDULE_VERSION,
        n_qubits: n,
        trotter_order: options.trotter_order,
        blocks,
        sign_e: Vec::new(),
        fp_deformation: None,
    };
    s.validate()?;
    Ok(s)
}
