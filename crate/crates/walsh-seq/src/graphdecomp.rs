//! Weighted interaction graphs and their decomposition into matchings.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

/// Weights with magnitude at or below this are treated as absent.
pub const WEIGHT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} appears in two pairs of a matching")]
    NotAMatching(usize),
    #[error("hamilton path decomposition needs an even vertex count, got {0}")]
    OddVertexCount(usize),
    #[error("edge ({0}, {1}) is covered {2} times by the supplied matchings")]
    BadCover(usize, usize, usize),
    #[error("weight {0} is not finite")]
    NonFinite(f64),
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// Undirected graph with real edge weights; zero-weight edges are never stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightedGraph {
    n_vertices: usize,
    edges: BTreeMap<(usize, usize), f64>,
}

impl WeightedGraph {
    pub fn new(n_vertices: usize) -> Self {
        WeightedGraph { n_vertices, edges: BTreeMap::new() }
    }

    pub fn from_edges(
        n_vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self, GraphError> {
        let mut g = WeightedGraph::new(n_vertices);
        for (i, j, w) in edges {
            g.add_edge(i, j, w)?;
        }
        Ok(g)
    }

    /// Adds `w` to the weight of edge `(i, j)`.
    pub fn add_edge(&mut self, i: usize, j: usize, w: f64) -> Result<(), GraphError> {
        for v in [i, j] {
            if v >= self.n_vertices {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n_vertices });
            }
        }
        if i == j {
            return Err(GraphError::SelfLoop(i));
        }
        if !w.is_finite() {
            return Err(GraphError::NonFinite(w));
        }
        let key = ordered(i, j);
        let total = self.edges.get(&key).copied().unwrap_or(0.0) + w;
        if total.abs() <= WEIGHT_TOL {
            self.edges.remove(&key);
        } else {
            self.edges.insert(key, total);
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.edges.get(&ordered(i, j)).copied().unwrap_or(0.0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.keys().filter(|&&(i, j)| i == v || j == v).count()
    }

    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.n_vertices];
        for &(i, j) in self.edges.keys() {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }
}

/// Set of vertex-disjoint pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    n_vertices: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl Matching {
    pub fn new(
        n_vertices: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut used = vec![false; n_vertices];
        let mut set = BTreeSet::new();
        for (i, j) in pairs {
            for v in [i, j] {
                if v >= n_vertices {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n: n_vertices });
                }
            }
            if i == j {
                return Err(GraphError::SelfLoop(i));
            }
            for v in [i, j] {
                if used[v] {
                    return Err(GraphError::NotAMatching(v));
                }
                used[v] = true;
            }
            set.insert(ordered(i, j));
        }
        Ok(Matching { n_vertices, pairs: set })
    }

    pub fn empty(n_vertices: usize) -> Self {
        Matching { n_vertices, pairs: BTreeSet::new() }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&ordered(i, j))
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(i, j)| {
            if i == v {
                Some(j)
            } else if j == v {
                Some(i)
            } else {
                None
            }
        })
    }
}

/// Greedy edge decomposition into matchings: repeatedly pick the highest-degree
/// vertex and pair it with its highest-degree neighbour (ties to the lowest index).
pub fn greedy_degree1(graph: &WeightedGraph) -> Vec<Matching> {
    let n = graph.n_vertices();
    let mut remaining: BTreeSet<(usize, usize)> = graph.edges.keys().copied().collect();
    let mut out = Vec::new();
    while !remaining.is_empty() {
        let mut alive = vec![true; n];
        let mut pairs = Vec::new();
        loop {
            let mut deg = vec![0usize; n];
            for &(i, j) in &remaining {
                if alive[i] && alive[j] {
                    deg[i] += 1;
                    deg[j] += 1;
                }
            }
            let Some(i) = argmax_lowest(&deg, |_| true) else { break };
            let j = argmax_lowest(&deg, |v| {
                alive[v] && v != i && remaining.contains(&ordered(i, v))
            })
            .expect("vertex with positive degree has a live neighbour");
            pairs.push(ordered(i, j));
            alive[i] = false;
            alive[j] = false;
        }
        for p in &pairs {
            remaining.remove(p);
        }
        out.push(Matching::new(n, pairs).expect("greedy pairs are disjoint"));
    }
    out
}

fn argmax_lowest(deg: &[usize], ok: impl Fn(usize) -> bool) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (v, &d) in deg.iter().enumerate() {
        if d == 0 || !ok(v) {
            continue;
        }
        if best.is_none_or(|b| d > deg[b]) {
            best = Some(v);
        }
    }
    best
}

/// Splits the complete graph `K_n` (even `n`) into `n/2` Hamilton paths and each
/// path into its odd and even links, giving `n` matchings (empty ones dropped).
pub fn hamilton_path_decompose(n: usize) -> Result<Vec<Matching>, GraphError> {
    if n % 2 == 1 {
        return Err(GraphError::OddVertexCount(n));
    }
    let m = n / 2;
    let mut out = Vec::new();
    for q in 0..m {
        let mut path = vec![q];
        for step in 1..n {
            let offset = step.div_ceil(2) as isize;
            let v = if step % 2 == 1 { q as isize + offset } else { q as isize - offset };
            path.push(v.rem_euclid(n as isize) as usize);
        }
        let links: Vec<(usize, usize)> = path.windows(2).map(|w| (w[0], w[1])).collect();
        let odd = links.iter().copied().step_by(2);
        let even = links.iter().copied().skip(1).step_by(2);
        for part in [Matching::new(n, odd), Matching::new(n, even)] {
            let part = part.expect("alternate path links are disjoint");
            if !part.is_empty() {
                out.push(part);
            }
        }
    }
    Ok(out)
}

/// Matchings covering `K_n` for any `n`; odd `n` is padded with a phantom vertex.
pub fn complete_graph_matchings(n: usize) -> Vec<Matching> {
    if n < 2 {
        return Vec::new();
    }
    let padded = n + n % 2;
    hamilton_path_decompose(padded)
        .expect("padded count is even")
        .into_iter()
        .filter_map(|m| {
            let kept: Vec<_> = m.pairs().filter(|&(i, j)| i < n && j < n).collect();
            (!kept.is_empty()).then(|| Matching::new(n, kept).expect("subset of a matching"))
        })
        .collect()
}

/// One term `c_q · Σ_{(i,j)∈M_q} ±1` of a weighted decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompTerm {
    pub coefficient: f64,
    pub matching: Matching,
    /// Pairs of `matching` whose weight is negative.
    pub negate: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDecomposition {
    pub n_vertices: usize,
    pub terms: Vec<DecompTerm>,
}

impl WeightedDecomposition {
    pub fn reconstruct(&self) -> WeightedGraph {
        let mut g = WeightedGraph::new(self.n_vertices);
        for t in &self.terms {
            for (i, j) in t.matching.pairs() {
                let s = if t.negate.contains(&(i, j)) { -1.0 } else { 1.0 };
                g.add_edge(i, j, s * t.coefficient).expect("pairs are in range");
            }
        }
        g
    }
}

/// Peels each base matching into uniform-magnitude terms, smallest magnitude first.
/// Every edge of `graph` must lie in exactly one base matching.
pub fn weighted_decompose(
    graph: &WeightedGraph,
    base: &[Matching],
) -> Result<WeightedDecomposition, GraphError> {
    let mut cover: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for m in base {
        for p in m.pairs() {
            if graph.weight(p.0, p.1) != 0.0 {
                *cover.entry(p).or_default() += 1;
            }
        }
    }
    for (i, j, _) in graph.edges() {
        let c = cover.get(&(i, j)).copied().unwrap_or(0);
        if c != 1 {
            return Err(GraphError::BadCover(i, j, c));
        }
    }
    let n = graph.n_vertices();
    let mut terms = Vec::new();
    for m in base {
        let mut edges: Vec<((usize, usize), f64)> = m
            .pairs()
            .map(|(i, j)| ((i, j), graph.weight(i, j)))
            .filter(|(_, w)| *w != 0.0)
            .collect();
        edges.sort_by(|a, b| a.1.abs().total_cmp(&b.1.abs()).then(a.0.cmp(&b.0)));
        let mut level = 0.0;
        let mut start = 0;
        while start < edges.len() {
            let next = edges[start].1.abs();
            if next - level > WEIGHT_TOL {
                let live = &edges[start..];
                terms.push(DecompTerm {
                    coefficient: next - level,
                    matching: Matching::new(n, live.iter().map(|e| e.0)).expect("subset"),
                    negate: live.iter().filter(|e| e.1 < 0.0).map(|e| e.0).collect(),
                });
                level = next;
            }
            start += 1;
        }
    }
    Ok(WeightedDecomposition { n_vertices: n, terms })
}
