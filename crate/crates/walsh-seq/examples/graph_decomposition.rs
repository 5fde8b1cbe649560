//! Splitting a weighted coupling graph into uniformly weighted matchings.

use walsh_seq::graphdecomp::{greedy_degree1, hamilton_path_decompose, weighted_decompose, WeightedGraph};

fn main() {
    let g = WeightedGraph::from_edges(
        5,
        [(0, 1, 1.0), (1, 2, 2.5), (2, 3, -1.0), (3, 4, 1.0), (0, 4, 0.5), (1, 3, 1.5)],
    )
    .unwrap();
    let base = greedy_degree1(&g);
    println!("max degree {}, {} matchings", g.max_degree(), base.len());
    let d = weighted_decompose(&g, &base).unwrap();
    for t in &d.terms {
        let pairs: Vec<_> = t.matching.pairs().collect();
        println!("c = {:<5} pairs {:?} negated {:?}", t.coefficient, pairs, t.negate);
    }
    let r = d.reconstruct();
    assert!(g.edges().all(|(i, j, w)| (r.weight(i, j) - w).abs() < 1e-12));

    for (k, m) in hamilton_path_decompose(6).unwrap().iter().enumerate() {
        println!("K_6 part {k}: {:?}", m.pairs().collect::<Vec<_>>());
    }
}
