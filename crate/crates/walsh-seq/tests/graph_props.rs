use proptest::prelude::*;
use walsh_seq::graphdecomp::{
    complete_graph_matchings, greedy_degree1, hamilton_path_decompose, weighted_decompose,
    Matching, WeightedGraph,
};

fn graph_strategy() -> impl Strategy<Value = WeightedGraph> {
    (2usize..9).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let m = pairs.len();
        proptest::collection::vec(prop_oneof![Just(0.0), -3.0..3.0f64], m).prop_map(move |w| {
            let edges = pairs.iter().zip(&w).filter(|(_, w)| w.abs() > 1e-3).map(|(&(i, j), &w)| (i, j, w));
            WeightedGraph::from_edges(n, edges).unwrap()
        })
    })
}

fn covers_once(g: &WeightedGraph, ms: &[Matching]) -> bool {
    g.edges().all(|(i, j, _)| ms.iter().filter(|m| m.contains(i, j)).count() == 1)
}

#[test]
fn hamilton_paths_cover_complete_graphs() {
    for n in (2..=16).step_by(2) {
        let ms = hamilton_path_decompose(n).unwrap();
        assert!(ms.len() <= n);
        let mut count = vec![vec![0; n]; n];
        for m in &ms {
            for (i, j) in m.pairs() {
                count[i][j] += 1;
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(count[i][j], 1, "K_{n} edge ({i},{j})");
            }
        }
    }
    assert!(hamilton_path_decompose(5).is_err());
}

#[test]
fn odd_complete_graphs_are_covered() {
    for n in [3, 5, 7] {
        let ms = complete_graph_matchings(n);
        let k: usize = ms.iter().map(|m| m.len()).sum();
        assert_eq!(k, n * (n - 1) / 2);
    }
}

#[test]
fn matchings_reject_shared_vertices() {
    assert!(Matching::new(4, [(0, 1), (1, 2)]).is_err());
    assert!(Matching::new(4, [(0, 0)]).is_err());
    assert!(Matching::new(3, [(0, 3)]).is_err());
}

proptest! {
    #[test]
    fn greedy_reconstructs_the_graph(g in graph_strategy()) {
        let base = greedy_degree1(&g);
        prop_assert!(covers_once(&g, &base));
        let d = weighted_decompose(&g, &base).unwrap();
        let r = d.reconstruct();
        for i in 0..g.n_vertices() {
            for j in i + 1..g.n_vertices() {
                prop_assert!((r.weight(i, j) - g.weight(i, j)).abs() < 1e-12);
            }
        }
        for t in &d.terms {
            prop_assert!(t.coefficient > 0.0);
            let mut deg = vec![0; g.n_vertices()];
            for (i, j) in t.matching.pairs() {
                deg[i] += 1;
                deg[j] += 1;
            }
            prop_assert!(deg.iter().all(|&v| v <= 1));
        }
        // Weights that differ within a matching add extra terms, so the size bound is
        // only expected for uniform magnitudes.
        let uniform = g.edges().all(|(_, _, w)| (w.abs() - g.edges().next().unwrap().2.abs()).abs() < 1e-12);
        if uniform && !g.is_empty() {
            prop_assert!(d.terms.len() <= 2 * g.max_degree());
        }
    }

    #[test]
    fn complete_graph_decomposition_reconstructs(g in graph_strategy()) {
        let base = complete_graph_matchings(g.n_vertices());
        let d = weighted_decompose(&g, &base).unwrap();
        let r = d.reconstruct();
        for (i, j, w) in g.edges() {
            prop_assert!((r.weight(i, j) - w).abs() < 1e-12);
        }
        prop_assert_eq!(r.n_edges(), g.n_edges());
    }
}
