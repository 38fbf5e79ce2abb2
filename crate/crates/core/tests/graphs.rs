use proptest::prelude::*;
use twochoice_core::topology::{make_erdos_renyi, make_random_regular};
use twochoice_core::{GraphKind, GraphTopology, TopologyError};

fn assert_simple_undirected(g: &GraphTopology) {
    let mut half_edges = 0;
    for u in 0..g.n() {
        let nb = g.neighbors(u);
        assert!(nb.windows(2).all(|w| w[0] < w[1]), "node {u}: unsorted or repeated");
        for &v in nb {
            assert_ne!(v as usize, u, "self-loop at {u}");
            assert!(g.has_edge(v as usize, u), "edge {u}-{v} not symmetric");
        }
        half_edges += nb.len();
    }
    assert_eq!(half_edges, 2 * g.edge_count());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn regular_graphs_are_simple_and_regular(n in 2usize..300, d in 1usize..12, seed in any::<u64>()) {
        match make_random_regular(n, d, seed) {
            Ok(g) => {
                assert_simple_undirected(&g);
                prop_assert!((0..n).all(|u| g.degree(u) == d));
                prop_assert_eq!(g.edge_count(), n * d / 2);
                prop_assert_eq!(g.kind(), GraphKind::RandomRegular { degree: d });
            }
            Err(TopologyError::Infeasible { .. }) => prop_assert!(d >= n || (n * d) % 2 == 1),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn er_graphs_are_simple(n in 1usize..200, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = make_erdos_renyi(n, p, seed).unwrap();
        assert_simple_undirected(&g);
        prop_assert_eq!(g.seed(), Some(seed));
    }

    #[test]
    fn graphs_are_reproducible(seed in any::<u64>()) {
        let a = make_random_regular(60, 4, seed).unwrap();
        let b = make_random_regular(60, 4, seed).unwrap();
        prop_assert_eq!(a, b);
        let a = make_erdos_renyi(60, 0.1, seed).unwrap();
        let b = make_erdos_renyi(60, 0.1, seed).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn er_edge_count_matches_binomial_mean() {
    let n = 1000usize;
    let p = (n as f64).ln() / n as f64;
    let pairs = (n * (n - 1) / 2) as f64;
    let seeds = 200;
    let counts: Vec<f64> = (0..seeds)
        .map(|s| make_erdos_renyi(n, p, s).unwrap().edge_count() as f64)
        .collect();
    let mean = counts.iter().sum::<f64>() / seeds as f64;
    let expected = pairs * p;
    let sigma = (pairs * p * (1.0 - p) / seeds as f64).sqrt();
    assert!((expected - 3450.4).abs() < 0.1);
    assert!((mean - expected).abs() < 4.0 * sigma, "{mean} vs {expected} (sigma {sigma})");
}

#[test]
fn regular_pairs_are_spread_evenly() {
    // Each of the C(n,2) pairs is equally likely to be an edge, with
    // probability d/(n-1).
    let (n, d, graphs) = (12usize, 3usize, 4000u64);
    let mut hits = vec![0u32; n * n];
    for seed in 0..graphs {
        for (u, v) in make_random_regular(n, d, seed).unwrap().edges() {
            hits[u * n + v] += 1;
        }
    }
    let q = d as f64 / (n - 1) as f64;
    let expected = graphs as f64 * q;
    let sigma = (graphs as f64 * q * (1.0 - q)).sqrt();
    for u in 0..n {
        for v in u + 1..n {
            let h = hits[u * n + v] as f64;
            assert!((h - expected).abs() < 5.0 * sigma, "pair {u}-{v}: {h} vs {expected}");
        }
    }
}
