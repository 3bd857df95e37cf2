use std::collections::BTreeSet;

use dsp_core::gen::{random_graph, GraphParams};
use dsp_core::graph::{Graph, Mode};
use dsp_core::kedsp::{decide_kedsp, reduce_edsp_to_dsp, verify_edge_disjoint, KedspOptions, ProductGraph};
use dsp_core::oracle::{brute_kedsp, DEFAULT_LIMIT};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dag(n: usize, k: usize, seed: u64) -> Graph {
    random_graph(GraphParams::new(Mode::Dag, n).pairs(k), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

/// Every tuple over `n` vertices in `k` coordinates.
fn all_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n.pow(k as u32))
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let c = code % n;
                    code /= n;
                    c
                })
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Successors against a filter over all tuples. `I` is the set of
    /// unfinished coordinates earliest in the graph's topological order.
    #[test]
    fn successors_match_the_exhaustive_filter(seed: u64) {
        let (n, k) = (7, 2);
        let g = dag(n, k, seed);
        let product = ProductGraph::new(&g).unwrap();
        let rank = g.topo_ranks().unwrap();
        let targets: Vec<usize> = g.terminals().iter().map(|&(_, t)| t).collect();
        let dags = product.dags();
        for v in all_tuples(n, k) {
            if (0..k).any(|i| !dags[i].dist().is_reachable(v[i])) {
                continue;
            }
            let active: Vec<usize> = (0..k).filter(|&i| v[i] != targets[i]).collect();
            let early = active.iter().map(|&i| rank[v[i]]).min();
            let movers: Vec<usize> = active.iter().copied().filter(|&i| Some(rank[v[i]]) == early).collect();
            let expected: BTreeSet<Vec<usize>> = all_tuples(n, k)
                .into_iter()
                .filter(|w| {
                    !movers.is_empty()
                        && movers.iter().all(|&i| dags[i].has_arc(v[i], w[i]))
                        && movers.iter().enumerate().all(|(x, &i)| movers[..x].iter().all(|&j| w[i] != w[j]))
                        && (0..k).filter(|i| !movers.contains(i)).all(|j| w[j] == v[j])
                })
                .collect();
            let got: BTreeSet<Vec<usize>> = product.successors(&v).into_iter().collect();
            prop_assert_eq!(&got, &expected, "tuple {:?}", v);
            for w in &got {
                for i in 0..k {
                    let (before, after) = (dags[i].dist().get(v[i]), dags[i].dist().get(w[i]));
                    prop_assert!(after >= before);
                    if movers.contains(&i) {
                        prop_assert!(after > before);
                    }
                }
            }
        }
    }

    #[test]
    fn search_stays_within_the_edge_bound(n in 6usize..=8, k in 2usize..=3, seed: u64) {
        let g = dag(n, k, seed);
        let out = decide_kedsp(&g, k, KedspOptions::default()).unwrap();
        let bound = k * g.m() * n.pow(k as u32 - 1);
        prop_assert!(out.stats.product_edges <= bound);
        prop_assert!(out.stats.visited <= n.pow(k as u32));
        prop_assert_eq!(out.found, brute_kedsp(&g, DEFAULT_LIMIT).unwrap());
        if let Some(paths) = &out.paths {
            prop_assert!(verify_edge_disjoint(&g, paths));
        }
    }

    #[test]
    fn edsp_reduction_has_the_stated_size(mode in prop_oneof![Just(Mode::Dag), Just(Mode::Undirected)], n in 4usize..=9, seed: u64) {
        let g = random_graph(GraphParams::new(mode, n), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let h = reduce_edsp_to_dsp(&g);
        let (m, k) = (g.m(), g.k());
        prop_assert_eq!((h.n(), h.m(), h.k()), (m + k * (n + 2), 2 * k * (m + 1), k));
    }
}
