mod common;

use std::collections::BTreeSet;

use common::{graph, mode};
use dsp_core::graph::{build_sp_dag, load_graph, sssp, Mode};
use dsp_core::oracle::{bellman_ford, dag_paths, simple_paths, DEFAULT_LIMIT};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sssp_matches_bellman_ford(mode in mode(), n in 4usize..=10, seed: u64) {
        let g = graph(mode, n, seed);
        for s in 0..n {
            let fast = sssp(&g, s);
            let slow = bellman_ford(&g, s);
            prop_assert_eq!(fast.get(s), Some(0));
            for v in 0..n {
                prop_assert_eq!(fast.get(v), slow[v], "source {} vertex {}", s, v);
            }
        }
    }

    #[test]
    fn distances_are_tight_on_every_edge(mode in mode(), n in 4usize..=10, seed: u64) {
        let g = graph(mode, n, seed);
        for s in 0..n {
            let d = sssp(&g, s);
            for e in g.edges() {
                let mut ends = vec![(e.u, e.v)];
                if mode == Mode::Undirected {
                    ends.push((e.v, e.u));
                }
                for (a, b) in ends {
                    if let Some(da) = d.get(a) {
                        prop_assert!(d.get(b).is_some_and(|db| db <= da + e.weight as u128));
                    }
                }
            }
        }
    }

    #[test]
    fn sp_dag_paths_are_exactly_the_shortest_paths(mode in mode(), n in 4usize..=10, seed: u64) {
        let g = graph(mode, n, seed);
        for s in 0..n {
            let dag = build_sp_dag(&g, s);
            for v in 0..n {
                let Some(dv) = dag.dist().get(v) else {
                    prop_assert!(dag.inn(v).is_empty());
                    continue;
                };
                let shortest: BTreeSet<Vec<usize>> = simple_paths(&g, s, v, DEFAULT_LIMIT)
                    .unwrap()
                    .into_iter()
                    .filter(|p| g.path_weight(&p.vertices) == Some(dv))
                    .map(|p| p.vertices)
                    .collect();
                let in_dag: BTreeSet<Vec<usize>> = dag_paths(&dag, s, v, &|_| true, DEFAULT_LIMIT)
                    .unwrap()
                    .into_iter()
                    .map(|p| p.vertices)
                    .collect();
                prop_assert_eq!(in_dag, shortest, "source {} target {}", s, v);
            }
        }
    }

    #[test]
    fn sp_dag_order_is_topological(mode in mode(), n in 4usize..=10, seed: u64) {
        let g = graph(mode, n, seed);
        for s in 0..n {
            let dag = build_sp_dag(&g, s);
            let mut sorted = dag.order().to_vec();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, (0..n).collect::<Vec<_>>());
            for (u, v, e) in dag.arcs() {
                prop_assert!(dag.rank(u) < dag.rank(v), "back arc {}->{}", u, v);
                let edge = g.edge(e);
                prop_assert!((edge.u, edge.v) == (u, v) || (mode == Mode::Undirected && (edge.v, edge.u) == (u, v)));
            }
            for p in 0..n {
                for arc in dag.ranked_inn(p) {
                    prop_assert!((arc.rank as usize) < p);
                }
            }
        }
    }

    #[test]
    fn text_format_round_trips(mode in mode(), n in 4usize..=10, seed: u64) {
        let g = graph(mode, n, seed);
        let back = load_graph(&g.to_text()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.terminals(), g.terminals());
        prop_assert_eq!(back.mode(), g.mode());
    }
}
