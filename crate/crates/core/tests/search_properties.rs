mod common;

use std::collections::HashSet;

use common::{graph, mode};
use dsp_core::dsp2::{Assignment, Evaluator, TwoPairInstance};
use dsp_core::gen::bench_graph;
use dsp_core::graph::Mode;
use dsp_core::oracle::{brute_2dsp, BruteForce, Family, PairClass, DEFAULT_LIMIT};
use dsp_core::search::{build_circuit, eval_all_partials, find_2dsp, verify_solution};
use dsp_core::{FieldAssignment, Gf64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn search_finds_a_verified_pair_exactly_on_yes(mode in mode(), n in 4usize..=9, seed: u64, search_seed: u64) {
        let g = graph(mode, n, seed);
        let found = find_2dsp(&g, &mut ChaCha8Rng::seed_from_u64(search_seed)).unwrap();
        prop_assert_eq!(found.is_some(), brute_2dsp(&g, DEFAULT_LIMIT).unwrap());
        if let Some((p1, p2)) = found {
            prop_assert!(verify_solution(&g, &p1, &p2));
        }
    }

    #[test]
    fn nonzero_partials_mark_solution_edges(mode in mode(), n in 4usize..=9, seed: u64, at: u64) {
        let g = graph(mode, n, seed);
        let inst = TwoPairInstance::new(&g).unwrap();
        let brute = BruteForce::new(&inst.scope(), DEFAULT_LIMIT).unwrap();
        let on_solution: HashSet<usize> = brute
            .pairs()
            .filter(|(_, _, class)| *class == PairClass::Disjoint)
            .flat_map(|(p1, p2, _)| p1.edges.iter().chain(&p2.edges).copied().collect::<Vec<_>>())
            .collect();
        let a: FieldAssignment = Assignment::random(g.m(), &mut ChaCha8Rng::seed_from_u64(at));
        let grad = eval_all_partials(&build_circuit(&g).unwrap(), &a);
        for (e, d) in grad.partials.iter().enumerate() {
            if *d != Gf64::ZERO {
                prop_assert!(on_solution.contains(&e), "edge {} has a nonzero partial", e);
            }
        }
    }

    /// Scopes as the search builds them: first source moved forward, some vertices dropped.
    #[test]
    fn restricted_scopes_keep_the_identities(mode in mode(), n in 4usize..=9, seed: u64, cut: u64) {
        let g = graph(mode, n, seed);
        let inst = TwoPairInstance::new(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(cut);
        let mut scope = inst.scope();
        let [t1, t2] = inst.targets();
        let mut head = scope.sources[0];
        if let Some(step) = inst.dags()[0].out(head).first() {
            if step.vertex() != t1 && step.vertex() != t2 && step.vertex() != scope.sources[1] {
                head = step.vertex();
            }
        }
        let keep = [head, scope.sources[1], t1, t2];
        let alive: Vec<bool> = (0..n).map(|v| keep.contains(&v) || rng.gen_bool(0.7)).collect();
        scope.sources[0] = head;
        scope.alive = Some(&alive);

        let a: FieldAssignment = Assignment::random(g.m(), &mut rng);
        let ev = Evaluator::new(scope);
        let b = ev.breakdown(&a);
        let brute = BruteForce::new(&scope, DEFAULT_LIMIT).unwrap();
        prop_assert_eq!(ev.fdisj(&a), b.fdisj);
        prop_assert_eq!(b.all_pairs, brute.eval(Family::AllStandard, &a));
        prop_assert_eq!(b.fcap, brute.eval(Family::Intersecting, &a));
        prop_assert_eq!(b.fdisj, brute.eval(Family::Disjoint, &a));
    }
}

#[test]
fn circuit_size_grows_linearly() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for mode in [Mode::Dag, Mode::Undirected] {
        for m in [1_000, 4_000, 16_000] {
            let small = build_circuit(&bench_graph(mode, m, &mut rng).unwrap()).unwrap().size();
            let large = build_circuit(&bench_graph(mode, 2 * m, &mut rng).unwrap()).unwrap().size();
            let ratio = large as f64 / small as f64;
            assert!(ratio <= 2.5, "{mode} m={m}: {small} -> {large} gates");
        }
    }
}
