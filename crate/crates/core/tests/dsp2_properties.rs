mod common;

use common::{graph, mode};
use dsp_core::dsp2::{decide_2dsp, eval_fdisj, Assignment, Evaluator, HashedAssignment, TwoPairInstance};
use dsp_core::graph::Mode;
use dsp_core::oracle::{brute_2dsp, classify_pair, BruteForce, Family, DEFAULT_LIMIT};
use dsp_core::{FieldAssignment, Gf64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assignment(m: usize, seed: u64) -> FieldAssignment {
    Assignment::random(m, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn family_partitions_hold_at_every_assignment(mode in mode(), n in 4usize..=9, seed: u64, at: u64) {
        let g = graph(mode, n, seed);
        let inst = TwoPairInstance::new(&g).unwrap();
        let brute = BruteForce::new(&inst.scope(), DEFAULT_LIMIT).unwrap();
        let a = assignment(g.m(), at);
        let eval = |f| brute.eval(f, &a);
        prop_assert_eq!(eval(Family::AllStandard), eval(Family::Disjoint) + eval(Family::Intersecting));
        prop_assert_eq!(eval(Family::Intersecting), eval(Family::Agree) + eval(Family::Disagree));
    }

    #[test]
    fn classification_is_total_and_consistent(n in 4usize..=9, seed: u64) {
        let g = graph(Mode::Undirected, n, seed);
        let inst = TwoPairInstance::new(&g).unwrap();
        let brute = BruteForce::new(&inst.scope(), DEFAULT_LIMIT).unwrap();
        for (p1, p2, class) in brute.pairs() {
            prop_assert_eq!(classify_pair(&p1.vertices, &p2.vertices), class);
            prop_assert_eq!(class.is_intersecting(), p1.vertices.iter().any(|v| p2.contains(*v)));
        }
    }

    #[test]
    fn monomial_degree_stays_below_2n(mode in mode(), n in 4usize..=10, seed: u64) {
        let g = graph(mode, n, seed);
        let inst = TwoPairInstance::new(&g).unwrap();
        let brute = BruteForce::new(&inst.scope(), DEFAULT_LIMIT).unwrap();
        prop_assert!(brute.max_pair_degree() < 2 * n);
    }

    #[test]
    fn dag_inputs_have_no_mixed_terms(n in 4usize..=10, seed: u64, at: u64) {
        let g = graph(Mode::Dag, n, seed);
        let inst = TwoPairInstance::new(&g).unwrap();
        let b = Evaluator::new(inst.scope()).breakdown(&assignment(g.m(), at));
        prop_assert!(b.local.mixed.iter().all(|&h| h == Gf64::ZERO));
        prop_assert_eq!(b.fagree + b.fdis, b.fcap_dag);
        prop_assert_eq!(b.fcap, b.fcap_dag);
    }

    #[test]
    fn fast_and_exhaustive_values_agree(mode in mode(), n in 4usize..=9, seed: u64, at: u64) {
        let g = graph(mode, n, seed);
        let mismatches = dsp_core::selftest::identity_mismatches(&g, &assignment(g.m(), at)).unwrap();
        prop_assert!(mismatches.is_empty(), "{:?}", mismatches);
    }

    #[test]
    fn nonzero_disjoint_sum_implies_a_solution(mode in mode(), n in 4usize..=9, seed: u64, at: u64) {
        let g = graph(mode, n, seed);
        let inst = TwoPairInstance::new(&g).unwrap();
        let brute = BruteForce::new(&inst.scope(), DEFAULT_LIMIT).unwrap();
        if brute.eval(Family::Disjoint, &assignment(g.m(), at)) != Gf64::ZERO {
            prop_assert!(brute_2dsp(&g, DEFAULT_LIMIT).unwrap());
        }
    }

    #[test]
    fn yes_answers_are_never_wrong(mode in mode(), n in 4usize..=10, seed: u64, decide_seed: u64) {
        let g = graph(mode, n, seed);
        let v = decide_2dsp(&g, 1, decide_seed).unwrap();
        if v.answer.is_yes() {
            prop_assert!(brute_2dsp(&g, DEFAULT_LIMIT).unwrap());
        }
        prop_assert_eq!(decide_2dsp(&g, 1, decide_seed).unwrap(), v);
    }

    #[test]
    fn hashed_values_evaluate_like_stored_ones(mode in mode(), n in 4usize..=10, seed: u64, key: u64) {
        let g = graph(mode, n, seed);
        let hashed = HashedAssignment { key };
        let stored = hashed.materialize(g.m());
        prop_assert_eq!(eval_fdisj::<Gf64>(&g, &hashed).unwrap(), eval_fdisj(&g, &stored).unwrap());
    }
}
