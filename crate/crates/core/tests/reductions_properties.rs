use dsp_core::graph::sssp;
use dsp_core::reductions::{clique_to_kdsp, clique_to_pdp, covering_family, CliqueInstance};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn clique(k: usize, n: usize, p: f64, seed: u64) -> CliqueInstance {
    CliqueInstance::random(k, n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn kdsp_instances_meet_their_certificate(k in 2usize..=5, n in 1usize..=4, p in 0.0f64..=1.0, seed: u64) {
        let c = clique(k, n, p, seed);
        let inst = clique_to_kdsp(&c);
        prop_assert_eq!(inst.verify_certificate(), Ok(()));
        prop_assert!(inst.graph.n() <= 2 * k + k * (k - 1) * n * n);
        let length = ((k - 1) * n + 1) as u128;
        for (i, &(s, t)) in inst.graph.terminals().iter().enumerate() {
            prop_assert_eq!(sssp(&inst.graph, s).get(t), Some(length));
            for path in &inst.canonical_paths[i] {
                prop_assert_eq!(inst.graph.path_weight(path), Some(length));
            }
        }
    }

    /// Terminals plus gadgets, each gadget on fewer than `2k` nodes, fit in
    /// `2·2p + 2k²n`; the list-path interiors come on top and are covered by
    /// the certificate's own bound.
    #[test]
    fn pdp_instances_meet_their_certificate(k in 2usize..=5, n in 2usize..=4, p in 0.0f64..=1.0, seed: u64) {
        let c = clique(k, n, p, seed);
        let inst = clique_to_pdp(&c).unwrap();
        prop_assert_eq!(inst.verify_certificate(), Ok(()));
        let family = covering_family(k).unwrap();
        let pairs = inst.graph.k();
        prop_assert_eq!(pairs, k + k * k / 4);
        let gadget_nodes: usize = (1..=k).map(|i| 2 * n * family.occurrences(i)).sum();
        prop_assert!((1..=k).all(|i| 2 * family.occurrences(i) < 2 * k));
        prop_assert!(2 * pairs + gadget_nodes <= 2 * 2 * pairs + 2 * k * k * n);
        prop_assert!(inst.graph.n() >= 2 * pairs + gadget_nodes);
    }

    #[test]
    fn covering_families_validate(k in 2usize..=300) {
        let family = covering_family(k).unwrap();
        prop_assert_eq!(family.validate(), Ok(()));
        prop_assert_eq!(family.lists.len(), k * k / 4);
    }

    #[test]
    fn clique_text_round_trips(k in 1usize..=5, n in 1usize..=5, p in 0.0f64..=1.0, seed: u64) {
        let c = clique(k, n, p, seed);
        prop_assert_eq!(CliqueInstance::parse(&c.to_text()).unwrap(), c);
    }
}
