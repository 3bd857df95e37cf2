use dsp_core::gen::{random_graph, GraphParams};
use dsp_core::graph::{Graph, Mode};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Dag), Just(Mode::Undirected)]
}

/// Seeded two-pair instance on `n` vertices.
pub fn graph(mode: Mode, n: usize, seed: u64) -> Graph {
    random_graph(GraphParams::new(mode, n), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}
