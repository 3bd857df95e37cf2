//! Random instance generators for tests, self-tests and benchmarks.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Mode};

/// Erdős–Rényi style instance with `pairs` random terminal pairs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphParams {
    pub mode: Mode,
    pub n: usize,
    pub pairs: usize,
    pub edge_prob: f64,
    pub max_weight: u64,
}

impl GraphParams {
    pub fn new(mode: Mode, n: usize) -> Self {
        GraphParams { mode, n, pairs: 2, edge_prob: 0.4, max_weight: 5 }
    }

    pub fn pairs(self, pairs: usize) -> Self {
        GraphParams { pairs, ..self }
    }

    pub fn edge_prob(self, edge_prob: f64) -> Self {
        GraphParams { edge_prob, ..self }
    }

    fn check(&self) -> Result<()> {
        if self.n < 2 * self.pairs {
            return Err(Error::InvalidParameter(format!(
                "{} terminal pairs need n >= {}, got {}",
                self.pairs,
                2 * self.pairs,
                self.n
            )));
        }
        if !(0.0..=1.0).contains(&self.edge_prob) || self.max_weight == 0 {
            return Err(Error::InvalidParameter("edge_prob in [0, 1] and max_weight >= 1 required".into()));
        }
        Ok(())
    }
}

/// Each vertex pair gets an edge with probability `edge_prob`. DAGs orient
/// edges along a random permutation and their terminal pairs forward along
/// it. Resamples until weakly connected.
pub fn random_graph<R: Rng + ?Sized>(params: GraphParams, rng: &mut R) -> Result<Graph> {
    params.check()?;
    let n = params.n;
    loop {
        let mut rank: Vec<usize> = (0..n).collect();
        rank.shuffle(rng);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !rng.gen_bool(params.edge_prob) {
                    continue;
                }
                let (u, v) = if params.mode == Mode::Dag && rank[v] < rank[u] { (v, u) } else { (u, v) };
                edges.push(Edge { u, v, weight: rng.gen_range(1..=params.max_weight) });
            }
        }
        let chosen: Vec<usize> = rand::seq::index::sample(rng, n, 2 * params.pairs).into_vec();
        let terminals = chosen
            .chunks(2)
            .map(|pair| {
                let (s, t) = (pair[0], pair[1]);
                if params.mode == Mode::Dag && rank[t] < rank[s] {
                    (t, s)
                } else {
                    (s, t)
                }
            })
            .collect();
        let g = Graph::new(n, params.mode, edges, terminals)?;
        if g.is_weakly_connected() {
            return Ok(g);
        }
    }
}

/// Benchmark graph with about `m` edges on `max(m / 8, 8)` vertices: a
/// Hamiltonian path along a random permutation, so every later vertex is
/// reachable from every earlier one, plus random non-parallel shortcuts
/// among all but the last vertex. The last vertex is a leaf hanging off
/// the one before it, which is the first target, and is itself the second
/// target. Every second-pair path then meets the first target, so every
/// instance is a NO and a decision always runs all of its trials.
pub fn bench_graph<R: Rng + ?Sized>(mode: Mode, m: usize, rng: &mut R) -> Result<Graph> {
    let n = (m / 8).max(8);
    if m < n - 1 {
        return Err(Error::InvalidParameter(format!("m = {m} is below the spanning path size")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    let mut push = |a: usize, b: usize, rng: &mut R, edges: &mut Vec<Edge>| {
        let (lo, hi) = (a.min(b), a.max(b));
        if lo == hi || !seen.insert((order[lo], order[hi])) {
            return;
        }
        edges.push(Edge { u: order[lo], v: order[hi], weight: rng.gen_range(1..=100) });
    };
    for i in 1..n {
        push(i - 1, i, rng, &mut edges);
    }
    while edges.len() < m {
        let (a, b) = (rng.gen_range(0..n - 1), rng.gen_range(0..n - 1));
        push(a, b, rng, &mut edges);
    }
    let terminals = vec![(order[0], order[n - 2]), (order[1], order[n - 1])];
    Graph::new(n, mode, edges, terminals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::sssp;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_graphs_are_connected_and_seeded() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for mode in [Mode::Dag, Mode::Undirected] {
            for n in 4..=10 {
                let g = random_graph(GraphParams::new(mode, n), &mut rng).unwrap();
                assert!(g.is_weakly_connected());
                assert_eq!((g.n(), g.k(), g.mode()), (n, 2, mode));
                assert!(g.edges().iter().all(|e| (1..=5).contains(&e.weight)));
            }
        }
        let draw = |seed| {
            random_graph(GraphParams::new(Mode::Dag, 8), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap().to_text()
        };
        assert_eq!(draw(9), draw(9));
    }

    #[test]
    fn dag_terminals_point_forward() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_graph(GraphParams::new(Mode::Dag, 7), &mut rng).unwrap();
            assert!(g.terminals().iter().all(|&(s, t)| !sssp(&g, t).is_reachable(s)));
        }
    }

    #[test]
    fn too_few_vertices() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(random_graph(GraphParams::new(Mode::Dag, 3), &mut rng).is_err());
    }

    #[test]
    fn bench_graphs_have_requested_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for mode in [Mode::Dag, Mode::Undirected] {
            let g = bench_graph(mode, 4000, &mut rng).unwrap();
            assert_eq!((g.n(), g.m()), (500, 4000));
            for &(s, t) in g.terminals() {
                assert!(sssp(&g, s).is_reachable(t));
            }
        }
    }

    #[test]
    fn bench_graphs_are_no_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for mode in [Mode::Dag, Mode::Undirected] {
            let g = bench_graph(mode, 200, &mut rng).unwrap();
            assert!(!crate::oracle::brute_2dsp(&g, crate::oracle::DEFAULT_LIMIT).unwrap());
            let v = crate::dsp2::decide_2dsp(&g, 3, 0).unwrap();
            assert_eq!((v.answer, v.trials), (crate::dsp2::Answer::No, 3));
        }
    }
}
