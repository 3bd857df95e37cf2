//! Edge-disjoint shortest paths for `k` pairs in a DAG via breadth-first
//! search over tuples of vertices, plus the reductions between disjointness
//! variants.
//!
//! A tuple advances only its earliest coordinates in a fixed topological
//! order, all at once and to pairwise distinct successors. Coordinates that
//! already sit on their target take no part in "earliest": otherwise a
//! finished coordinate could be the earliest one and be forced past its
//! target.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build_sp_dags, sssp, Edge, Graph, Mode, ShortestPathDag};

#[derive(Clone, Copy, Debug)]
pub struct KedspOptions {
    pub max_k: usize,
    /// Upper limit on `n^k`, the size of the implicit tuple graph.
    pub max_product_nodes: u128,
}

impl Default for KedspOptions {
    fn default() -> Self {
        KedspOptions { max_k: 4, max_product_nodes: 100_000_000 }
    }
}

/// The implicit tuple graph of a DAG with `k` terminal pairs.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    dags: Vec<ShortestPathDag>,
    rank: Vec<usize>,
    sources: Vec<usize>,
    targets: Vec<usize>,
    n: usize,
}

impl ProductGraph {
    /// Uses the graph's own topological order.
    pub fn new(g: &Graph) -> Result<Self> {
        let order = g.topo_order().ok_or(Error::WrongMode { expected: "a DAG" })?.to_vec();
        Self::with_order(g, &order)
    }

    /// `order` must be a topological order of `g`.
    pub fn with_order(g: &Graph, order: &[usize]) -> Result<Self> {
        if g.mode() != Mode::Dag {
            return Err(Error::WrongMode { expected: "a DAG" });
        }
        let mut rank = vec![0; g.n()];
        for (pos, &v) in order.iter().enumerate() {
            rank[v] = pos;
        }
        Ok(ProductGraph {
            dags: build_sp_dags(g, &g.terminals().iter().map(|&(s, _)| s).collect::<Vec<_>>()),
            rank,
            sources: g.terminals().iter().map(|&(s, _)| s).collect(),
            targets: g.terminals().iter().map(|&(_, t)| t).collect(),
            n: g.n(),
        })
    }

    pub fn k(&self) -> usize {
        self.sources.len()
    }

    pub fn dags(&self) -> &[ShortestPathDag] {
        &self.dags
    }

    /// Coordinates not yet at their target whose vertex comes earliest.
    pub fn earliest(&self, coords: &[usize]) -> Vec<usize> {
        let active = || (0..coords.len()).filter(|&i| coords[i] != self.targets[i]);
        let Some(min) = active().map(|i| self.rank[coords[i]]).min() else {
            return Vec::new();
        };
        active().filter(|&i| self.rank[coords[i]] == min).collect()
    }

    /// Move every earliest coordinate `i` along an arc of `G_i`, to pairwise
    /// distinct vertices, keeping the others.
    pub fn successors(&self, coords: &[usize]) -> Vec<Vec<usize>> {
        let movers = self.earliest(coords);
        let mut out = Vec::new();
        let mut next = coords.to_vec();
        self.assign(&movers, 0, &mut next, &mut out);
        out
    }

    fn assign(&self, movers: &[usize], depth: usize, next: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(&i) = movers.get(depth) else {
            if !movers.is_empty() {
                out.push(next.clone());
            }
            return;
        };
        let from = next[i];
        for a in self.dags[i].out(from) {
            if movers[..depth].iter().any(|&j| next[j] == a.vertex()) {
                continue;
            }
            next[i] = a.vertex();
            self.assign(movers, depth + 1, next, out);
        }
        next[i] = from;
    }
}

/// Successors of one tuple under the three edge conditions.
pub fn product_successors(coords: &[usize], product: &ProductGraph) -> Vec<Vec<usize>> {
    product.successors(coords)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KedspStats {
    pub visited: usize,
    /// Sum of successor-list lengths over expanded tuples.
    pub product_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KedspOutcome {
    pub found: bool,
    pub paths: Option<Vec<Vec<usize>>>,
    pub stats: KedspStats,
}

enum Visited {
    Packed { n: u64, map: HashMap<u64, usize> },
    Wide(HashMap<Vec<usize>, usize>),
}

impl Visited {
    fn new(n: usize, k: usize) -> Self {
        match (n as u64).checked_pow(k as u32) {
            Some(_) => Visited::Packed { n: n as u64, map: HashMap::new() },
            None => Visited::Wide(HashMap::new()),
        }
    }

    /// Record `coords` under `index`; false if already present.
    fn insert(&mut self, coords: &[usize], index: usize) -> bool {
        match self {
            Visited::Packed { n, map } => {
                let key = coords.iter().rev().fold(0u64, |acc, &c| acc * *n + c as u64);
                match map.entry(key) {
                    Entry::Occupied(_) => false,
                    Entry::Vacant(slot) => {
                        slot.insert(index);
                        true
                    }
                }
            }
            Visited::Wide(map) => match map.entry(coords.to_vec()) {
                Entry::Occupied(_) => false,
                Entry::Vacant(slot) => {
                    slot.insert(index);
                    true
                }
            },
        }
    }
}

/// Decide k-EDSP on a DAG with `k` terminal pairs and recover the paths.
pub fn decide_kedsp(g: &Graph, k: usize, options: KedspOptions) -> Result<KedspOutcome> {
    let product = ProductGraph::new(g)?;
    search_product(g, k, &product, options)
}

/// Breadth-first search from the source tuple to the target tuple.
pub fn search_product(g: &Graph, k: usize, product: &ProductGraph, options: KedspOptions) -> Result<KedspOutcome> {
    if k != g.k() {
        return Err(Error::TerminalCount { expected: k.to_string(), found: g.k() });
    }
    if k == 0 || k > options.max_k {
        return Err(Error::ProductTooLarge { reason: format!("k = {k} outside 1..={}", options.max_k) });
    }
    let size = (g.n() as u128).checked_pow(k as u32);
    if size.is_none_or(|s| s > options.max_product_nodes) {
        return Err(Error::ProductTooLarge {
            reason: format!("n^k = {}^{k} exceeds {}", g.n(), options.max_product_nodes),
        });
    }

    let mut stats = KedspStats::default();
    let not_found = |stats| KedspOutcome { found: false, paths: None, stats };
    if (0..k).any(|i| !product.dags[i].dist().is_reachable(product.targets[i])) {
        return Ok(not_found(stats));
    }

    let mut coords: Vec<usize> = product.sources.clone();
    let mut parent = vec![usize::MAX];
    let mut visited = Visited::new(product.n, k);
    visited.insert(&product.sources, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        stats.visited += 1;
        let node = coords[idx * k..(idx + 1) * k].to_vec();
        if node == product.targets {
            let paths = unwind(&coords, &parent, idx, k);
            return Ok(KedspOutcome { found: true, paths: Some(paths), stats });
        }
        let succ = product.successors(&node);
        stats.product_edges += succ.len();
        for w in succ {
            let next = parent.len();
            if visited.insert(&w, next) {
                coords.extend_from_slice(&w);
                parent.push(idx);
                queue.push_back(next);
            }
        }
    }
    Ok(not_found(stats))
}

/// Read each coordinate's changes along the tuple path.
fn unwind(coords: &[usize], parent: &[usize], last: usize, k: usize) -> Vec<Vec<usize>> {
    let mut chain = vec![last];
    while parent[*chain.last().unwrap()] != usize::MAX {
        chain.push(parent[*chain.last().unwrap()]);
    }
    chain.reverse();
    let at = |idx: usize| &coords[idx * k..(idx + 1) * k];
    let mut paths: Vec<Vec<usize>> = at(chain[0]).iter().map(|&s| vec![s]).collect();
    for step in chain.windows(2) {
        let (before, after) = (at(step[0]), at(step[1]));
        for i in 0..k {
            if after[i] != before[i] {
                paths[i].push(after[i]);
            }
        }
    }
    paths
}

/// Every path joins its terminal pair at shortest distance and no edge is used twice.
pub fn verify_edge_disjoint(g: &Graph, paths: &[Vec<usize>]) -> bool {
    if paths.len() != g.k() {
        return false;
    }
    let mut used = vec![false; g.m()];
    for (p, &(s, t)) in paths.iter().zip(g.terminals()) {
        if p.first() != Some(&s) || p.last() != Some(&t) {
            return false;
        }
        let Some(edges) = g.path_edges(p) else { return false };
        if g.path_weight(p) != sssp(g, s).get(t) {
            return false;
        }
        for e in edges {
            if used[e] {
                return false;
            }
            used[e] = true;
        }
    }
    true
}

/// Vertex copies `i·n + v`, one node `k·n + e` per edge shared by all copies,
/// then new sources and targets. Copy `i` gets `v_i - x_e - w_i` halves of
/// weight `ℓ(e)` each, and only its own terminals attach, with weight 1.
pub fn reduce_edsp_to_dsp(g: &Graph) -> Graph {
    let (n, m, k) = (g.n(), g.m(), g.k());
    let edge_node = |e: usize| k * n + e;
    let source = |i: usize| k * n + m + i;
    let target = |i: usize| k * n + m + k + i;
    let mut edges = Vec::with_capacity(2 * k * (m + 1));
    for i in 0..k {
        for (id, e) in g.edges().iter().enumerate() {
            edges.push(Edge { u: i * n + e.u, v: edge_node(id), weight: e.weight });
            edges.push(Edge { u: edge_node(id), v: i * n + e.v, weight: e.weight });
        }
    }
    for (i, &(s, t)) in g.terminals().iter().enumerate() {
        edges.push(Edge { u: source(i), v: i * n + s, weight: 1 });
        edges.push(Edge { u: i * n + t, v: target(i), weight: 1 });
    }
    let terminals = (0..k).map(|i| (source(i), target(i))).collect();
    Graph::new(m + k * (n + 2), g.mode(), edges, terminals).expect("split graph inherits validity")
}

/// Reweight the DAG so that edge `(u, v)` costs `pos(v) - pos(u)` in its
/// topological order; then every path is a shortest path.
pub fn reduce_dp_to_dsp(g: &Graph) -> Result<Graph> {
    let order = g.topo_order().ok_or(Error::WrongMode { expected: "a DAG" })?;
    let mut pos = vec![0u64; g.n()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p as u64;
    }
    let edges = g.edges().iter().map(|e| Edge { weight: pos[e.v] - pos[e.u], ..*e }).collect();
    Graph::new(g.n(), Mode::Dag, edges, g.terminals().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cross, para};
    use crate::graph::{topological_order, TieBreak};

    #[test]
    fn cross_meets_at_v() {
        let g = cross();
        let product = ProductGraph::new(&g).unwrap();
        let mut succ = product.successors(&[2, 2]);
        succ.sort();
        assert_eq!(succ, vec![vec![3, 4], vec![4, 3]]);
        let out = decide_kedsp(&g, 2, KedspOptions::default()).unwrap();
        assert_eq!(out.paths, Some(vec![vec![0, 2, 3], vec![1, 2, 4]]));
        assert!(verify_edge_disjoint(&g, out.paths.as_ref().unwrap()));
    }

    #[test]
    fn finished_coordinates_stay_put() {
        // s1 -> t1 -> s2 -> x -> t2: once the first coordinate reaches t1 it
        // precedes s2 in every order and must not be moved again.
        let g = Graph::new(
            4,
            Mode::Dag,
            vec![Edge { u: 0, v: 1, weight: 1 }, Edge { u: 1, v: 2, weight: 1 }, Edge { u: 2, v: 3, weight: 1 }],
            vec![(0, 1), (2, 3)],
        )
        .unwrap();
        let out = decide_kedsp(&g, 2, KedspOptions::default()).unwrap();
        assert_eq!(out.paths, Some(vec![vec![0, 1], vec![2, 3]]));
    }

    #[test]
    fn singleton_movers_step_along_their_dag() {
        let g = para();
        let product = ProductGraph::new(&g).unwrap();
        assert_eq!(product.earliest(&[0, 3]), vec![0]);
        assert_eq!(product.successors(&[0, 3]), vec![vec![1, 3]]);
        assert!(product.successors(&[2, 5]).is_empty());
    }

    #[test]
    fn guards() {
        let g = cross();
        assert!(matches!(decide_kedsp(&g, 3, KedspOptions::default()), Err(Error::TerminalCount { .. })));
        let tight = KedspOptions { max_product_nodes: 10, ..KedspOptions::default() };
        assert!(matches!(decide_kedsp(&g, 2, tight), Err(Error::ProductTooLarge { .. })));
        assert!(matches!(
            decide_kedsp(&crate::fixtures::share(), 2, KedspOptions::default()),
            Err(Error::WrongMode { .. })
        ));
    }

    #[test]
    fn other_topological_order_agrees() {
        let g = cross();
        let order = topological_order(&g, TieBreak::LargestId).unwrap();
        let product = ProductGraph::with_order(&g, &order).unwrap();
        assert!(search_product(&g, 2, &product, KedspOptions::default()).unwrap().found);
    }

    #[test]
    fn split_sizes() {
        let g = cross();
        let split = reduce_edsp_to_dsp(&g);
        assert_eq!((split.n(), split.m()), (18, 20));
        let single = Graph::new(2, Mode::Dag, vec![Edge { u: 0, v: 1, weight: 3 }], vec![(0, 1)]).unwrap();
        let split = reduce_edsp_to_dsp(&single);
        assert_eq!(crate::oracle::find_kdsp(&split, 10).unwrap().map(|p| p.len()), Some(1));
    }

    #[test]
    fn positional_weights_telescope() {
        let g = cross();
        let w = reduce_dp_to_dsp(&g).unwrap();
        let order = g.topo_order().unwrap();
        let pos = |v: usize| order.iter().position(|&x| x == v).unwrap() as u128;
        assert_eq!(w.path_weight(&[0, 2, 3]), Some(pos(3) - pos(0)));
        for &(s, t) in w.terminals() {
            assert_eq!(sssp(&w, s).get(t), Some(pos(t) - pos(s)));
        }
    }
}
