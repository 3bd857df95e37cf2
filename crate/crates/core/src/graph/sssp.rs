use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::csr::Csr;
use super::spdag::RankedArc;
use super::{Graph, Mode};

/// Exact distances from one source, stored in the narrowest of `u32`, `u64`
/// and `u128` that holds the graph's total weight. Narrow words keep the
/// per-vertex array small; the `u128` fallback means sums of 64-bit weights
/// never overflow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMap {
    source: usize,
    dist: Store,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Store {
    Compact(Vec<u32>),
    Narrow(Vec<u64>),
    Wide(Vec<u128>),
}

impl DistanceMap {
    pub fn source(&self) -> usize {
        self.source
    }

    #[inline]
    pub fn get(&self, v: usize) -> Option<u128> {
        match &self.dist {
            Store::Compact(d) => (d[v] != u32::UNREACHABLE).then_some(d[v] as u128),
            Store::Narrow(d) => (d[v] != u64::UNREACHABLE).then_some(d[v] as u128),
            Store::Wide(d) => (d[v] != u128::UNREACHABLE).then_some(d[v]),
        }
    }

    pub fn is_reachable(&self, v: usize) -> bool {
        self.get(v).is_some()
    }

    pub fn len(&self) -> usize {
        match &self.dist {
            Store::Compact(d) => d.len(),
            Store::Narrow(d) => d.len(),
            Store::Wide(d) => d.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

trait Word: Copy + Ord {
    const UNREACHABLE: Self;
    const ZERO: Self;
    fn plus(self, weight: u64) -> Self;
    fn widen(self) -> u128;
    fn narrow(wide: u128) -> Self;
}

impl Word for u32 {
    const UNREACHABLE: Self = u32::MAX;
    const ZERO: Self = 0;
    fn plus(self, weight: u64) -> Self {
        self + weight as u32
    }
    fn widen(self) -> u128 {
        self as u128
    }
    fn narrow(wide: u128) -> Self {
        wide as u32
    }
}

impl Word for u64 {
    const UNREACHABLE: Self = u64::MAX;
    const ZERO: Self = 0;
    fn plus(self, weight: u64) -> Self {
        self + weight
    }
    fn widen(self) -> u128 {
        self as u128
    }
    fn narrow(wide: u128) -> Self {
        wide as u64
    }
}

impl Word for u128 {
    const UNREACHABLE: Self = u128::MAX;
    const ZERO: Self = 0;
    fn plus(self, weight: u64) -> Self {
        self + weight as u128
    }
    fn widen(self) -> u128 {
        self
    }
    fn narrow(wide: u128) -> Self {
        wide
    }
}

/// Every distance is at most the total weight, so the narrowest word whose
/// sentinel exceeds that total holds them all.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Width {
    Compact,
    Narrow,
    Wide,
}

fn width(g: &Graph) -> Width {
    match g.total_weight() {
        w if w < u32::MAX as u128 => Width::Compact,
        w if w < u64::MAX as u128 => Width::Narrow,
        _ => Width::Wide,
    }
}

/// DP over the topological order for DAGs, binary-heap Dijkstra otherwise.
///
/// # Panics
/// If `source` is out of range.
pub fn sssp(g: &Graph, source: usize) -> DistanceMap {
    assert!(source < g.n(), "source {source} out of range");
    let dist = match width(g) {
        Width::Compact => Store::Compact(distances(g, source)),
        Width::Narrow => Store::Narrow(distances(g, source)),
        Width::Wide => Store::Wide(distances(g, source)),
    };
    DistanceMap { source, dist }
}

fn distances<W: Word>(g: &Graph, source: usize) -> Vec<W> {
    let mut dist = vec![W::UNREACHABLE; g.n()];
    dist[source] = W::ZERO;
    match g.mode() {
        Mode::Dag => {
            let order = g.topo_order().expect("DAG has a topological order");
            for &u in order {
                if dist[u] == W::UNREACHABLE {
                    continue;
                }
                for a in g.out_adj(u) {
                    let cand = dist[u].plus(a.weight);
                    if cand < dist[a.vertex()] {
                        dist[a.vertex()] = cand;
                    }
                }
            }
        }
        Mode::Undirected => {
            // Heap keys pack `dist << 32 | vertex`: with fewer than 2^32
            // vertices every distance is below 2^96.
            let mut heap = BinaryHeap::new();
            heap.push(Reverse(source as u128));
            while let Some(Reverse(key)) = heap.pop() {
                let (d, u) = (W::narrow(key >> 32), (key & u32::MAX as u128) as usize);
                if d > dist[u] {
                    continue;
                }
                for a in g.out_adj(u) {
                    let cand = d.plus(a.weight);
                    if cand < dist[a.vertex()] {
                        dist[a.vertex()] = cand;
                        heap.push(Reverse(cand.widen() << 32 | a.vertex() as u128));
                    }
                }
            }
        }
    }
    dist
}

/// DAG only: one pull sweep in topological order settles each `dist(v)`
/// from its predecessors and keeps the in-arcs attaining it, so distances
/// and shortest-path in-arcs come out of a single pass over the edges. The
/// in-arcs are indexed by topological position, tails given by position.
pub(super) fn dag_shortest_in_arcs(g: &Graph, source: usize) -> (DistanceMap, Csr<RankedArc>) {
    assert!(source < g.n(), "source {source} out of range");
    let (dist, inn) = match width(g) {
        Width::Compact => {
            let (d, inn) = pull_sweep::<u32>(g, source);
            (Store::Compact(d), inn)
        }
        Width::Narrow => {
            let (d, inn) = pull_sweep::<u64>(g, source);
            (Store::Narrow(d), inn)
        }
        Width::Wide => {
            let (d, inn) = pull_sweep::<u128>(g, source);
            (Store::Wide(d), inn)
        }
    };
    (DistanceMap { source, dist }, inn)
}

fn pull_sweep<W: Word>(g: &Graph, source: usize) -> (Vec<W>, Csr<RankedArc>) {
    let order = g.topo_order().expect("DAG has a topological order");
    let rank = g.topo_ranks().expect("DAG has a topological order");
    let n = g.n();
    let mut dist = vec![W::UNREACHABLE; n];
    dist[source] = W::ZERO;
    let mut inn = Csr::builder(n, n);
    let mut cands = Vec::new();
    for (p, &v) in order.iter().enumerate() {
        if v != source {
            cands.clear();
            let mut best = W::UNREACHABLE;
            for a in g.in_adj(v) {
                let du = dist[a.vertex()];
                let cand = if du == W::UNREACHABLE { W::UNREACHABLE } else { du.plus(a.weight) };
                best = best.min(cand);
                cands.push(cand);
            }
            dist[v] = best;
            if best != W::UNREACHABLE {
                for (a, &cand) in g.in_adj(v).iter().zip(&cands) {
                    if cand == best {
                        inn.push(RankedArc { rank: rank[a.vertex()], edge: a.edge() as u32 });
                    }
                }
            }
        }
        inn.finish(p);
    }
    (dist, inn.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_graph;

    #[test]
    fn cross_distances() {
        let g = load_graph("5 4 dag 2\n0 3\n1 4\n0 2 1\n1 2 1\n2 3 1\n2 4 1\n").unwrap();
        let d = sssp(&g, 0);
        assert_eq!(d.get(3), Some(2));
        assert_eq!(d.get(4), Some(2));
        assert_eq!(d.get(1), None);
        assert_eq!(d.get(0), Some(0));
    }

    #[test]
    fn undirected_path_sums_weights() {
        let g = load_graph("3 2 undirected 0\n0 1 3\n1 2 4\n").unwrap();
        assert_eq!(sssp(&g, 0).get(2), Some(7));
        assert_eq!(sssp(&g, 2).get(0), Some(7));
    }

    #[test]
    fn huge_weights_do_not_overflow() {
        let w = u64::MAX;
        let g = load_graph(&format!("3 2 dag 0\n0 1 {w}\n1 2 {w}\n")).unwrap();
        assert_eq!(sssp(&g, 0).get(2), Some(2 * w as u128));
    }
}
