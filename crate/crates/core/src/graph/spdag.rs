use std::sync::OnceLock;

use super::csr::Csr;
use super::sssp::dag_shortest_in_arcs;
use super::{sssp, DistanceMap, Graph};

/// Edges of `G` lying on some shortest path from `source`, oriented away from it.
///
/// Arcs are stored by order position. On DAGs the vertex-indexed lists are
/// derived on first use, so the decision pipeline, which sweeps positions
/// only, never pays for them.
#[derive(Clone, Debug)]
pub struct ShortestPathDag {
    dist: DistanceMap,
    order: Vec<usize>,
    rank: Vec<u32>,
    ranked_inn: Csr<RankedArc>,
    ranked_out: Csr<RankedArc>,
    by_vertex: OnceLock<VertexLists>,
}

/// An arc seen from one endpoint, with the other endpoint given by its
/// position in [`ShortestPathDag::order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankedArc {
    pub rank: u32,
    pub edge: u32,
}

/// An arc seen from one endpoint, with the other endpoint as a vertex id.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DagArc {
    vertex: u32,
    edge: u32,
}

impl DagArc {
    pub fn vertex(&self) -> usize {
        self.vertex as usize
    }

    pub fn edge(&self) -> usize {
        self.edge as usize
    }
}

#[derive(Clone, Debug)]
struct VertexLists {
    out: Csr<DagArc>,
    inn: Csr<DagArc>,
}

impl ShortestPathDag {
    pub fn source(&self) -> usize {
        self.dist.source()
    }

    pub fn dist(&self) -> &DistanceMap {
        &self.dist
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Retained arcs leaving `v`.
    pub fn out(&self, v: usize) -> &[DagArc] {
        self.vertex_lists().out.get(v)
    }

    /// Retained arcs entering `v`.
    pub fn inn(&self, v: usize) -> &[DagArc] {
        self.vertex_lists().inn.get(v)
    }

    /// A topological order of the retained arcs covering every vertex: the
    /// graph's own order for DAGs; otherwise nondecreasing distance, ties by
    /// id, unreachable vertices last.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Position of `v` in [`ShortestPathDag::order`].
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v] as usize
    }

    /// Arcs entering the vertex at position `rank` of the order, by position.
    pub fn ranked_inn(&self, rank: usize) -> &[RankedArc] {
        self.ranked_inn.get(rank)
    }

    /// Arcs leaving the vertex at position `rank` of the order, by position.
    pub fn ranked_out(&self, rank: usize) -> &[RankedArc] {
        self.ranked_out.get(rank)
    }

    pub fn arc_count(&self) -> usize {
        self.ranked_out.total()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out(u).iter().any(|a| a.vertex() == v)
    }

    /// Retained arcs as `(tail, head, edge id)`, grouped by tail.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.out(u).iter().map(move |a| (u, a.vertex(), a.edge())))
    }

    fn vertex_lists(&self) -> &VertexLists {
        self.by_vertex.get_or_init(|| {
            // stored along the order, so sweeps that follow it read them front to back
            let lists = |ranked: &Csr<RankedArc>| {
                let mut adj = Csr::builder(self.n(), ranked.total());
                for (p, &v) in self.order.iter().enumerate() {
                    for arc in ranked.get(p) {
                        adj.push(DagArc { vertex: self.order[arc.rank as usize] as u32, edge: arc.edge });
                    }
                    adj.finish(v);
                }
                adj.build()
            };
            VertexLists { out: lists(&self.ranked_out), inn: lists(&self.ranked_inn) }
        })
    }
}

/// Keep arc `(u, v)` iff `dist(v) = dist(u) + w(u, v)`; undirected edges are tested both ways.
pub fn build_sp_dag(g: &Graph, source: usize) -> ShortestPathDag {
    build_sp_dags(g, &[source]).pop().expect("one source gives one DAG")
}

/// [`build_sp_dag`] for each of several sources.
pub fn build_sp_dags(g: &Graph, sources: &[usize]) -> Vec<ShortestPathDag> {
    match (g.topo_order(), g.topo_ranks()) {
        (Some(topo), Some(rank)) => sources
            .iter()
            .map(|&source| {
                let (dist, ranked_inn) = dag_shortest_in_arcs(g, source);
                let ranked_out = reverse(&ranked_inn);
                ShortestPathDag {
                    dist,
                    order: topo.to_vec(),
                    rank: rank.to_vec(),
                    ranked_inn,
                    ranked_out,
                    by_vertex: OnceLock::new(),
                }
            })
            .collect(),
        _ => sources.iter().map(|&source| undirected_sp_dag(g, source)).collect(),
    }
}

/// Filters in vertex-id order, where the graph's lists are stored, and
/// derives the position-indexed lists from the vertex ones.
fn undirected_sp_dag(g: &Graph, source: usize) -> ShortestPathDag {
    let n = g.n();
    let dist = sssp(g, source);
    let mut out = Csr::builder(n, n);
    for u in 0..n {
        if let Some(du) = dist.get(u) {
            for a in g.out_adj(u) {
                if dist.get(a.vertex()) == Some(du + a.weight as u128) {
                    out.push(DagArc { vertex: a.vertex() as u32, edge: a.edge() as u32 });
                }
            }
        }
        out.finish(u);
    }
    let out = out.build();
    let inn = Csr::from_pairs(
        n,
        (0..n).flat_map(|u| out.get(u).iter().map(move |a| (a.vertex(), DagArc { vertex: u as u32, edge: a.edge }))),
    );
    let order = distance_order(&dist);
    let mut rank = vec![0u32; n];
    for (p, &v) in order.iter().enumerate() {
        rank[v] = p as u32;
    }
    let by_rank = |adj: &Csr<DagArc>| {
        let mut ranked = Csr::builder(n, adj.total());
        for (p, &v) in order.iter().enumerate() {
            for a in adj.get(v) {
                ranked.push(RankedArc { rank: rank[a.vertex()], edge: a.edge });
            }
            ranked.finish(p);
        }
        ranked.build()
    };
    ShortestPathDag {
        dist,
        ranked_inn: by_rank(&inn),
        ranked_out: by_rank(&out),
        order,
        rank,
        by_vertex: OnceLock::from(VertexLists { out, inn }),
    }
}

/// All vertices by nondecreasing distance, ties by id, unreachable ones last.
fn distance_order(dist: &DistanceMap) -> Vec<usize> {
    // Keys pack `dist << 32 | v`. Real distances stay below (n - 1) * 2^64,
    // so the unreachable cap sorts after all of them.
    const CAP: u128 = (1 << 96) - 1;
    let mut keys: Vec<u128> = (0..dist.len()).map(|v| dist.get(v).unwrap_or(CAP).min(CAP) << 32 | v as u128).collect();
    keys.sort_unstable();
    keys.iter().map(|&k| (k & u32::MAX as u128) as usize).collect()
}

/// Reverse every arc of a position-indexed list.
fn reverse(ranked: &Csr<RankedArc>) -> Csr<RankedArc> {
    Csr::from_pairs(
        ranked.len(),
        (0..ranked.len()).flat_map(|p| {
            ranked.get(p).iter().map(move |arc| (arc.rank as usize, RankedArc { rank: p as u32, edge: arc.edge }))
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_graph;

    fn arcs(dag: &ShortestPathDag) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = dag.arcs().map(|(u, w, _)| (u, w)).collect();
        v.sort();
        v
    }

    #[test]
    fn cross_from_s1() {
        let g = load_graph("5 4 dag 2\n0 3\n1 4\n0 2 1\n1 2 1\n2 3 1\n2 4 1\n").unwrap();
        let dag = build_sp_dag(&g, 0);
        assert_eq!(arcs(&dag), vec![(0, 2), (2, 3), (2, 4)]);
        assert_eq!(dag.order(), g.topo_order().unwrap());
    }

    #[test]
    fn distance_width_does_not_change_the_dag() {
        // scales exercise 32-bit, 64-bit and 128-bit distance words
        for mode in ["dag", "undirected"] {
            let build = |scale: u64| {
                let g = load_graph(&format!(
                    "5 6 {mode} 0\n0 1 {a}\n1 4 {a}\n0 2 {a}\n2 4 {a}\n0 3 {b}\n3 4 {a}\n",
                    a = scale,
                    b = 2 * scale
                ))
                .unwrap();
                let dag = build_sp_dag(&g, 0);
                (arcs(&dag), dag.dist().get(4).unwrap() / scale as u128)
            };
            let base = build(1);
            assert_eq!(base, (vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4)], 2));
            assert_eq!(build(1 << 33), base);
            assert_eq!(build(u64::MAX / 2), base);
        }
    }

    #[test]
    fn undirected_triangle_keeps_both_routes() {
        // a=0, b=1, c=2
        let g = load_graph("3 3 undirected 0\n0 1 1\n1 2 1\n0 2 2\n").unwrap();
        let dag = build_sp_dag(&g, 0);
        assert_eq!(arcs(&dag), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(dag.inn(2).len(), 2);
        assert_eq!(dag.order(), &[0, 1, 2]);
    }
}
