//! Weighted graphs with terminal pairs, shortest paths and shortest-path DAGs.

mod csr;
mod io;
mod scope;
mod spdag;
mod sssp;
mod topo;

pub use csr::Csr;
pub use io::{load_graph, load_graph_with, LoadOptions};
pub use scope::PairScope;
pub use spdag::{build_sp_dag, build_sp_dags, DagArc, RankedArc, ShortestPathDag};
pub use sssp::{sssp, DistanceMap};
pub use topo::{topological_order, TieBreak};

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Dag,
    Undirected,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Dag => "dag",
            Mode::Undirected => "undirected",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: u64,
}

/// One entry of an adjacency list: the neighbouring vertex, the edge id and
/// a copy of the edge weight, so traversals never touch the edge list.
///
/// Ids are stored as `u32` to keep adjacency lists compact; [`Graph::new`]
/// rejects graphs that would not fit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Adj {
    vertex: u32,
    edge: u32,
    pub weight: u64,
}

impl Adj {
    pub fn new(vertex: usize, edge: usize, weight: u64) -> Self {
        Adj { vertex: vertex as u32, edge: edge as u32, weight }
    }

    #[inline]
    pub fn vertex(&self) -> usize {
        self.vertex as usize
    }

    #[inline]
    pub fn edge(&self) -> usize {
        self.edge as usize
    }
}

/// A validated graph. Edge ids are positions in [`Graph::edges`].
///
/// In undirected mode each edge appears in the adjacency of both endpoints
/// under the same id, so an assignment keyed by edge id is automatically
/// symmetric.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    mode: Mode,
    edges: Vec<Edge>,
    terminals: Vec<(usize, usize)>,
    out_adj: Csr<Adj>,
    in_adj: Csr<Adj>,
    topo: Option<Vec<usize>>,
    topo_rank: Option<Vec<u32>>,
    total_weight: u128,
}

impl Graph {
    /// Validates everything except weak connectivity, which only the loader
    /// and [`Graph::check_connected`] enforce.
    pub fn new(n: usize, mode: Mode, edges: Vec<Edge>, terminals: Vec<(usize, usize)>) -> Result<Self> {
        // undirected adjacency stores every edge twice in one 32-bit-indexed list
        if n > u32::MAX as usize || edges.len() > (u32::MAX / 2) as usize {
            return Err(Error::InvalidParameter(format!(
                "{n} vertices and {} edges exceed the limits of 2^32 - 1 and 2^31 - 1",
                edges.len()
            )));
        }
        let mut seen_pairs = HashSet::with_capacity(edges.len());
        for (id, e) in edges.iter().enumerate() {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if e.weight == 0 {
                return Err(Error::NonpositiveWeight { edge: id, u: e.u, v: e.v });
            }
            if e.u == e.v {
                return Err(Error::SelfLoop { edge: id, vertex: e.u });
            }
            let key = match mode {
                Mode::Dag => (e.u, e.v),
                Mode::Undirected => (e.u.min(e.v), e.u.max(e.v)),
            };
            if !seen_pairs.insert(key) {
                return Err(Error::ParallelEdge { edge: id, u: e.u, v: e.v });
            }
        }

        let mut seen_terminals = HashSet::new();
        for &(s, t) in &terminals {
            for x in [s, t] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
                if !seen_terminals.insert(x) {
                    return Err(Error::DuplicateTerminal(x));
                }
            }
        }

        let (out_adj, in_adj) = match mode {
            Mode::Dag => (
                Csr::from_pairs(n, edges.iter().enumerate().map(|(id, e)| (e.u, Adj::new(e.v, id, e.weight)))),
                Csr::from_pairs(n, edges.iter().enumerate().map(|(id, e)| (e.v, Adj::new(e.u, id, e.weight)))),
            ),
            Mode::Undirected => {
                let both = edges
                    .iter()
                    .enumerate()
                    .flat_map(|(id, e)| [(e.u, Adj::new(e.v, id, e.weight)), (e.v, Adj::new(e.u, id, e.weight))]);
                let adj = Csr::from_pairs(n, both);
                (adj.clone(), adj)
            }
        };

        let mut graph =
            Graph { n, mode, edges, terminals, out_adj, in_adj, topo: None, topo_rank: None, total_weight: 0 };
        graph.total_weight = graph.edges.iter().map(|e| e.weight as u128).sum();
        if mode == Mode::Dag {
            let topo = topological_order(&graph, TieBreak::SmallestId).ok_or(Error::CycleDetected)?;
            // Store adjacency in topological order so DAG sweeps stream through memory.
            let edges = &graph.edges;
            graph.out_adj = Csr::from_pairs_in_layout(
                n,
                &topo,
                edges.iter().enumerate().map(|(id, e)| (e.u, Adj::new(e.v, id, e.weight))),
            );
            graph.in_adj = Csr::from_pairs_in_layout(
                n,
                &topo,
                edges.iter().enumerate().map(|(id, e)| (e.v, Adj::new(e.u, id, e.weight))),
            );
            let mut rank = vec![0u32; n];
            for (p, &v) in topo.iter().enumerate() {
                rank[v] = p as u32;
            }
            graph.topo_rank = Some(rank);
            graph.topo = Some(topo);
        }
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Number of terminal pairs.
    pub fn k(&self) -> usize {
        self.terminals.len()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn terminals(&self) -> &[(usize, usize)] {
        &self.terminals
    }

    /// Neighbours reachable by one edge: successors in a DAG, all neighbours otherwise.
    pub fn out_adj(&self, v: usize) -> &[Adj] {
        self.out_adj.get(v)
    }

    /// Predecessors in a DAG, all neighbours otherwise.
    pub fn in_adj(&self, v: usize) -> &[Adj] {
        self.in_adj.get(v)
    }

    /// Id of the edge traversable from `u` to `v`, if any.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.out_adj(u).iter().find(|a| a.vertex() == v).map(|a| a.edge())
    }

    /// Position of every vertex in [`Graph::topo_order`]; `None` for undirected graphs.
    pub fn topo_ranks(&self) -> Option<&[u32]> {
        self.topo_rank.as_deref()
    }

    /// Sum of all edge weights, an upper bound on every distance.
    pub fn total_weight(&self) -> u128 {
        self.total_weight
    }

    /// Topological order of a DAG (Kahn, smallest id first); `None` for undirected graphs.
    pub fn topo_order(&self) -> Option<&[usize]> {
        self.topo.as_deref()
    }

    pub fn is_weakly_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for a in self.out_adj(v).iter().chain(self.in_adj(v)) {
                if !seen[a.vertex()] {
                    seen[a.vertex()] = true;
                    count += 1;
                    stack.push(a.vertex());
                }
            }
        }
        count == self.n
    }

    pub fn check_connected(&self) -> Result<()> {
        if self.is_weakly_connected() {
            Ok(())
        } else {
            Err(Error::NotConnected)
        }
    }

    /// Same vertices and edges with new terminal pairs.
    pub fn with_terminals(&self, terminals: Vec<(usize, usize)>) -> Result<Graph> {
        Graph::new(self.n, self.mode, self.edges.clone(), terminals)
    }

    /// Total weight of the vertex sequence, or `None` if it is not a walk of the graph.
    pub fn path_weight(&self, path: &[usize]) -> Option<u128> {
        let mut total = 0u128;
        for pair in path.windows(2) {
            let e = self.edge_between(pair[0], pair[1])?;
            total += self.edges[e].weight as u128;
        }
        Some(total)
    }

    /// Edge ids along a vertex sequence, or `None` if some step is not an edge.
    pub fn path_edges(&self, path: &[usize]) -> Option<Vec<usize>> {
        path.windows(2).map(|p| self.edge_between(p[0], p[1])).collect()
    }

    /// Serialize in the text format accepted by [`load_graph`].
    pub fn to_text(&self) -> String {
        io::write_graph(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_edges() {
        let e = |u, v, weight| Edge { u, v, weight };
        assert_eq!(
            Graph::new(2, Mode::Dag, vec![e(0, 1, 0)], vec![]).unwrap_err(),
            Error::NonpositiveWeight { edge: 0, u: 0, v: 1 }
        );
        assert_eq!(
            Graph::new(2, Mode::Dag, vec![e(0, 0, 1)], vec![]).unwrap_err(),
            Error::SelfLoop { edge: 0, vertex: 0 }
        );
        assert_eq!(
            Graph::new(2, Mode::Undirected, vec![e(0, 1, 1), e(1, 0, 2)], vec![]).unwrap_err(),
            Error::ParallelEdge { edge: 1, u: 1, v: 0 }
        );
        assert_eq!(Graph::new(2, Mode::Dag, vec![e(0, 1, 1), e(1, 0, 1)], vec![]).unwrap_err(), Error::CycleDetected);
        assert_eq!(
            Graph::new(3, Mode::Dag, vec![e(0, 1, 1)], vec![(0, 1), (1, 2)]).unwrap_err(),
            Error::DuplicateTerminal(1)
        );
        assert!(matches!(
            Graph::new(2, Mode::Dag, vec![e(0, 5, 1)], vec![]),
            Err(Error::VertexOutOfRange { vertex: 5, n: 2 })
        ));
    }

    #[test]
    fn undirected_adjacency_shares_edge_ids() {
        let g = Graph::new(
            3,
            Mode::Undirected,
            vec![Edge { u: 0, v: 1, weight: 3 }, Edge { u: 1, v: 2, weight: 4 }],
            vec![],
        )
        .unwrap();
        assert_eq!(g.edge_between(0, 1), Some(0));
        assert_eq!(g.edge_between(1, 0), Some(0));
        assert_eq!(g.path_weight(&[2, 1, 0]), Some(7));
        assert!(g.topo_order().is_none());
    }
}
