use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::Graph;

/// Which ready vertex Kahn's algorithm emits first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    SmallestId,
    LargestId,
}

/// Topological order of the directed adjacency, or `None` if a cycle exists.
/// Only meaningful for DAG-mode graphs.
pub fn topological_order(g: &Graph, tie: TieBreak) -> Option<Vec<usize>> {
    let n = g.n();
    let mut indegree = vec![0usize; n];
    for e in g.edges() {
        indegree[e.v] += 1;
    }
    let mut order = Vec::with_capacity(n);
    match tie {
        TieBreak::SmallestId => {
            let mut ready: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indegree[v] == 0).map(Reverse).collect();
            while let Some(Reverse(v)) = ready.pop() {
                order.push(v);
                for a in g.out_adj(v) {
                    indegree[a.vertex()] -= 1;
                    if indegree[a.vertex()] == 0 {
                        ready.push(Reverse(a.vertex()));
                    }
                }
            }
        }
        TieBreak::LargestId => {
            let mut ready: BinaryHeap<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
            while let Some(v) = ready.pop() {
                order.push(v);
                for a in g.out_adj(v) {
                    indegree[a.vertex()] -= 1;
                    if indegree[a.vertex()] == 0 {
                        ready.push(a.vertex());
                    }
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, Mode};

    #[test]
    fn tie_breaks_differ_but_are_valid() {
        let edges = vec![Edge { u: 0, v: 2, weight: 1 }, Edge { u: 1, v: 2, weight: 1 }];
        let g = Graph::new(3, Mode::Dag, edges, vec![]).unwrap();
        assert_eq!(topological_order(&g, TieBreak::SmallestId), Some(vec![0, 1, 2]));
        assert_eq!(topological_order(&g, TieBreak::LargestId), Some(vec![1, 0, 2]));
    }
}
