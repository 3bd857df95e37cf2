//! Small named graphs used throughout the tests and by the CLI self-test.

use crate::graph::{Edge, Graph, Mode};

fn unit(u: usize, v: usize) -> Edge {
    Edge { u, v, weight: 1 }
}

/// `s1 -> v`, `s2 -> v`, `v -> t1`, `v -> t2` with `s1=0, s2=1, v=2, t1=3, t2=4`.
/// Edge-disjoint shortest paths exist, vertex-disjoint ones do not.
pub fn cross() -> Graph {
    Graph::new(5, Mode::Dag, vec![unit(0, 2), unit(1, 2), unit(2, 3), unit(2, 4)], vec![(0, 3), (1, 4)])
        .expect("valid fixture")
}

/// `s1 -> a -> t1` and `s2 -> b -> t2` with `s1=0, a=1, t1=2, s2=3, b=4, t2=5`.
/// Two components, so the file loader needs `allow_disconnected`.
pub fn para() -> Graph {
    para_in(Mode::Dag, false)
}

/// [`para`] plus a bridge `a -> b` that lies on no terminal-to-terminal
/// shortest path, making it weakly connected.
pub fn para_connected() -> Graph {
    para_in(Mode::Dag, true)
}

pub fn para_undirected() -> Graph {
    para_in(Mode::Undirected, false)
}

fn para_in(mode: Mode, bridge: bool) -> Graph {
    let mut edges = vec![unit(0, 1), unit(1, 2), unit(3, 4), unit(4, 5)];
    if bridge {
        edges.push(unit(1, 4));
    }
    Graph::new(6, mode, edges, vec![(0, 2), (3, 5)]).expect("valid fixture")
}

/// Undirected `s1 - v - t1` and `s2 - v - t2` with `s1=0, s2=1, v=2, t1=3, t2=4`.
pub fn share() -> Graph {
    Graph::new(5, Mode::Undirected, vec![unit(0, 2), unit(2, 3), unit(1, 2), unit(2, 4)], vec![(0, 3), (1, 4)])
        .expect("valid fixture")
}
