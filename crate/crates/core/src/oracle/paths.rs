use crate::error::{Error, Result};
use crate::graph::{build_sp_dag, Graph, ShortestPathDag};

/// Default cap on the number of enumerated paths or pairs.
pub const DEFAULT_LIMIT: usize = 1_000_000;

/// A path as both its vertex sequence and its edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { vertices: vec![v], edges: Vec::new() }
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().expect("paths are nonempty")
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

/// Vertex sequences of simple paths.
pub type PathSet = Vec<Vec<usize>>;

/// Every path from `from` to `to` inside `dag`, visiting only vertices accepted by `alive`.
pub fn dag_paths(
    dag: &ShortestPathDag,
    from: usize,
    to: usize,
    alive: &dyn Fn(usize) -> bool,
    limit: usize,
) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    if !alive(from) || !alive(to) {
        return Ok(out);
    }
    let mut current = Path::trivial(from);
    extend(dag, to, alive, limit, &mut current, &mut out)?;
    Ok(out)
}

fn extend(
    dag: &ShortestPathDag,
    to: usize,
    alive: &dyn Fn(usize) -> bool,
    limit: usize,
    current: &mut Path,
    out: &mut Vec<Path>,
) -> Result<()> {
    let v = current.last();
    if v == to {
        if out.len() == limit {
            return Err(Error::LimitExceeded { limit });
        }
        out.push(current.clone());
        return Ok(());
    }
    for a in dag.out(v) {
        if alive(a.vertex()) {
            current.vertices.push(a.vertex());
            current.edges.push(a.edge());
            extend(dag, to, alive, limit, current, out)?;
            current.vertices.pop();
            current.edges.pop();
        }
    }
    Ok(())
}

/// All `(s, t)`-shortest paths, by depth-first search over the `s`-shortest-path DAG.
pub fn enum_shortest_paths(g: &Graph, s: usize, t: usize, limit: usize) -> Result<PathSet> {
    let dag = build_sp_dag(g, s);
    Ok(dag_paths(&dag, s, t, &|_| true, limit)?.into_iter().map(|p| p.vertices).collect())
}

/// All simple `(s, t)`-paths of the raw graph, ignoring weights.
pub fn simple_paths(g: &Graph, s: usize, t: usize, limit: usize) -> Result<Vec<Path>> {
    fn go(g: &Graph, t: usize, limit: usize, on_path: &mut [bool], cur: &mut Path, out: &mut Vec<Path>) -> Result<()> {
        let v = cur.last();
        if v == t {
            if out.len() == limit {
                return Err(Error::LimitExceeded { limit });
            }
            out.push(cur.clone());
            return Ok(());
        }
        for a in g.out_adj(v) {
            if !on_path[a.vertex()] {
                on_path[a.vertex()] = true;
                cur.vertices.push(a.vertex());
                cur.edges.push(a.edge());
                go(g, t, limit, on_path, cur, out)?;
                cur.vertices.pop();
                cur.edges.pop();
                on_path[a.vertex()] = false;
            }
        }
        Ok(())
    }
    let mut on_path = vec![false; g.n()];
    on_path[s] = true;
    let mut out = Vec::new();
    go(g, t, limit, &mut on_path, &mut Path::trivial(s), &mut out)?;
    Ok(out)
}

/// Bellman-Ford relaxation over the raw edge list.
pub fn bellman_ford(g: &Graph, source: usize) -> Vec<Option<u128>> {
    let undirected = g.mode() == crate::graph::Mode::Undirected;
    let mut dist: Vec<Option<u128>> = vec![None; g.n()];
    dist[source] = Some(0);
    for _ in 0..g.n() {
        let mut changed = false;
        for e in g.edges() {
            let w = e.weight as u128;
            let mut relax = |from: usize, to: usize| {
                if let Some(d) = dist[from] {
                    if dist[to].is_none_or(|cur| d + w < cur) {
                        dist[to] = Some(d + w);
                        changed = true;
                    }
                }
            };
            relax(e.u, e.v);
            if undirected {
                relax(e.v, e.u);
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::cross;
    use crate::graph::load_graph;

    #[test]
    fn cross_has_one_shortest_path_per_pair() {
        let g = cross();
        assert_eq!(enum_shortest_paths(&g, 0, 3, DEFAULT_LIMIT).unwrap(), vec![vec![0, 2, 3]]);
    }

    #[test]
    fn triangle_tie() {
        let g = load_graph("3 3 undirected 0\n0 1 1\n1 2 1\n0 2 2\n").unwrap();
        let mut paths = enum_shortest_paths(&g, 0, 2, DEFAULT_LIMIT).unwrap();
        paths.sort();
        assert_eq!(paths, vec![vec![0, 1, 2], vec![0, 2]]);
        assert_eq!(simple_paths(&g, 0, 2, DEFAULT_LIMIT).unwrap().len(), 2);
        assert!(matches!(enum_shortest_paths(&g, 0, 2, 1), Err(Error::LimitExceeded { limit: 1 })));
    }
}
