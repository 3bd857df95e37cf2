use super::{Certificate, CliqueInstance, Construction, ReductionInstance};
use crate::graph::{Edge, Graph, Mode};

/// Unit-weight DAG on terminals `s_i = i`, `t_i = k + i` and nodes `v(w)` for
/// `v` in part `i`, `w` outside it. `P(v)` runs `s_i -> v(w_1) -> ... -> t_i`
/// over the `w` in global order; `v(w)` and `w(v)` are one node exactly when
/// `v` and `w` are not adjacent.
///
/// Every arc strictly increases the sorted global pair `(min(v,w), max(v,w))`
/// of its endpoint nodes, so the result is acyclic.
pub fn clique_to_kdsp(c: &CliqueInstance) -> ReductionInstance {
    let (k, n) = (c.k(), c.n());
    let size = k * n;
    let mut node = vec![usize::MAX; size * size];
    let mut next = 2 * k;
    for v in 0..size {
        for w in 0..size {
            if c.part_of(v) == c.part_of(w) {
                continue;
            }
            node[v * size + w] = if w < v && !c.adjacent_global(v, w) {
                node[w * size + v]
            } else {
                next += 1;
                next - 1
            };
        }
    }

    let unit = |u, v| Edge { u, v, weight: 1 };
    let mut edges = Vec::new();
    let mut canonical_paths = vec![Vec::with_capacity(n); k];
    for (i, paths) in canonical_paths.iter_mut().enumerate() {
        for a in 0..n {
            let v = c.global(i, a);
            let mut path = vec![i];
            path.extend((0..size).filter(|&w| c.part_of(w) != i).map(|w| node[v * size + w]));
            path.push(k + i);
            edges.extend(path.windows(2).map(|p| unit(p[0], p[1])));
            paths.push(path);
        }
    }

    let terminals: Vec<(usize, usize)> = (0..k).map(|i| (i, k + i)).collect();
    let graph = Graph::new(next, Mode::Dag, edges, terminals.clone()).expect("construction yields a valid DAG");
    let certificate = Certificate {
        construction: Construction::CliqueToKdsp,
        terminals,
        expected_lengths: vec![((k - 1) * n + 1) as u128; k],
        node_count: graph.n(),
        node_bound: 2 * k + k * (k - 1) * n * n,
        clique: c.clone(),
        lists: Vec::new(),
        detour_pairs: Vec::new(),
    };
    ReductionInstance { graph, certificate, canonical_paths }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_kdsp, enum_shortest_paths, find_kdsp, DEFAULT_LIMIT};

    #[test]
    fn unique_triangle() {
        let mut c = CliqueInstance::empty(3, 2);
        c.add_edge(0, 0, 1, 0);
        c.add_edge(1, 0, 2, 0);
        c.add_edge(0, 0, 2, 0);
        let inst = clique_to_kdsp(&c);
        inst.verify_certificate().unwrap();
        let sol = find_kdsp(&inst.graph, DEFAULT_LIMIT).unwrap().unwrap();
        for i in 0..3 {
            assert_eq!(sol[i], inst.canonical_paths[i][0]);
        }
    }

    #[test]
    fn empty_adjacency_merges_everything() {
        let c = CliqueInstance::empty(3, 2);
        let inst = clique_to_kdsp(&c);
        // Every unordered cross pair is one node.
        assert_eq!(inst.graph.n(), 6 + 12);
        assert!(!brute_kdsp(&inst.graph, DEFAULT_LIMIT).unwrap());
        let mut paths = enum_shortest_paths(&inst.graph, 0, 3, DEFAULT_LIMIT).unwrap();
        paths.sort();
        assert_eq!(paths, inst.canonical_paths[0]);
    }
}
