//! Exhaustive solvers for small instances.

use std::collections::VecDeque;

use super::paths::{dag_paths, Path};
use crate::error::{Error, Result};
use crate::graph::{build_sp_dag, Graph, Mode};
use crate::reductions::CliqueInstance;

/// Candidate shortest paths per terminal pair.
fn shortest_candidates(g: &Graph, limit: usize) -> Result<Vec<Vec<Path>>> {
    g.terminals().iter().map(|&(s, t)| dag_paths(&build_sp_dag(g, s), s, t, &|_| true, limit)).collect()
}

/// Pick one candidate per pair so that no vertex (or edge) is used twice.
/// Pairs with fewer candidates are branched on first.
fn pick_disjoint(g: &Graph, cands: &[Vec<Path>], by_edge: bool) -> Option<Vec<Vec<usize>>> {
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by_key(|&i| cands[i].len());
    let mut used = vec![false; if by_edge { g.m() } else { g.n() }];
    let mut chosen = vec![usize::MAX; cands.len()];

    fn items(p: &Path, by_edge: bool) -> &[usize] {
        if by_edge {
            &p.edges
        } else {
            &p.vertices
        }
    }

    fn go(
        depth: usize,
        order: &[usize],
        cands: &[Vec<Path>],
        by_edge: bool,
        used: &mut [bool],
        chosen: &mut [usize],
    ) -> bool {
        let Some(&pair) = order.get(depth) else { return true };
        for (idx, p) in cands[pair].iter().enumerate() {
            let its = items(p, by_edge);
            if its.iter().any(|&x| used[x]) {
                continue;
            }
            its.iter().for_each(|&x| used[x] = true);
            chosen[pair] = idx;
            if go(depth + 1, order, cands, by_edge, used, chosen) {
                return true;
            }
            its.iter().for_each(|&x| used[x] = false);
        }
        false
    }

    go(0, &order, cands, by_edge, &mut used, &mut chosen)
        .then(|| chosen.iter().enumerate().map(|(i, &c)| cands[i][c].vertices.clone()).collect())
}

/// Vertex-disjoint shortest paths for every terminal pair, if they exist.
pub fn find_kdsp(g: &Graph, limit: usize) -> Result<Option<Vec<Vec<usize>>>> {
    Ok(pick_disjoint(g, &shortest_candidates(g, limit)?, false))
}

/// Edge-disjoint shortest paths for every terminal pair, if they exist.
pub fn find_kedsp(g: &Graph, limit: usize) -> Result<Option<Vec<Vec<usize>>>> {
    Ok(pick_disjoint(g, &shortest_candidates(g, limit)?, true))
}

pub fn brute_kdsp(g: &Graph, limit: usize) -> Result<bool> {
    Ok(find_kdsp(g, limit)?.is_some())
}

pub fn brute_2dsp(g: &Graph, limit: usize) -> Result<bool> {
    if g.k() != 2 {
        return Err(Error::TerminalCount { expected: "exactly 2".into(), found: g.k() });
    }
    brute_kdsp(g, limit)
}

pub fn brute_kedsp(g: &Graph, limit: usize) -> Result<bool> {
    Ok(find_kedsp(g, limit)?.is_some())
}

/// Vertex-disjoint paths, not necessarily shortest, for every terminal pair.
///
/// Pairs are routed one at a time by depth-first extension, those with the
/// fewest paths first; after each completed path every remaining pair must
/// still be connectable.
pub fn find_kdp(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let k = g.k();
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    for (i, &(s, t)) in g.terminals().iter().enumerate() {
        owner[s] = i;
        owner[t] = i;
    }
    let reach: Option<Vec<Vec<bool>>> =
        (g.mode() == Mode::Dag).then(|| g.terminals().iter().map(|&(_, t)| reaches(g, t)).collect());

    let mut order: Vec<usize> = (0..k).collect();
    let counts: Vec<u128> = g.terminals().iter().map(|&(s, t)| path_count_hint(g, s, t)).collect();
    order.sort_by_key(|&i| counts[i]);

    let mut solver = KdpSolver { g, owner, reach, used: vec![false; n], paths: vec![Vec::new(); k] };
    solver.route(&order, 0).then_some(solver.paths)
}

struct KdpSolver<'g> {
    g: &'g Graph,
    owner: Vec<usize>,
    reach: Option<Vec<Vec<bool>>>,
    used: Vec<bool>,
    paths: Vec<Vec<usize>>,
}

impl KdpSolver<'_> {
    fn blocked(&self, pair: usize, v: usize) -> bool {
        self.used[v] || (self.owner[v] != usize::MAX && self.owner[v] != pair)
    }

    fn route(&mut self, order: &[usize], depth: usize) -> bool {
        let Some(&pair) = order.get(depth) else { return true };
        let (s, t) = self.g.terminals()[pair];
        let mut path = vec![s];
        self.used[s] = true;
        let found = self.extend(order, depth, pair, t, &mut path);
        if !found {
            self.used[s] = false;
        }
        found
    }

    fn extend(&mut self, order: &[usize], depth: usize, pair: usize, t: usize, path: &mut Vec<usize>) -> bool {
        let v = *path.last().unwrap();
        if v == t {
            let rest = &order[depth + 1..];
            if rest.iter().all(|&p| self.connectable(p)) {
                self.paths[pair] = path.clone();
                if self.route(order, depth + 1) {
                    return true;
                }
            }
            return false;
        }
        for a in self.g.out_adj(v) {
            let w = a.vertex();
            if self.blocked(pair, w) || !self.can_still_reach(pair, w, t) {
                continue;
            }
            self.used[w] = true;
            path.push(w);
            if self.extend(order, depth, pair, t, path) {
                return true;
            }
            path.pop();
            self.used[w] = false;
        }
        false
    }

    fn can_still_reach(&self, pair: usize, from: usize, t: usize) -> bool {
        match &self.reach {
            Some(reach) => reach[pair][from],
            None => self.search(pair, from, t),
        }
    }

    fn connectable(&self, pair: usize) -> bool {
        let (s, t) = self.g.terminals()[pair];
        self.search(pair, s, t)
    }

    /// Breadth-first search avoiding used vertices and other pairs' terminals.
    fn search(&self, pair: usize, from: usize, t: usize) -> bool {
        let mut seen = vec![false; self.g.n()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(v) = queue.pop_front() {
            if v == t {
                return true;
            }
            for a in self.g.out_adj(v) {
                let w = a.vertex();
                if !seen[w] && (w == t || !self.blocked(pair, w)) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

/// Vertices with a directed path to `t`.
fn reaches(g: &Graph, t: usize) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![t];
    seen[t] = true;
    while let Some(v) = stack.pop() {
        for a in g.in_adj(v) {
            if !seen[a.vertex()] {
                seen[a.vertex()] = true;
                stack.push(a.vertex());
            }
        }
    }
    seen
}

/// Number of `(s, t)`-paths in a DAG, saturating; a degree product otherwise.
fn path_count_hint(g: &Graph, s: usize, t: usize) -> u128 {
    match g.topo_order() {
        Some(order) => {
            let mut count = vec![0u128; g.n()];
            count[s] = 1;
            for &v in order {
                if count[v] == 0 {
                    continue;
                }
                for a in g.out_adj(v) {
                    count[a.vertex()] = count[a.vertex()].saturating_add(count[v]);
                }
            }
            count[t]
        }
        None => (g.out_adj(s).len() * g.in_adj(t).len()) as u128,
    }
}

pub fn brute_kdp(g: &Graph) -> bool {
    find_kdp(g).is_some()
}

/// One vertex per part, pairwise adjacent.
pub fn find_clique(c: &CliqueInstance) -> Option<Vec<usize>> {
    fn go(c: &CliqueInstance, chosen: &mut Vec<usize>) -> bool {
        let part = chosen.len();
        if part == c.k() {
            return true;
        }
        for a in 0..c.n() {
            if chosen.iter().enumerate().all(|(j, &b)| c.adjacent(j, b, part, a)) {
                chosen.push(a);
                if go(c, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(c.k());
    go(c, &mut chosen).then_some(chosen)
}

pub fn brute_clique(c: &CliqueInstance) -> bool {
    find_clique(c).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cross, para, share};
    use crate::oracle::DEFAULT_LIMIT;

    #[test]
    fn fixture_answers() {
        assert!(brute_2dsp(&para(), DEFAULT_LIMIT).unwrap());
        assert!(!brute_2dsp(&cross(), DEFAULT_LIMIT).unwrap());
        assert!(!brute_2dsp(&share(), DEFAULT_LIMIT).unwrap());
        assert!(brute_kedsp(&cross(), DEFAULT_LIMIT).unwrap());
        assert_eq!(find_kedsp(&cross(), DEFAULT_LIMIT).unwrap(), Some(vec![vec![0, 2, 3], vec![1, 2, 4]]));
        assert!(brute_kdp(&para()));
        assert!(!brute_kdp(&cross()));
    }

    #[test]
    fn kdp_may_use_long_detours() {
        // Shortest s1-t1 route goes through s2's only exit; the detour avoids it.
        // s1=0 t1=1 s2=2 t2=3, x=4 shared shortcut, y, z detour
        let g = Graph::new(
            7,
            Mode::Dag,
            [(0, 4), (4, 1), (2, 4), (4, 3), (0, 5), (5, 6), (6, 1)]
                .iter()
                .map(|&(u, v)| crate::graph::Edge { u, v, weight: 1 })
                .collect(),
            vec![(0, 1), (2, 3)],
        )
        .unwrap();
        assert!(brute_kdp(&g));
        assert!(!brute_kdsp(&g, DEFAULT_LIMIT).unwrap());
    }

    #[test]
    fn clique_search() {
        let mut c = CliqueInstance::empty(3, 2);
        assert!(!brute_clique(&c));
        c.add_edge(0, 0, 1, 0);
        c.add_edge(1, 0, 2, 0);
        assert!(!brute_clique(&c));
        c.add_edge(0, 0, 2, 0);
        assert_eq!(find_clique(&c), Some(vec![0, 0, 0]));
    }
}
