use std::collections::VecDeque;

use rand::Rng;

use super::circuit::{eval_all_partials, record_circuit};
use crate::dsp2::{Assignment, Evaluator, TwoPairInstance, DEFAULT_TRIALS};
use crate::error::{Error, Result};
use crate::field::Gf64;
use crate::graph::{sssp, Graph, PairScope, ShortestPathDag};

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Fresh restarts allowed after an unlucky stage or a failed verification.
    pub max_restarts: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_restarts: 32 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Circuits built and differentiated.
    pub stages: usize,
    pub restarts: usize,
    pub max_circuit_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub paths: Option<(Vec<usize>, Vec<usize>)>,
    pub stats: SearchStats,
}

/// Vertex-disjoint shortest paths for the two terminal pairs, or `None`.
pub fn find_2dsp<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    Ok(find_2dsp_with(g, rng, SearchOptions::default())?.paths)
}

/// Grow the first path one arc at a time. At each stage the restricted
/// instance (original DAGs, current head as first source, committed vertices
/// removed) is recorded as a circuit; any arc out of the head with a nonzero
/// partial derivative lies on a solution. The second path is then any route
/// through what remains of the second DAG. Results are verified before they
/// are returned.
pub fn find_2dsp_with<R: Rng + ?Sized>(g: &Graph, rng: &mut R, options: SearchOptions) -> Result<SearchOutcome> {
    let inst = TwoPairInstance::new(g)?;
    let mut stats = SearchStats::default();
    if !inst.targets_reachable() {
        return Ok(SearchOutcome { paths: None, stats });
    }
    let [dag1, dag2] = inst.dags();
    let [t1, t2] = inst.targets();
    let (s1, s2) = (dag1.source(), dag2.source());
    let n = g.n();
    let mut known_yes = false;
    let mut zero_starts = 0;

    'attempt: loop {
        if stats.restarts > options.max_restarts {
            return Err(Error::SearchExhausted { attempts: stats.restarts });
        }
        let mut alive = vec![true; n];
        let mut head = s1;
        let mut first = vec![s1];
        while head != t1 {
            let scope = PairScope { sources: [head, s2], alive: Some(&alive), ..inst.scope() };
            let eval = Evaluator::new(scope);
            let circuit = record_circuit(&eval, g.m());
            stats.stages += 1;
            stats.max_circuit_size = stats.max_circuit_size.max(circuit.size());
            let grad = eval_all_partials(&circuit, &Assignment::random(g.m(), rng));

            if grad.value == Gf64::ZERO {
                if !known_yes {
                    zero_starts += 1;
                    if zero_starts >= DEFAULT_TRIALS {
                        return Ok(SearchOutcome { paths: None, stats });
                    }
                }
                stats.restarts += 1;
                continue 'attempt;
            }
            known_yes = true;
            let next = dag1.out(head).iter().find(|a| alive[a.vertex()] && grad.partials[a.edge()] != Gf64::ZERO);
            let Some(arc) = next else {
                stats.restarts += 1;
                continue 'attempt;
            };
            alive[head] = false;
            head = arc.vertex();
            first.push(head);
        }

        for &v in &first {
            alive[v] = false;
        }
        if let Some(second) = route(dag2, s2, t2, &alive) {
            if verify_solution(g, &first, &second) {
                return Ok(SearchOutcome { paths: Some((first, second)), stats });
            }
        }
        stats.restarts += 1;
    }
}

/// Breadth-first route through the live part of a DAG.
fn route(dag: &ShortestPathDag, from: usize, to: usize, alive: &[bool]) -> Option<Vec<usize>> {
    if !alive[from] {
        return None;
    }
    let mut parent = vec![usize::MAX; alive.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for a in dag.out(v) {
            if alive[a.vertex()] && parent[a.vertex()] == usize::MAX {
                parent[a.vertex()] = v;
                queue.push_back(a.vertex());
            }
        }
    }
    None
}

/// Both sequences are paths of `g` between the right terminals, each as
/// short as the true distance, and together they repeat no vertex.
pub fn verify_solution(g: &Graph, first: &[usize], second: &[usize]) -> bool {
    let &[(s1, t1), (s2, t2)] = g.terminals() else {
        return false;
    };
    let endpoints_ok = |p: &[usize], s: usize, t: usize| p.first() == Some(&s) && p.last() == Some(&t);
    if !endpoints_ok(first, s1, t1) || !endpoints_ok(second, s2, t2) {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &v in first.iter().chain(second) {
        if v >= g.n() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    [(first, s1, t1), (second, s2, t2)]
        .iter()
        .all(|&(p, s, t)| g.path_weight(p).is_some() && g.path_weight(p) == sssp(g, s).get(t))
}
