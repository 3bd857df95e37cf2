use super::{covering_family, Certificate, CliqueInstance, Construction, ListTerminal, ReductionInstance};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Mode};

/// Gadget grid construction with one terminal pair per row and one per covering list.
///
/// Row `i` chains the gadgets of `V_i`; the gadget of `v` has `l(i)` columns
/// `a_r(v) -> b_r(v)`, one per list containing `i`. A row's shortest paths
/// skip exactly one gadget, leaving its columns to the list paths, which
/// hop between rows along `Π_L(u, w)` only for adjacent `u`, `w`.
///
/// Terminal pairs: rows first, then lists in family order.
pub fn clique_to_pdp(c: &CliqueInstance) -> Result<ReductionInstance> {
    let (k, n) = (c.k(), c.n());
    if n < 2 {
        return Err(Error::InvalidClique(format!("the gadget construction needs n >= 2, got {n}")));
    }
    if k < 2 {
        return Err(Error::InvalidClique(format!("the gadget construction needs k >= 2, got {k}")));
    }
    let family = covering_family(k)?;
    let lists = &family.lists;
    let p = k + lists.len();

    // column[λ][x] = column of list λ in row x (0-based rows)
    let mut width = vec![0usize; k];
    let mut column = vec![vec![usize::MAX; k]; lists.len()];
    for (lambda, list) in lists.iter().enumerate() {
        for &row in list {
            column[lambda][row - 1] = width[row - 1];
            width[row - 1] += 1;
        }
    }

    // sources 0..p, targets p..2p, then gadget nodes, then path interiors
    let mut next = 2 * p;
    let mut alloc = |count: usize| {
        let start = next;
        next += count;
        start
    };
    let gadget_base: Vec<usize> = (0..k * n).map(|v| alloc(2 * width[c.part_of(v)])).collect();
    let a_node = |v: usize, r: usize| gadget_base[v] + 2 * r;
    let b_node = |v: usize, r: usize| gadget_base[v] + 2 * r + 1;

    let mut edges = Vec::new();
    let mut arc = |u: usize, v: usize| edges.push(Edge { u, v, weight: 1 });

    for i in 0..k {
        let l = width[i];
        let last = l - 1;
        let v = |j: usize| c.global(i, j);
        for j in 0..n {
            for r in 0..l {
                arc(a_node(v(j), r), b_node(v(j), r));
                if r + 1 < l {
                    arc(a_node(v(j), r), a_node(v(j), r + 1));
                    arc(b_node(v(j), r), b_node(v(j), r + 1));
                }
            }
            if j + 1 < n {
                arc(a_node(v(j), last), a_node(v(j + 1), 0));
                arc(b_node(v(j), last), b_node(v(j + 1), 0));
            }
            if j + 2 < n {
                arc(a_node(v(j), last), b_node(v(j + 2), 0));
            }
        }
        let (s, t) = (i, p + i);
        arc(s, a_node(v(0), 0));
        arc(b_node(v(n - 1), last), t);
        arc(s, b_node(v(1), 0));
        arc(a_node(v(n - 2), last), t);
    }

    let mut interior_bound = 0;
    for (lambda, list) in lists.iter().enumerate() {
        for pair in list.windows(2) {
            let (x, y) = (pair[0] - 1, pair[1] - 1);
            let length = 2 * (y - x) - 1;
            interior_bound += n * n * (length - 1);
            for a in 0..n {
                for b in 0..n {
                    if !c.adjacent(x, a, y, b) {
                        continue;
                    }
                    let from = b_node(c.global(x, a), column[lambda][x]);
                    let to = a_node(c.global(y, b), column[lambda][y]);
                    let start = alloc(length - 1);
                    let route: Vec<usize> =
                        std::iter::once(from).chain(start..start + length - 1).chain([to]).collect();
                    route.windows(2).for_each(|w| arc(w[0], w[1]));
                }
            }
        }
        let (s, t) = (k + lambda, p + k + lambda);
        let first = list[0] - 1;
        let last = list[list.len() - 1] - 1;
        for a in 0..n {
            arc(s, a_node(c.global(first, a), column[lambda][first]));
            arc(b_node(c.global(last, a), column[lambda][last]), t);
        }
    }

    let terminals: Vec<(usize, usize)> = (0..p).map(|i| (i, p + i)).collect();
    let graph = Graph::new(next, Mode::Dag, edges, terminals.clone()).expect("construction yields a valid DAG");

    let mut expected_lengths: Vec<u128> = (0..k).map(|i| ((n - 1) * width[i] + 1) as u128).collect();
    expected_lengths.extend(lists.iter().map(|l| (2 * (l[l.len() - 1] - l[0]) + 3) as u128));
    let detour_pairs =
        lists.iter().enumerate().filter(|(_, l)| !has_list_route(c, l)).map(|(lambda, _)| k + lambda).collect();
    let gadget_nodes: usize = (0..k).map(|i| 2 * n * width[i]).sum();

    let certificate = Certificate {
        construction: Construction::CliqueToPdp,
        terminals,
        expected_lengths,
        node_count: graph.n(),
        node_bound: 2 * p + gadget_nodes + interior_bound,
        clique: c.clone(),
        lists: lists
            .iter()
            .enumerate()
            .map(|(lambda, list)| ListTerminal { list: list.clone(), pair: k + lambda })
            .collect(),
        detour_pairs,
    };
    Ok(ReductionInstance { graph, certificate, canonical_paths: Vec::new() })
}

/// Some choice of one vertex per listed row makes consecutive choices adjacent.
fn has_list_route(c: &CliqueInstance, list: &[usize]) -> bool {
    let mut reach = vec![true; c.n()];
    for w in list.windows(2) {
        let (x, y) = (w[0] - 1, w[1] - 1);
        reach = (0..c.n()).map(|b| (0..c.n()).any(|a| reach[a] && c.adjacent(x, a, y, b))).collect();
    }
    reach.contains(&true)
}
