//! Oracle-equivalence checks: one checker per instance, and small seeded
//! suites built from them for `dsp selftest`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dsp2::{decide_2dsp, Assignment, Evaluator, TwoPairInstance, DEFAULT_TRIALS};
use crate::error::Result;
use crate::field::Gf64;
use crate::gen::{random_graph, GraphParams};
use crate::graph::{Graph, Mode};
use crate::kedsp::{decide_kedsp, reduce_dp_to_dsp, reduce_edsp_to_dsp, verify_edge_disjoint, KedspOptions};
use crate::oracle::{
    brute_2dsp, brute_clique, brute_kdp, brute_kdsp, brute_kedsp, enum_shortest_paths, BruteForce, Family,
    DEFAULT_LIMIT,
};
use crate::reductions::{clique_to_kdsp, clique_to_pdp, CliqueInstance};
use crate::search::{find_2dsp, verify_solution};

/// Every fast quantity against its enumeration at one assignment. Returns
/// one line per mismatch.
pub fn identity_mismatches(g: &Graph, a: &Assignment<Gf64>) -> Result<Vec<String>> {
    let inst = TwoPairInstance::new(g)?;
    let scope = inst.scope();
    let b = Evaluator::new(scope).breakdown(a);
    let brute = BruteForce::new(&scope, DEFAULT_LIMIT)?;
    let mut bad = Vec::new();
    let mut check = |what: String, fast: Gf64, slow: Gf64| {
        if fast != slow {
            bad.push(format!("{what}: fast {fast} brute {slow}"));
        }
    };
    for v in 0..g.n() {
        for i in 0..2 {
            check(format!("L{}({v})", i + 1), b.tables.left[i][v], brute.left(i, v, a));
            check(format!("R{}({v})", i + 1), b.tables.right[i][v], brute.right(i, v, a));
        }
        check(format!("D({v})"), b.local.source_linkage[v], brute.eval(Family::SourceLinkage(v), a));
        check(format!("T({v})"), b.local.target_linkage[v], brute.eval(Family::RelaxedTarget(v), a));
        check(format!("H({v})"), b.local.mixed[v], brute.eval(Family::Mixed(v), a));
    }
    check("all pairs".into(), b.all_pairs, brute.eval(Family::AllStandard, a));
    check("F_agree".into(), b.fagree, brute.eval(Family::Agree, a));
    check("F_dis".into(), b.fdis, brute.eval(Family::Disagree, a));
    check("F_cap".into(), b.fcap, brute.eval(Family::Intersecting, a));
    check("F_disj".into(), b.fdisj, brute.eval(Family::Disjoint, a));
    if g.mode() == Mode::Dag {
        check("F_cap (DAG form)".into(), b.fcap_dag, brute.eval(Family::Intersecting, a));
    }
    Ok(bad)
}

/// Randomized decision against exhaustive search.
pub fn decide_mismatch(g: &Graph, seed: u64) -> Result<Option<String>> {
    let fast = decide_2dsp(g, DEFAULT_TRIALS, seed)?.answer.is_yes();
    let slow = brute_2dsp(g, DEFAULT_LIMIT)?;
    Ok((fast != slow).then(|| format!("decide says {fast}, brute force {slow}")))
}

/// Search output verified and nonempty exactly on YES instances.
pub fn search_mismatch<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<Option<String>> {
    let expected = brute_2dsp(g, DEFAULT_LIMIT)?;
    Ok(match (find_2dsp(g, rng)?, expected) {
        (Some((p1, p2)), true) if verify_solution(g, &p1, &p2) => None,
        (Some((p1, p2)), true) => Some(format!("returned {p1:?} / {p2:?}, which fails verification")),
        (None, false) => None,
        (found, _) => Some(format!("search found {}, brute force says {expected}", found.is_some())),
    })
}

/// k-EDSP verdict, extracted paths and product edge bound.
pub fn kedsp_mismatch(g: &Graph) -> Result<Option<String>> {
    let out = decide_kedsp(g, g.k(), KedspOptions::default())?;
    let expected = brute_kedsp(g, DEFAULT_LIMIT)?;
    let (k, m, n) = (g.k() as u128, g.m() as u128, g.n() as u128);
    let bound = k * m * n.pow(g.k() as u32 - 1);
    if out.found != expected {
        return Ok(Some(format!("product search says {}, brute force {expected}", out.found)));
    }
    if let Some(paths) = &out.paths {
        if !verify_edge_disjoint(g, paths) {
            return Ok(Some(format!("extracted paths {paths:?} fail verification")));
        }
    }
    if out.stats.product_edges as u128 > bound {
        return Ok(Some(format!("{} product edges exceed k·m·n^(k-1) = {bound}", out.stats.product_edges)));
    }
    Ok(None)
}

/// Two-pair edge-disjointness through the vertex split.
pub fn edsp_reduction_mismatch(g: &Graph, seed: u64) -> Result<Option<String>> {
    let split = reduce_edsp_to_dsp(g);
    let (n, m, k) = (g.n(), g.m(), g.k());
    if split.n() != m + k * (n + 2) || split.m() != 2 * k * (m + 1) {
        return Ok(Some(format!("split graph has {} nodes and {} edges", split.n(), split.m())));
    }
    let fast = decide_2dsp(&split, DEFAULT_TRIALS, seed)?.answer.is_yes();
    let slow = brute_kedsp(g, DEFAULT_LIMIT)?;
    Ok((fast != slow).then(|| format!("split decide says {fast}, brute 2-EDSP {slow}")))
}

/// Disjoint paths in a DAG against disjoint shortest paths after reweighting.
pub fn dp_reduction_mismatch(g: &Graph) -> Result<Option<String>> {
    let weighted = reduce_dp_to_dsp(g)?;
    let paths = brute_kdp(g);
    let shortest = brute_kdsp(&weighted, DEFAULT_LIMIT)?;
    Ok((paths != shortest).then(|| format!("2-DP {paths}, 2-DSP after reweighting {shortest}")))
}

/// Clique ⟺ k-DSP, and the shortest paths are exactly the canonical ones.
pub fn clique_kdsp_mismatch(c: &CliqueInstance) -> Result<Option<String>> {
    let inst = clique_to_kdsp(c);
    if let Err(e) = inst.verify_certificate() {
        return Ok(Some(e));
    }
    let length = ((c.k() - 1) * c.n() + 1) as u128;
    for (i, &(s, t)) in inst.graph.terminals().iter().enumerate() {
        let mut found = enum_shortest_paths(&inst.graph, s, t, DEFAULT_LIMIT)?;
        let mut canonical = inst.canonical_paths[i].clone();
        found.sort();
        canonical.sort();
        if found != canonical {
            return Ok(Some(format!("pair {i}: {} shortest paths, {} canonical", found.len(), canonical.len())));
        }
        if found.iter().any(|p| inst.graph.path_weight(p) != Some(length)) {
            return Ok(Some(format!("pair {i}: shortest path length differs from {length}")));
        }
    }
    let clique = brute_clique(c);
    let paths = brute_kdsp(&inst.graph, DEFAULT_LIMIT)?;
    Ok((clique != paths).then(|| format!("clique {clique}, k-DSP {paths}")))
}

/// Clique ⟺ p-DP ⟺ p-DSP on the gadget construction.
pub fn clique_pdp_mismatch(c: &CliqueInstance) -> Result<Option<String>> {
    let inst = clique_to_pdp(c)?;
    if let Err(e) = inst.verify_certificate() {
        return Ok(Some(e));
    }
    let clique = brute_clique(c);
    let paths = brute_kdp(&inst.graph);
    let shortest = brute_kdsp(&inst.graph, DEFAULT_LIMIT)?;
    Ok((clique != paths || paths != shortest).then(|| format!("clique {clique}, p-DP {paths}, p-DSP {shortest}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Decide,
    Search,
    Kedsp,
    EdspReduction,
    DpReduction,
    CliqueKdsp,
    CliquePdp,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Identities,
        Suite::Decide,
        Suite::Search,
        Suite::Kedsp,
        Suite::EdspReduction,
        Suite::DpReduction,
        Suite::CliqueKdsp,
        Suite::CliquePdp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Decide => "decide",
            Suite::Search => "search",
            Suite::Kedsp => "kedsp",
            Suite::EdspReduction => "edsp-to-dsp",
            Suite::DpReduction => "dp-to-dsp",
            Suite::CliqueKdsp => "clique-to-kdsp",
            Suite::CliquePdp => "clique-to-pdp",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Alternate modes, small random sizes.
fn small_graph<R: Rng + ?Sized>(case: usize, n_max: usize, rng: &mut R) -> Result<Graph> {
    let mode = if case.is_multiple_of(2) { Mode::Dag } else { Mode::Undirected };
    random_graph(GraphParams::new(mode, rng.gen_range(4..=n_max)), rng)
}

/// Run `cases` instances of one suite from a single seed.
pub fn run_suite(suite: Suite, cases: usize, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let note = |msg: String| format!("case {case}: {msg}");
        match suite {
            Suite::Identities => {
                let g = small_graph(case, 8, &mut rng)?;
                for _ in 0..3 {
                    let a = Assignment::random(g.m(), &mut rng);
                    failures.extend(identity_mismatches(&g, &a)?.into_iter().map(note));
                }
            }
            Suite::Decide => {
                let g = small_graph(case, 9, &mut rng)?;
                failures.extend(decide_mismatch(&g, rng.gen())?.map(note));
            }
            Suite::Search => {
                let g = small_graph(case, 9, &mut rng)?;
                failures.extend(search_mismatch(&g, &mut rng)?.map(note));
            }
            Suite::Kedsp => {
                let k = if case % 3 == 2 { 3 } else { 2 };
                let g = random_graph(GraphParams::new(Mode::Dag, rng.gen_range(2 * k..=7)).pairs(k), &mut rng)?;
                failures.extend(kedsp_mismatch(&g)?.map(note));
            }
            Suite::EdspReduction => {
                let g = small_graph(case, 7, &mut rng)?;
                failures.extend(edsp_reduction_mismatch(&g, rng.gen())?.map(note));
            }
            Suite::DpReduction => {
                let g = random_graph(GraphParams::new(Mode::Dag, rng.gen_range(4..=8)), &mut rng)?;
                failures.extend(dp_reduction_mismatch(&g)?.map(note));
            }
            Suite::CliqueKdsp => {
                let c = CliqueInstance::random(3, rng.gen_range(2..=3), 0.6, &mut rng);
                failures.extend(clique_kdsp_mismatch(&c)?.map(note));
            }
            Suite::CliquePdp => {
                let c = CliqueInstance::random(3, rng.gen_range(2..=3), 0.6, &mut rng);
                failures.extend(clique_pdp_mismatch(&c)?.map(note));
            }
        }
    }
    Ok(SuiteReport { suite: suite.name(), seed, cases, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cross, para, share};

    #[test]
    fn fixtures_pass_every_checker() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for g in [para(), cross(), share()] {
            let a = Assignment::random(g.m(), &mut rng);
            assert_eq!(identity_mismatches(&g, &a).unwrap(), Vec::<String>::new());
            assert_eq!(decide_mismatch(&g, 1).unwrap(), None);
            assert_eq!(search_mismatch(&g, &mut rng).unwrap(), None);
            assert_eq!(edsp_reduction_mismatch(&g, 2).unwrap(), None);
        }
        assert_eq!(kedsp_mismatch(&cross()).unwrap(), None);
        assert_eq!(dp_reduction_mismatch(&cross()).unwrap(), None);
    }

    #[test]
    fn every_suite_passes_small() {
        for suite in Suite::ALL {
            let report = run_suite(suite, 6, 17).unwrap();
            assert!(report.passed(), "{}: {:?}", report.suite, report.failures);
        }
    }
}
