//! Enumerating polynomials for two terminal pairs and the 2-DSP decision.
//!
//! Every function here is generic over [`Scalar`], so the same code evaluates
//! at field points, at parity points, with dual numbers, or on circuit wires.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Gf64;
use crate::graph::{build_sp_dags, Csr, Graph, Mode, PairScope, RankedArc, ShortestPathDag};
use crate::scalar::Scalar;

/// Edge values indexed by edge id. Undirected edges have a single entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment<S>(pub Vec<S>);

impl<S: Scalar> Assignment<S> {
    pub fn from_fn(m: usize, f: impl FnMut(usize) -> S) -> Self {
        Assignment((0..m).map(f).collect())
    }

    pub fn constant(m: usize, value: S) -> Self {
        Assignment(vec![value; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Assignment<Gf64> {
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        Assignment((0..m).map(|_| Gf64::random(rng)).collect())
    }
}

impl<S> std::ops::Index<usize> for Assignment<S> {
    type Output = S;
    fn index(&self, edge: usize) -> &S {
        &self.0[edge]
    }
}

/// Per-edge values as the evaluation pipeline reads them.
pub trait EdgeValues<S> {
    fn value(&self, edge: usize) -> S;
}

impl<S: Scalar> EdgeValues<S> for Assignment<S> {
    #[inline]
    fn value(&self, edge: usize) -> S {
        self.0[edge]
    }
}

/// A uniformly random field assignment computed on demand: edge `e` gets the
/// `e`-th output of a SplitMix64 stream started at `key`. Nothing is stored
/// per edge, so a trial never touches memory proportional to `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HashedAssignment {
    pub key: u64,
}

impl HashedAssignment {
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        HashedAssignment { key: rng.gen() }
    }

    pub fn materialize(&self, m: usize) -> Assignment<Gf64> {
        Assignment::from_fn(m, |e| self.value(e))
    }
}

impl EdgeValues<Gf64> for HashedAssignment {
    #[inline]
    fn value(&self, edge: usize) -> Gf64 {
        let mut z = self.key.wrapping_add((edge as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        Gf64(z ^ (z >> 31))
    }
}

/// `left[i][v]` sums over `(s_i, v)`-paths of `G_i`, `right[i][v]` over `(v, t_i)`-paths.
#[derive(Clone, Debug, PartialEq)]
pub struct PathTables<S> {
    pub left: [Vec<S>; 2],
    pub right: [Vec<S>; 2],
}

/// Per-vertex source linkage, relaxed target linkage and mixed-overlap values.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalTables<S> {
    pub source_linkage: Vec<S>,
    pub target_linkage: Vec<S>,
    pub mixed: Vec<S>,
}

/// Common neighbourhoods of the two DAGs at every vertex.
#[derive(Clone, Debug)]
pub struct Neighborhoods {
    /// `(u, edge)` with `u -> v` in both DAGs.
    pub common_in: Csr<(usize, usize)>,
    /// `(w, edge)` with `v -> w` in both DAGs.
    pub common_out: Csr<(usize, usize)>,
    /// `(u, edge_uv, edge_vu)` with `u -> v` in the first DAG and `v -> u` in the second.
    pub mixed: Csr<(usize, usize, usize)>,
}

impl Neighborhoods {
    /// Mark one DAG's arcs at `v`, then scan the other's: `O(m)` overall.
    pub fn compute(scope: &PairScope<'_>) -> Self {
        let n = scope.n();
        let [g1, g2] = scope.dags;
        let undirected = scope.mode == Mode::Undirected;
        // stamps hold the id of the vertex being scanned, plus one
        let (mut in_stamp, mut out_stamp) = (vec![0u32; n], vec![0u32; n]);
        let mut slot = vec![0u32; if undirected { n } else { 0 }];
        let mut common_in = Csr::builder(n, 0);
        let mut common_out = Csr::builder(n, 0);
        let mut mixed = Csr::builder(n, 0);

        for v in 0..n {
            let mark = v as u32 + 1;
            for a in g1.inn(v) {
                in_stamp[a.vertex()] = mark;
                if undirected {
                    slot[a.vertex()] = a.edge() as u32;
                }
            }
            for a in g2.inn(v) {
                if in_stamp[a.vertex()] == mark {
                    common_in.push((a.vertex(), a.edge()));
                }
            }
            if undirected {
                for a in g2.out(v) {
                    if in_stamp[a.vertex()] == mark {
                        mixed.push((a.vertex(), slot[a.vertex()] as usize, a.edge()));
                    }
                }
            }
            for a in g1.out(v) {
                out_stamp[a.vertex()] = mark;
            }
            for a in g2.out(v) {
                if out_stamp[a.vertex()] == mark {
                    common_out.push((a.vertex(), a.edge()));
                }
            }
            common_in.finish(v);
            common_out.finish(v);
            mixed.finish(v);
        }
        Neighborhoods { common_in: common_in.build(), common_out: common_out.build(), mixed: mixed.build() }
    }
}

/// Forward DP for `left`, backward DP for `right`, over each DAG's stored
/// order. The sweep runs over order positions so arc lists are read front to
/// back; results are scattered to vertex ids at the end.
pub fn eval_path_tables<S: Scalar>(scope: &PairScope<'_>, a: &impl EdgeValues<S>) -> PathTables<S> {
    let n = scope.n();
    let table = |i: usize, forward: bool| {
        let dag = scope.dags[i];
        let order = dag.order();
        let anchor = if forward { scope.sources[i] } else { scope.targets[i] };
        let by_rank = sweep_by_rank(dag, dag.rank(anchor), |p| scope.is_alive(order[p]), forward, a);
        let mut vals = vec![S::zero(); n];
        for (p, &v) in order.iter().enumerate() {
            vals[v] = by_rank[p];
        }
        vals
    };
    PathTables { left: [table(0, true), table(1, true)], right: [table(0, false), table(1, false)] }
}

/// Path sums from (forward) or to (backward) the anchor, by order position.
fn sweep_by_rank<S: Scalar>(
    dag: &ShortestPathDag,
    anchor: usize,
    alive: impl Fn(usize) -> bool,
    forward: bool,
    a: &impl EdgeValues<S>,
) -> Vec<S> {
    let n = dag.n();
    let mut by_rank = vec![S::zero(); n];
    let mut visit = |p: usize| {
        if !alive(p) {
            return;
        }
        if p == anchor {
            by_rank[p] = S::one();
            return;
        }
        let mut acc = S::zero();
        if forward {
            for arc in dag.ranked_inn(p) {
                acc = acc + by_rank[arc.rank as usize] * a.value(arc.edge as usize);
            }
        } else {
            for arc in dag.ranked_out(p) {
                acc = acc + a.value(arc.edge as usize) * by_rank[arc.rank as usize];
            }
        }
        by_rank[p] = acc;
    };
    if forward {
        (0..n).for_each(&mut visit);
    } else {
        (0..n).rev().for_each(&mut visit);
    }
    by_rank
}

/// `D(v) = L1(v)L2(v) - Σ_{u ∈ Vin(v)} L1(u)L2(u)x_uv²`.
pub fn eval_source_linkage<S: Scalar>(tables: &PathTables<S>, nb: &Neighborhoods, a: &impl EdgeValues<S>) -> Vec<S> {
    let [l1, l2] = &tables.left;
    per_vertex(nb, |v| {
        let mut d = l1[v] * l2[v];
        for &(u, e) in nb.common_in.get(v) {
            d = d - l1[u] * l2[u] * a.value(e).square();
        }
        d
    })
}

/// `T(v) = R1(v)R2(v) - Σ_{w ∈ Vout(v)} x_vw² R1(w)R2(w)`.
pub fn eval_target_linkage<S: Scalar>(tables: &PathTables<S>, nb: &Neighborhoods, a: &impl EdgeValues<S>) -> Vec<S> {
    let [r1, r2] = &tables.right;
    per_vertex(nb, |v| {
        let mut t = r1[v] * r2[v];
        for &(w, e) in nb.common_out.get(v) {
            t = t - a.value(e).square() * r1[w] * r2[w];
        }
        t
    })
}

/// `H(v) = Σ_{u ∈ Vmix(v)} L1(u)x_uv R1(v) L2(v)x_vu R2(u)`; identically zero on DAGs.
pub fn eval_mixed<S: Scalar>(tables: &PathTables<S>, nb: &Neighborhoods, a: &impl EdgeValues<S>) -> Vec<S> {
    let [l1, l2] = &tables.left;
    let [r1, r2] = &tables.right;
    per_vertex(nb, |v| {
        let mut h = S::zero();
        for &(u, e_uv, e_vu) in nb.mixed.get(v) {
            h = h + l1[u] * a.value(e_uv) * r1[v] * l2[v] * a.value(e_vu) * r2[u];
        }
        h
    })
}

fn per_vertex<S: Scalar>(nb: &Neighborhoods, f: impl FnMut(usize) -> S) -> Vec<S> {
    (0..nb.common_in.len()).map(f).collect()
}

pub fn eval_local_tables<S: Scalar>(
    tables: &PathTables<S>,
    nb: &Neighborhoods,
    a: &impl EdgeValues<S>,
) -> LocalTables<S> {
    LocalTables {
        source_linkage: eval_source_linkage(tables, nb, a),
        target_linkage: eval_target_linkage(tables, nb, a),
        mixed: eval_mixed(tables, nb, a),
    }
}

/// Intersecting pairs in a DAG: `Σ_v D(v)R1(v)R2(v)`.
pub fn eval_fcap_dag<S: Scalar>(tables: &PathTables<S>, source_linkage: &[S]) -> S {
    let [r1, r2] = &tables.right;
    source_linkage.iter().enumerate().fold(S::zero(), |acc, (v, &d)| acc + d * r1[v] * r2[v])
}

/// Agreeing pairs: `Σ_v Σ_{w ∈ Vout(v)} D(v)x_vw² R1(w)R2(w)`.
pub fn eval_fagree<S: Scalar>(
    tables: &PathTables<S>,
    source_linkage: &[S],
    nb: &Neighborhoods,
    a: &impl EdgeValues<S>,
) -> S {
    let [r1, r2] = &tables.right;
    let mut total = S::zero();
    for v in 0..nb.common_out.len() {
        for &(w, e) in nb.common_out.get(v) {
            total = total + source_linkage[v] * a.value(e).square() * r1[w] * r2[w];
        }
    }
    total
}

/// Disagreeing pairs: `Σ_v (D(v)T(v) - H(v))`.
pub fn eval_fdis<S: Scalar>(local: &LocalTables<S>) -> S {
    let mut total = S::zero();
    for v in 0..local.source_linkage.len() {
        total = total + (local.source_linkage[v] * local.target_linkage[v] - local.mixed[v]);
    }
    total
}

/// Every intermediate quantity of one evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Breakdown<S> {
    pub tables: PathTables<S>,
    pub local: LocalTables<S>,
    /// All standard pairs: `L1(t1)L2(t2)`.
    pub all_pairs: S,
    pub fagree: S,
    pub fdis: S,
    /// `Σ_v D(v)R1(v)R2(v)`, valid as the intersecting-pair count on DAGs.
    pub fcap_dag: S,
    /// The value the pipeline uses for the scope's mode.
    pub fcap: S,
    pub fdisj: S,
}

/// Position-indexed form of a scope whose two DAGs share one order, as the
/// shortest-path DAGs of a DAG do. Every per-vertex quantity of the DAG
/// formula is then indexed by position and each sweep reads its lists front
/// to back, with no scatter to vertex ids.
#[derive(Clone, Debug)]
struct SharedOrder {
    /// Arcs `u -> v` in both DAGs, listed at `v`'s position with `u`'s position.
    common_in: Csr<RankedArc>,
    alive: Vec<bool>,
    sources: [usize; 2],
    targets: [usize; 2],
}

impl SharedOrder {
    fn new(scope: &PairScope<'_>) -> Option<Self> {
        let [g1, g2] = scope.dags;
        if scope.mode != Mode::Dag || g1.order() != g2.order() {
            return None;
        }
        let n = scope.n();
        // stamps hold the position being scanned, plus one
        let mut stamp = vec![0u32; n];
        let mut common_in = Csr::builder(n, 0);
        for p in 0..n {
            let mark = p as u32 + 1;
            for arc in g1.ranked_inn(p) {
                stamp[arc.rank as usize] = mark;
            }
            for arc in g2.ranked_inn(p) {
                if stamp[arc.rank as usize] == mark {
                    common_in.push(*arc);
                }
            }
            common_in.finish(p);
        }
        Some(SharedOrder {
            common_in: common_in.build(),
            alive: g1.order().iter().map(|&v| scope.is_alive(v)).collect(),
            sources: scope.sources.map(|v| g1.rank(v)),
            targets: scope.targets.map(|v| g1.rank(v)),
        })
    }

    /// `L1(t1)L2(t2) - Σ_v D(v)R1(v)R2(v)`.
    fn fdisj<S: Scalar>(&self, dags: [&ShortestPathDag; 2], a: &impl EdgeValues<S>) -> S {
        let sweep = |i: usize, forward: bool| {
            let anchor = if forward { self.sources[i] } else { self.targets[i] };
            sweep_by_rank(dags[i], anchor, |p| self.alive[p], forward, a)
        };
        let (l1, l2) = (sweep(0, true), sweep(1, true));
        let (r1, r2) = (sweep(0, false), sweep(1, false));
        let both: Vec<S> = l1.iter().zip(&l2).map(|(&x, &y)| x * y).collect();
        let mut fcap = S::zero();
        for (p, &lp) in both.iter().enumerate() {
            let mut d = lp;
            for arc in self.common_in.get(p) {
                d = d - both[arc.rank as usize] * a.value(arc.edge as usize).square();
            }
            fcap = fcap + d * r1[p] * r2[p];
        }
        l1[self.targets[0]] * l2[self.targets[1]] - fcap
    }
}

/// A pair scope with its neighbourhood intersections precomputed.
#[derive(Clone, Debug)]
pub struct Evaluator<'a> {
    scope: PairScope<'a>,
    nb: OnceLock<Neighborhoods>,
    shared: Option<SharedOrder>,
}

impl<'a> Evaluator<'a> {
    pub fn new(scope: PairScope<'a>) -> Self {
        let shared = SharedOrder::new(&scope);
        let nb = OnceLock::new();
        if shared.is_none() {
            nb.get_or_init(|| Neighborhoods::compute(&scope));
        }
        Evaluator { scope, nb, shared }
    }

    pub fn scope(&self) -> &PairScope<'a> {
        &self.scope
    }

    pub fn neighborhoods(&self) -> &Neighborhoods {
        self.nb.get_or_init(|| Neighborhoods::compute(&self.scope))
    }

    /// `F_disj = L1(t1)L2(t2) - F_cap`, with `F_cap` chosen by mode.
    pub fn fdisj<S: Scalar>(&self, a: &impl EdgeValues<S>) -> S {
        if let Some(shared) = &self.shared {
            return shared.fdisj(self.scope.dags, a);
        }
        let nb = self.neighborhoods();
        let tables = eval_path_tables(&self.scope, a);
        let all = self.all_pairs(&tables);
        let d = eval_source_linkage(&tables, nb, a);
        let fcap = match self.scope.mode {
            Mode::Dag => eval_fcap_dag(&tables, &d),
            Mode::Undirected => {
                let local = LocalTables {
                    target_linkage: eval_target_linkage(&tables, nb, a),
                    mixed: eval_mixed(&tables, nb, a),
                    source_linkage: d,
                };
                eval_fagree(&tables, &local.source_linkage, nb, a) + eval_fdis(&local)
            }
        };
        all - fcap
    }

    /// Evaluate every stage regardless of mode.
    pub fn breakdown<S: Scalar>(&self, a: &impl EdgeValues<S>) -> Breakdown<S> {
        let nb = self.neighborhoods();
        let tables = eval_path_tables(&self.scope, a);
        let local = eval_local_tables(&tables, nb, a);
        let all_pairs = self.all_pairs(&tables);
        let fagree = eval_fagree(&tables, &local.source_linkage, nb, a);
        let fdis = eval_fdis(&local);
        let fcap_dag = eval_fcap_dag(&tables, &local.source_linkage);
        let fcap = match self.scope.mode {
            Mode::Dag => fcap_dag,
            Mode::Undirected => fagree + fdis,
        };
        Breakdown { fdisj: all_pairs - fcap, tables, local, all_pairs, fagree, fdis, fcap_dag, fcap }
    }

    fn all_pairs<S: Scalar>(&self, tables: &PathTables<S>) -> S {
        let [t1, t2] = self.scope.targets;
        tables.left[0][t1] * tables.left[1][t2]
    }
}

/// The two shortest-path DAGs of a graph with exactly two terminal pairs.
#[derive(Clone, Debug)]
pub struct TwoPairInstance {
    dags: [ShortestPathDag; 2],
    targets: [usize; 2],
    mode: Mode,
    m: usize,
}

impl TwoPairInstance {
    pub fn new(g: &Graph) -> Result<Self> {
        let &[(s1, t1), (s2, t2)] = g.terminals() else {
            return Err(Error::TerminalCount { expected: "exactly 2".into(), found: g.k() });
        };
        let [d1, d2]: [ShortestPathDag; 2] = build_sp_dags(g, &[s1, s2]).try_into().expect("two sources");
        Ok(TwoPairInstance { dags: [d1, d2], targets: [t1, t2], mode: g.mode(), m: g.m() })
    }

    pub fn dags(&self) -> [&ShortestPathDag; 2] {
        [&self.dags[0], &self.dags[1]]
    }

    pub fn targets(&self) -> [usize; 2] {
        self.targets
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn scope(&self) -> PairScope<'_> {
        PairScope::new(self.dags(), self.targets, self.mode)
    }

    /// `t_i` reachable from `s_i` in `G_i` for both pairs.
    pub fn targets_reachable(&self) -> bool {
        (0..2).all(|i| self.dags[i].dist().is_reachable(self.targets[i]))
    }

    /// Randomized decision with `trials` independent assignments drawn from `rng`.
    pub fn decide<R: Rng + ?Sized>(&self, trials: usize, rng: &mut R) -> Decision {
        if !self.targets_reachable() {
            return Decision { answer: Answer::No, value: Gf64::ZERO, trials: 0 };
        }
        let eval = Evaluator::new(self.scope());
        let mut value = Gf64::ZERO;
        for trial in 1..=trials {
            let a = HashedAssignment::random(rng);
            value = eval.fdisj(&a);
            if value != Gf64::ZERO {
                return Decision { answer: Answer::Yes, value, trials: trial };
            }
        }
        Decision { answer: Answer::No, value, trials }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn from_bool(yes: bool) -> Self {
        if yes {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }
}

/// Outcome of the trial loop, before the seed is attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    pub answer: Answer,
    /// Last evaluation of `F_disj`.
    pub value: Gf64,
    /// Trials actually run; zero when a target is unreachable.
    pub trials: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    pub value: Gf64,
    pub trials: usize,
    pub seed: u64,
}

pub const DEFAULT_TRIALS: usize = 2;

/// Evaluate `F_disj` for a graph with two terminal pairs.
pub fn eval_fdisj<S: Scalar>(g: &Graph, a: &impl EdgeValues<S>) -> Result<S> {
    let inst = TwoPairInstance::new(g)?;
    Ok(Evaluator::new(inst.scope()).fdisj(a))
}

/// YES iff some trial evaluates `F_disj` to a nonzero field element.
pub fn decide_2dsp(g: &Graph, trials: usize, seed: u64) -> Result<Verdict> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let inst = TwoPairInstance::new(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = inst.decide(trials, &mut rng);
    Ok(Verdict { answer: d.answer, value: d.value, trials: d.trials, seed })
}
