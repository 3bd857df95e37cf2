use super::classify::{classify_pair, PairClass};
use super::paths::Path;
use crate::dsp2::Assignment;
use crate::error::{Error, Result};
use crate::graph::{PairScope, ShortestPathDag};
use crate::scalar::Scalar;

/// A family of paths or path pairs whose enumerating polynomial is summed directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Every standard pair `(P1, P2)`.
    AllStandard,
    Intersecting,
    Disjoint,
    Agree,
    /// Single-intersection or reversing pairs.
    Disagree,
    /// `(s1, v)`- and `(s2, v)`-paths meeting only at `v`.
    SourceLinkage(usize),
    /// `(v, t1)`- and `(v, t2)`-paths whose second vertices differ; a trivial
    /// path has no second vertex and differs from everything.
    RelaxedTarget(usize),
    /// Standard pairs through `v` where the vertex before `v` on `P1` is the
    /// vertex after `v` on `P2`.
    Mixed(usize),
}

/// Every path of the two DAGs a scope allows, enumerated once.
#[derive(Clone, Debug)]
pub struct BruteForce {
    standard: [Vec<Path>; 2],
    prefixes: [Vec<Vec<Path>>; 2],
    suffixes: [Vec<Vec<Path>>; 2],
    classes: Vec<PairClass>,
}

impl BruteForce {
    /// Fails once more than `limit` paths or standard pairs would be stored.
    pub fn new(scope: &PairScope<'_>, limit: usize) -> Result<Self> {
        let n = scope.n();
        let mut budget = Budget { left: limit, limit };
        let mut prefixes = [vec![Vec::new(); n], vec![Vec::new(); n]];
        let mut suffixes = [vec![Vec::new(); n], vec![Vec::new(); n]];
        for i in 0..2 {
            let dag = scope.dags[i];
            if scope.is_alive(scope.sources[i]) {
                walk(dag, scope, true, &mut Path::trivial(scope.sources[i]), &mut prefixes[i], &mut budget)?;
            }
            if scope.is_alive(scope.targets[i]) {
                walk(dag, scope, false, &mut Path::trivial(scope.targets[i]), &mut suffixes[i], &mut budget)?;
            }
            for list in &mut suffixes[i] {
                for p in list.iter_mut() {
                    p.vertices.reverse();
                    p.edges.reverse();
                }
            }
        }
        let standard = [prefixes[0][scope.targets[0]].clone(), prefixes[1][scope.targets[1]].clone()];
        let pairs = standard[0].len() * standard[1].len();
        if pairs > limit {
            return Err(Error::LimitExceeded { limit });
        }
        let mut classes = Vec::with_capacity(pairs);
        for p1 in &standard[0] {
            for p2 in &standard[1] {
                classes.push(classify_pair(&p1.vertices, &p2.vertices));
            }
        }
        Ok(BruteForce { standard, prefixes, suffixes, classes })
    }

    /// Standard `(s_i, t_i)`-paths.
    pub fn standard(&self, i: usize) -> &[Path] {
        &self.standard[i]
    }

    /// Standard pairs with their classes.
    pub fn pairs(&self) -> impl Iterator<Item = (&Path, &Path, PairClass)> + '_ {
        let width = self.standard[1].len();
        self.classes
            .iter()
            .enumerate()
            .map(move |(idx, &c)| (&self.standard[0][idx / width], &self.standard[1][idx % width], c))
    }

    /// Sum over `(s_i, v)`-paths.
    pub fn left<S: Scalar>(&self, i: usize, v: usize, a: &Assignment<S>) -> S {
        self.prefixes[i][v].iter().fold(S::zero(), |acc, p| acc + monomial(p, a))
    }

    /// Sum over `(v, t_i)`-paths.
    pub fn right<S: Scalar>(&self, i: usize, v: usize, a: &Assignment<S>) -> S {
        self.suffixes[i][v].iter().fold(S::zero(), |acc, p| acc + monomial(p, a))
    }

    pub fn eval<S: Scalar>(&self, family: Family, a: &Assignment<S>) -> S {
        let mut total = S::zero();
        let mut add = |p1: &Path, p2: &Path| total = total + monomial(p1, a) * monomial(p2, a);
        let select = |keep: &dyn Fn(PairClass) -> bool, add: &mut dyn FnMut(&Path, &Path)| {
            for (p1, p2, c) in self.pairs() {
                if keep(c) {
                    add(p1, p2);
                }
            }
        };
        match family {
            Family::AllStandard => select(&|_| true, &mut add),
            Family::Intersecting => select(&|c| c.is_intersecting(), &mut add),
            Family::Disjoint => select(&|c| !c.is_intersecting(), &mut add),
            Family::Agree => select(&|c| c == PairClass::Agree, &mut add),
            Family::Disagree => select(&|c| c.is_disagreeing(), &mut add),
            Family::SourceLinkage(v) => {
                for p1 in &self.prefixes[0][v] {
                    for p2 in &self.prefixes[1][v] {
                        let meets_elsewhere = p1.vertices[..p1.vertices.len() - 1].iter().any(|x| p2.contains(*x));
                        if !meets_elsewhere {
                            add(p1, p2);
                        }
                    }
                }
            }
            Family::RelaxedTarget(v) => {
                for p1 in &self.suffixes[0][v] {
                    for p2 in &self.suffixes[1][v] {
                        let distinct = match (p1.vertices.get(1), p2.vertices.get(1)) {
                            (Some(x), Some(y)) => x != y,
                            _ => true,
                        };
                        if distinct {
                            add(p1, p2);
                        }
                    }
                }
            }
            Family::Mixed(v) => {
                for p1 in &self.standard[0] {
                    let Some(pos1) = p1.vertices.iter().position(|&x| x == v) else {
                        continue;
                    };
                    if pos1 == 0 {
                        continue;
                    }
                    let before = p1.vertices[pos1 - 1];
                    for p2 in &self.standard[1] {
                        let Some(pos2) = p2.vertices.iter().position(|&x| x == v) else {
                            continue;
                        };
                        if p2.vertices.get(pos2 + 1) == Some(&before) {
                            add(p1, p2);
                        }
                    }
                }
            }
        }
        total
    }

    /// Largest total edge count of a standard pair.
    pub fn max_pair_degree(&self) -> usize {
        let longest = |i: usize| self.standard[i].iter().map(|p| p.edges.len()).max();
        match (longest(0), longest(1)) {
            (Some(a), Some(b)) => a + b,
            _ => 0,
        }
    }
}

struct Budget {
    left: usize,
    limit: usize,
}

/// Depth-first walk recording every partial path at its current endpoint.
/// Forward walks follow out-arcs from a source; backward walks follow
/// in-arcs from a target and store the paths reversed.
fn walk(
    dag: &ShortestPathDag,
    scope: &PairScope<'_>,
    forward: bool,
    current: &mut Path,
    store: &mut [Vec<Path>],
    budget: &mut Budget,
) -> Result<()> {
    if budget.left == 0 {
        return Err(Error::LimitExceeded { limit: budget.limit });
    }
    budget.left -= 1;
    let v = current.last();
    store[v].push(current.clone());
    let arcs = if forward { dag.out(v) } else { dag.inn(v) };
    for a in arcs {
        if scope.is_alive(a.vertex()) {
            current.vertices.push(a.vertex());
            current.edges.push(a.edge());
            walk(dag, scope, forward, current, store, budget)?;
            current.vertices.pop();
            current.edges.pop();
        }
    }
    Ok(())
}

fn monomial<S: Scalar>(p: &Path, a: &Assignment<S>) -> S {
    p.edges.iter().fold(S::one(), |acc, &e| acc * a[e])
}

/// One-shot evaluation of a family over a scope.
pub fn brute_eval<S: Scalar>(scope: &PairScope<'_>, family: Family, a: &Assignment<S>, limit: usize) -> Result<S> {
    Ok(BruteForce::new(scope, limit)?.eval(family, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsp2::TwoPairInstance;
    use crate::field::Gf64;
    use crate::fixtures::{cross, para};
    use crate::oracle::DEFAULT_LIMIT;

    #[test]
    fn fixture_families() {
        let g = para();
        let inst = TwoPairInstance::new(&g).unwrap();
        let a = Assignment::from_fn(g.m(), |e| Gf64(e as u64 + 2));
        let all = brute_eval(&inst.scope(), Family::AllStandard, &a, DEFAULT_LIMIT).unwrap();
        assert_eq!(all, a[0] * a[1] * a[2] * a[3]);

        let g = cross();
        let inst = TwoPairInstance::new(&g).unwrap();
        let a = Assignment::from_fn(g.m(), |e| Gf64(e as u64 + 2));
        let bf = BruteForce::new(&inst.scope(), DEFAULT_LIMIT).unwrap();
        assert_eq!(bf.eval(Family::Disjoint, &a), Gf64::ZERO);
        assert_eq!(bf.eval(Family::Intersecting, &a), bf.eval(Family::AllStandard, &a));
        assert_eq!(bf.max_pair_degree(), 4);
    }
}
