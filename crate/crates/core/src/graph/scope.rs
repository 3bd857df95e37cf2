use super::{Mode, ShortestPathDag};

/// The two shortest-path DAGs of a 2-pair instance, possibly restricted.
///
/// Restriction (used by the search) keeps the original DAGs, replaces the
/// first source by the current head of the partial path and drops every
/// vertex marked dead. Paths of a restricted DAG are still shortest paths of
/// the original graph.
#[derive(Clone, Copy, Debug)]
pub struct PairScope<'a> {
    pub dags: [&'a ShortestPathDag; 2],
    pub sources: [usize; 2],
    pub targets: [usize; 2],
    pub mode: Mode,
    pub alive: Option<&'a [bool]>,
}

impl<'a> PairScope<'a> {
    pub fn new(dags: [&'a ShortestPathDag; 2], targets: [usize; 2], mode: Mode) -> Self {
        PairScope { dags, sources: [dags[0].source(), dags[1].source()], targets, mode, alive: None }
    }

    pub fn n(&self) -> usize {
        self.dags[0].n()
    }

    #[inline]
    pub fn is_alive(&self, v: usize) -> bool {
        self.alive.is_none_or(|a| a[v])
    }
}
