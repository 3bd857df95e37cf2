//! Brute-force ground truth for small instances. Nothing here shares
//! algorithmic code with the fast modules beyond graph construction and
//! shortest-path DAGs.

mod brute;
mod classify;
mod covering;
mod paths;
mod solvers;

pub use brute::{brute_eval, BruteForce, Family};
pub use classify::{classify_pair, PairClass};
pub use covering::minimum_covering_size;
pub use paths::{bellman_ford, dag_paths, enum_shortest_paths, simple_paths, Path, PathSet, DEFAULT_LIMIT};
pub use solvers::{
    brute_2dsp, brute_clique, brute_kdp, brute_kdsp, brute_kedsp, find_clique, find_kdp, find_kdsp, find_kedsp,
};
