//! Hardness-instance generators: covering families and the two clique reductions.

mod clique;
mod covering;
mod kdsp;
mod pdp;

pub use clique::CliqueInstance;
pub use covering::{covering_family, CoveringFamily};
pub use kdsp::clique_to_kdsp;
pub use pdp::clique_to_pdp;

use serde::{Deserialize, Serialize};

use crate::graph::{sssp, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    CliqueToKdsp,
    CliqueToPdp,
}

/// Which covering list a list terminal pair encodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListTerminal {
    /// 1-based row indices.
    pub list: Vec<usize>,
    /// Index into the graph's terminal pairs.
    pub pair: usize,
}

/// Metadata written next to a generated graph so solvers can self-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub construction: Construction,
    pub terminals: Vec<(usize, usize)>,
    /// Shortest-path length of each terminal pair.
    pub expected_lengths: Vec<u128>,
    pub node_count: usize,
    pub node_bound: usize,
    pub clique: CliqueInstance,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lists: Vec<ListTerminal>,
    /// Pairs whose designed route is missing, because two consecutive rows
    /// of their list share no edge. Their expected length is only a lower
    /// bound and the pair may be unreachable.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub detour_pairs: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub graph: Graph,
    pub certificate: Certificate,
    /// For the k-DSP construction: the path `P(v)` of every `v` in part `i`, at `[i][v]`.
    pub canonical_paths: Vec<Vec<Vec<usize>>>,
}

impl ReductionInstance {
    /// Recompute distances and compare against the certificate.
    pub fn verify_certificate(&self) -> Result<(), String> {
        let cert = &self.certificate;
        if cert.terminals != self.graph.terminals() {
            return Err("terminal list differs from the graph".into());
        }
        if cert.node_count != self.graph.n() || cert.node_count > cert.node_bound {
            return Err(format!(
                "node count {} (recorded {}) exceeds bound {}",
                self.graph.n(),
                cert.node_count,
                cert.node_bound
            ));
        }
        for (i, (&(s, t), &expected)) in cert.terminals.iter().zip(&cert.expected_lengths).enumerate() {
            let got = sssp(&self.graph, s).get(t);
            let ok =
                if cert.detour_pairs.contains(&i) { got.is_none_or(|d| d >= expected) } else { got == Some(expected) };
            if !ok {
                return Err(format!("pair {i}: distance {got:?}, certificate says {expected}"));
            }
        }
        Ok(())
    }
}
