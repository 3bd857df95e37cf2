use std::fmt::Write;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A `k`-partite graph with parts `V_0..V_{k-1}` of `n` vertices each.
/// Vertex `a` of part `i` has global index `i * n + a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CliqueRecord", try_from = "CliqueRecord")]
pub struct CliqueInstance {
    k: usize,
    n: usize,
    adjacency: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct CliqueRecord {
    k: usize,
    n: usize,
    /// `[i, a, j, b]` with `i < j`.
    edges: Vec<[usize; 4]>,
}

impl CliqueInstance {
    pub fn empty(k: usize, n: usize) -> Self {
        CliqueInstance { k, n, adjacency: vec![false; k * n * k * n] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn global(&self, part: usize, index: usize) -> usize {
        part * self.n + index
    }

    pub fn part_of(&self, global: usize) -> usize {
        global / self.n
    }

    /// Adjacency of vertex `a` in part `i` and vertex `b` in part `j`; always false within a part.
    pub fn adjacent(&self, i: usize, a: usize, j: usize, b: usize) -> bool {
        self.adjacent_global(self.global(i, a), self.global(j, b))
    }

    pub fn adjacent_global(&self, x: usize, y: usize) -> bool {
        self.adjacency[x * self.k * self.n + y]
    }

    pub fn add_edge(&mut self, i: usize, a: usize, j: usize, b: usize) {
        self.try_add_edge(i, a, j, b).expect("valid cross-part edge");
    }

    pub fn try_add_edge(&mut self, i: usize, a: usize, j: usize, b: usize) -> Result<()> {
        if i >= self.k || j >= self.k || a >= self.n || b >= self.n {
            return Err(Error::InvalidClique(format!("edge ({i},{a})-({j},{b}) out of range")));
        }
        if i == j {
            return Err(Error::InvalidClique(format!("edge ({i},{a})-({j},{b}) lies inside one part")));
        }
        let (x, y) = (self.global(i, a), self.global(j, b));
        let size = self.k * self.n;
        self.adjacency[x * size + y] = true;
        self.adjacency[y * size + x] = true;
        Ok(())
    }

    /// Cross-part edges as `(i, a, j, b)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.k {
            for j in i + 1..self.k {
                for a in 0..self.n {
                    for b in 0..self.n {
                        if self.adjacent(i, a, j, b) {
                            out.push((i, a, j, b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Each cross-part pair adjacent independently with probability `p`.
    pub fn random<R: Rng + ?Sized>(k: usize, n: usize, p: f64, rng: &mut R) -> Self {
        let mut c = CliqueInstance::empty(k, n);
        for i in 0..k {
            for j in i + 1..k {
                for a in 0..n {
                    for b in 0..n {
                        if rng.gen_bool(p) {
                            c.add_edge(i, a, j, b);
                        }
                    }
                }
            }
        }
        c
    }

    /// Text format: `k n`, then one `i a j b` line per edge, 0-based.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `k n` header"))?;
        let nums = parse_nums(header, line_no)?;
        let &[k, n] = nums.as_slice() else {
            return Err(Error::parse(line_no, "header must be `k n`"));
        };
        let mut c = CliqueInstance::empty(k, n);
        for (line_no, line) in lines {
            let nums = parse_nums(line, line_no)?;
            let &[i, a, j, b] = nums.as_slice() else {
                return Err(Error::parse(line_no, "edge line must be `i a j b`"));
            };
            c.try_add_edge(i, a, j, b)?;
        }
        Ok(c)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.k, self.n);
        for (i, a, j, b) in self.edges() {
            writeln!(out, "{i} {a} {j} {b}").unwrap();
        }
        out
    }
}

fn parse_nums(line: &str, line_no: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|f| f.parse().map_err(|_| Error::parse(line_no, format!("invalid number `{f}`"))))
        .collect()
}

impl From<CliqueInstance> for CliqueRecord {
    fn from(c: CliqueInstance) -> Self {
        CliqueRecord { k: c.k, n: c.n, edges: c.edges().into_iter().map(|(i, a, j, b)| [i, a, j, b]).collect() }
    }
}

impl TryFrom<CliqueRecord> for CliqueInstance {
    type Error = Error;
    fn try_from(r: CliqueRecord) -> Result<Self> {
        let mut c = CliqueInstance::empty(r.k, r.n);
        for [i, a, j, b] in r.edges {
            c.try_add_edge(i, a, j, b)?;
        }
        Ok(c)
    }
}
