use std::fmt::Write;

use super::{Edge, Graph, Mode};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    /// Skip the weak-connectivity check. Some generated instances (for
    /// example a clique reduction over a graph with an isolated vertex) are
    /// legitimately disconnected.
    pub allow_disconnected: bool,
}

/// Parse and fully validate a graph file.
///
/// ```text
/// # comment
/// n m mode k
/// s_1 t_1        (k lines)
/// u v w          (m lines, 0-based ids)
/// ```
pub fn load_graph(text: &str) -> Result<Graph> {
    load_graph_with(text, LoadOptions::default())
}

pub fn load_graph_with(text: &str, options: LoadOptions) -> Result<Graph> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header line"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(Error::parse(line_no, "header must be `n m mode k`"));
    }
    let n = parse_num::<usize>(fields[0], line_no, "n")?;
    let m = parse_num::<usize>(fields[1], line_no, "m")?;
    let mode = match fields[2] {
        "dag" => Mode::Dag,
        "undirected" => Mode::Undirected,
        other => return Err(Error::parse(line_no, format!("unknown mode `{other}`"))),
    };
    let k = parse_num::<usize>(fields[3], line_no, "k")?;

    let mut terminals = Vec::with_capacity(k);
    for _ in 0..k {
        let (line_no, line) = lines.next().ok_or_else(|| Error::parse(line_no, "missing terminal line"))?;
        let [s, t] = parse_fields::<2>(line, line_no)?;
        terminals.push((parse_num(s, line_no, "source")?, parse_num(t, line_no, "target")?));
    }

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or_else(|| Error::parse(line_no, "missing edge line"))?;
        let [u, v, w] = parse_fields::<3>(line, line_no)?;
        let weight: i128 = parse_num(w, line_no, "weight")?;
        let u = parse_num(u, line_no, "vertex")?;
        let v = parse_num(v, line_no, "vertex")?;
        if weight <= 0 {
            return Err(Error::NonpositiveWeight { edge: edges.len(), u, v });
        }
        let weight = u64::try_from(weight).map_err(|_| Error::parse(line_no, "weight exceeds 64 bits"))?;
        edges.push(Edge { u, v, weight });
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::parse(line_no, "trailing content after the declared edges"));
    }

    let graph = Graph::new(n, mode, edges, terminals)?;
    if !options.allow_disconnected {
        graph.check_connected()?;
    }
    Ok(graph)
}

fn parse_fields<const N: usize>(line: &str, line_no: usize) -> Result<[&str; N]> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    fields.try_into().map_err(|_| Error::parse(line_no, format!("expected {N} fields")))
}

fn parse_num<T: std::str::FromStr>(field: &str, line_no: usize, what: &str) -> Result<T> {
    field.parse().map_err(|_| Error::parse(line_no, format!("invalid {what} `{field}`")))
}

pub(super) fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {} {}", g.n(), g.m(), g.mode(), g.k()).unwrap();
    for (s, t) in g.terminals() {
        writeln!(out, "{s} {t}").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.weight).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CROSS: &str = "# s1=0 s2=1 v=2 t1=3 t2=4\n5 4 dag 2\n0 3\n1 4\n0 2 1\n1 2 1\n2 3 1\n2 4 1\n";

    #[test]
    fn loads_cross() {
        let g = load_graph(CROSS).unwrap();
        assert_eq!((g.n(), g.m(), g.k()), (5, 4, 2));
        assert_eq!(g.terminals(), &[(0, 3), (1, 4)]);
    }

    #[test]
    fn roundtrips_text() {
        let g = load_graph(CROSS).unwrap();
        let again = load_graph(&g.to_text()).unwrap();
        assert_eq!(again.edges(), g.edges());
        assert_eq!(again.terminals(), g.terminals());
    }

    #[test]
    fn reports_errors() {
        assert_eq!(
            load_graph("2 1 dag 1\n0 1\n0 1 0\n").unwrap_err(),
            Error::NonpositiveWeight { edge: 0, u: 0, v: 1 }
        );
        assert_eq!(load_graph("2 2 dag 0\n0 1 1\n1 0 1\n").unwrap_err(), Error::CycleDetected);
        assert_eq!(load_graph("4 1 undirected 0\n0 1 1\n").unwrap_err(), Error::NotConnected);
        assert!(load_graph_with("4 1 undirected 0\n0 1 1\n", LoadOptions { allow_disconnected: true }).is_ok());
        assert!(matches!(load_graph("2 1 cyclic 0\n0 1 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load_graph("2 2 dag 0\n0 1 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(load_graph("2 1 dag 0\n0 x 1\n"), Err(Error::Parse { line: 2, .. })));
    }
}
