use std::collections::HashSet;
use std::fmt::Write as _;

use super::{Graph, Vertex};
use crate::error::{Error, Result};

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

fn number(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    match token {
        None => parse_err(line, format!("missing {what}")),
        Some(t) => t
            .parse()
            .or_else(|_| parse_err(line, format!("{what} `{t}` is not a non-negative integer"))),
    }
}

/// Tracks edges seen so far and rejects repeats in either orientation.
struct EdgeSink {
    n: usize,
    seen: HashSet<(Vertex, Vertex)>,
    edges: Vec<(Vertex, Vertex)>,
}

impl EdgeSink {
    fn new(n: usize) -> Self {
        EdgeSink {
            n,
            seen: HashSet::new(),
            edges: Vec::new(),
        }
    }

    fn push(&mut self, u: Vertex, v: Vertex, line: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return parse_err(line, format!("edge ({u}, {v}) out of range for {} vertices", self.n));
        }
        if u == v {
            return parse_err(line, format!("self-loop at vertex {u}"));
        }
        if !self.seen.insert((u.min(v), u.max(v))) {
            return parse_err(line, format!("duplicate edge ({u}, {v})"));
        }
        self.edges.push((u, v));
        Ok(())
    }
}

/// Parses the plain edge-list format: a header `n m` followed by `m` lines
/// `u v` with 0-based ids. Blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let Some((hline, header)) = lines.next() else {
        return parse_err(1, "empty input; expected header `n m`");
    };
    let mut tokens = header.split_whitespace();
    let n = number(tokens.next(), hline, "vertex count")?;
    let m = number(tokens.next(), hline, "edge count")?;
    if tokens.next().is_some() {
        return parse_err(hline, "trailing tokens after header");
    }

    let mut sink = EdgeSink::new(n);
    let mut last_line = hline;
    for (line, content) in lines {
        last_line = line;
        if sink.edges.len() == m {
            return parse_err(line, format!("more than the declared {m} edges"));
        }
        let mut tokens = content.split_whitespace();
        let u = number(tokens.next(), line, "endpoint")?;
        let v = number(tokens.next(), line, "endpoint")?;
        if tokens.next().is_some() {
            return parse_err(line, "trailing tokens after edge");
        }
        sink.push(u, v, line)?;
    }
    if sink.edges.len() != m {
        return parse_err(
            last_line,
            format!("header declares {m} edges but {} were given", sink.edges.len()),
        );
    }
    Graph::from_edges(n, sink.edges)
}

/// Parses DIMACS `.col` text (`c` comments, `p edge n m`, `e u v` with
/// 1-based ids).
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut sink: Option<EdgeSink> = None;
    let mut declared = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("p") => {
                if sink.is_some() {
                    return parse_err(line, "second problem line");
                }
                match tokens.next() {
                    Some("edge") | Some("col") => {}
                    other => return parse_err(line, format!("unsupported problem type {other:?}")),
                }
                let n = number(tokens.next(), line, "vertex count")?;
                declared = number(tokens.next(), line, "edge count")?;
                sink = Some(EdgeSink::new(n));
            }
            Some("e") => {
                let Some(s) = sink.as_mut() else {
                    return parse_err(line, "edge before problem line");
                };
                let u = number(tokens.next(), line, "endpoint")?;
                let v = number(tokens.next(), line, "endpoint")?;
                if u == 0 || v == 0 {
                    return parse_err(line, "DIMACS vertex ids are 1-based");
                }
                s.push(u - 1, v - 1, line)?;
            }
            Some(other) => return parse_err(line, format!("unknown line type `{other}`")),
        }
    }
    let Some(sink) = sink else {
        return parse_err(text.lines().count().max(1), "missing problem line");
    };
    if sink.edges.len() != declared {
        return parse_err(
            text.lines().count().max(1),
            format!("problem line declares {declared} edges but {} were given", sink.edges.len()),
        );
    }
    Graph::from_edges(sink.n, sink.edges)
}

/// Picks the DIMACS reader if the first significant line starts with `c` or `p`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty());
    match first.and_then(|l| l.split_whitespace().next()) {
        Some("c") | Some("p") => parse_dimacs(text),
        _ => parse_edge_list(text),
    }
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
