//! Edge-list text format.
//!
//! ```text
//! n m s directed|undirected
//! u v w        (m lines, w a positive decimal)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use super::{Edge, Graph, GraphError};
use crate::weights::{parse_decimal, WeightArena};

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse { line, message: message.into() }
}

struct RawEdge {
    line: usize,
    tail: usize,
    head: usize,
    mantissa: u128,
    digits: u32,
}

/// Parses the edge-list format into a graph with its own arena.
///
/// The arena uses the largest number of fractional digits among the weights,
/// so every weight is stored exactly.
pub fn parse_graph(text: &str) -> Result<(Graph, WeightArena), GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(parse_err(hline, "header must be `n m s directed|undirected`"));
    }
    let num = |s: &str, what: &str| {
        s.parse::<usize>().map_err(|_| parse_err(hline, format!("bad {what} `{s}`")))
    };
    let n = num(fields[0], "vertex count")?;
    let m = num(fields[1], "edge count")?;
    let s = num(fields[2], "source")?;
    let directed = match fields[3] {
        "directed" => true,
        "undirected" => false,
        other => return Err(parse_err(hline, format!("expected directed|undirected, got `{other}`"))),
    };
    if n == 0 || s >= n {
        return Err(parse_err(hline, format!("source {s} outside 0..{n}")));
    }

    let mut raw = Vec::with_capacity(m);
    for (line, text) in lines.by_ref().take(m) {
        let f: Vec<&str> = text.split_whitespace().collect();
        if f.len() != 3 {
            return Err(parse_err(line, "expected `u v w`"));
        }
        let vertex = |s: &str| match s.parse::<usize>() {
            Ok(v) if v < n => Ok(v),
            _ => Err(parse_err(line, format!("bad vertex `{s}`"))),
        };
        let tail = vertex(f[0])?;
        let head = vertex(f[1])?;
        if f[2].starts_with('-') {
            return Err(parse_err(line, "nonpositive weight"));
        }
        let (mantissa, digits) =
            parse_decimal(f[2]).ok_or_else(|| parse_err(line, format!("bad weight `{}`", f[2])))?;
        if mantissa == 0 {
            return Err(parse_err(line, "nonpositive weight"));
        }
        raw.push(RawEdge { line, tail, head, mantissa, digits });
    }
    if raw.len() < m {
        return Err(parse_err(hline, format!("header promises {m} edges, found {}", raw.len())));
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "trailing line after the last edge"));
    }

    let decimals = raw.iter().map(|e| e.digits).max().unwrap_or(0);
    if decimals > 18 {
        let e = raw.iter().find(|e| e.digits == decimals).unwrap();
        return Err(parse_err(e.line, "more than 18 fractional digits"));
    }
    let arena = WeightArena::new(decimals);
    let mut edges = Vec::with_capacity(m);
    for e in &raw {
        let scaled = 10u128
            .checked_pow(decimals - e.digits)
            .and_then(|f| e.mantissa.checked_mul(f))
            .ok_or_else(|| parse_err(e.line, "weight out of range"))?;
        edges.push(Edge { tail: e.tail, head: e.head, weight: arena.insert_scaled(scaled) });
    }
    let g = if directed {
        Graph::directed(&arena, n, s, edges)
    } else {
        Graph::undirected(&arena, n, s, edges)
    };
    let g = g.map_err(|err| match err {
        GraphError::Unreachable(v) => parse_err(hline, format!("vertex {v} is unreachable from {s}")),
        other => other,
    })?;
    Ok((g, arena))
}

/// Writes the graph in the edge-list format. Undirected graphs emit each edge once.
pub fn emit_graph(g: &Graph, arena: &WeightArena) -> String {
    let audit = arena.audit();
    let step = if g.is_directed() { 1 } else { 2 };
    let kind = if g.is_directed() { "directed" } else { "undirected" };
    let mut out = String::new();
    writeln!(out, "{} {} {} {}", g.n(), g.m() / step, g.source(), kind).unwrap();
    for e in g.edges().iter().step_by(step) {
        writeln!(out, "{} {} {}", e.tail, e.head, audit.to_decimal(e.weight)).unwrap();
    }
    out
}
