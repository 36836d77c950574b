//! Plain-text graph files.
//!
//! ```text
//! p edge <n> <m>
//! e <u> <v>
//! ```
//!
//! Endpoints are 1-based. The writer emits `u < v` in lexicographic order with
//! LF endings. The reader also accepts `c` comment lines, blank lines and
//! edges in any order.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.m());
    writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_number(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line, "second problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(parse_err(
                            line,
                            format!("expected 'p edge', found {other:?}"),
                        ))
                    }
                }
                let n = parse_number(toks.next(), line, "vertex count")?;
                let m = parse_number(toks.next(), line, "edge count")?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| parse_err(line, "edge before problem line"))?;
                let u = parse_number(toks.next(), line, "endpoint")?;
                let v = parse_number(toks.next(), line, "endpoint")?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(parse_err(
                        line,
                        format!("endpoint outside 1..={n} in edge {u} {v}"),
                    ));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(parse_err(line, format!("unknown line type '{other}'"))),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing problem line"))?;
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, &edges).map_err(|e| parse_err(0, e.to_string()))
}
