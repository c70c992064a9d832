//! Edge-list text format.
//!
//! ```text
//! n 5
//! left 2
//! # block X 0..2
//! 0 2
//! 0 3
//! ```
//!
//! The first line gives the vertex count. An optional `left L` line marks
//! vertices `0..L` as the left side of a bipartite host. Edges follow one per
//! line as `u v`. On output edges are written with `u < v` in lexicographic
//! order; on input any order is accepted, and blank lines and `#` comments
//! are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, SideLabeling};

/// Renders `g`, an optional prefix side labeling, and extra comment lines
/// (written verbatim after a `# `).
pub fn format_edge_list(g: &Graph, sides: Option<&SideLabeling>, comments: &[String]) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    if let Some(l) = sides.and_then(SideLabeling::as_prefix) {
        let _ = writeln!(out, "left {l}");
    }
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u, e.v);
    }
    out
}

/// A parsed edge-list document.
#[derive(Clone, Debug)]
pub struct EdgeListDoc {
    pub graph: Graph,
    pub sides: Option<SideLabeling>,
}

pub fn parse_edge_list(text: &str) -> Result<EdgeListDoc> {
    let mut n: Option<usize> = None;
    let mut left: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| err(format!("expected a non-negative integer, found `{s}`")))
        };
        match fields.as_slice() {
            ["n", count] => {
                if n.is_some() {
                    return Err(err("duplicate `n` line".into()));
                }
                n = Some(num(count)?);
            }
            ["left", l] => {
                if n.is_none() {
                    return Err(err("`left` before `n`".into()));
                }
                left = Some(num(l)?);
            }
            [a, b] => {
                if n.is_none() {
                    return Err(err("edge before `n` line".into()));
                }
                edges.push((line_no, num(a)?, num(b)?));
            }
            _ => return Err(err(format!("unrecognized line `{line}`"))),
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 1,
        msg: "missing `n` line".into(),
    })?;
    let mut graph = Graph::try_empty(n)?;
    for (line, a, b) in edges {
        let e = Edge::new(a, b).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
        graph.check_edge(e).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
        graph.add_edge(e);
    }
    let sides = match left {
        Some(l) if l > n => {
            return Err(Error::Parse {
                line: 0,
                msg: format!("left side of size {l} exceeds n = {n}"),
            })
        }
        Some(l) => Some(SideLabeling::prefix(l, n - l)),
        None => None,
    };
    Ok(EdgeListDoc { graph, sides })
}
