//! DIMACS `.col` reading and writing.
//!
//! Files use 1-based vertex numbers; they are shifted to 0-based on input and
//! back on output. Repeated `e` lines for the same unordered pair are folded
//! into one edge, since published benchmark instances contain them.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("missing `p edge V E` header")]
    MissingHeader,
    #[error("header declares {declared} edges but {parsed} distinct edges were read")]
    CountMismatch { declared: usize, parsed: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={vertex_count}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("line {0}: malformed line")]
    MalformedLine(usize),
    #[error("line {line}: {source}")]
    InvalidEdge { line: usize, source: GraphError },
}

fn parse_num(tok: Option<&str>, line: usize) -> Result<usize, DimacsError> {
    tok.and_then(|t| t.parse().ok())
        .ok_or(DimacsError::MalformedLine(line))
}

/// Parses DIMACS `.col` text.
pub fn parse_dimacs_col(text: &str) -> Result<Graph, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(DimacsError::MalformedLine(line));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    _ => return Err(DimacsError::MalformedLine(line)),
                }
                let v = parse_num(toks.next(), line)?;
                let e = parse_num(toks.next(), line)?;
                if toks.next().is_some() {
                    return Err(DimacsError::MalformedLine(line));
                }
                header = Some((v, e));
            }
            Some("e") => {
                let (vertex_count, _) = header.ok_or(DimacsError::MissingHeader)?;
                let a = parse_num(toks.next(), line)?;
                let b = parse_num(toks.next(), line)?;
                if toks.next().is_some() {
                    return Err(DimacsError::MalformedLine(line));
                }
                for vertex in [a, b] {
                    if vertex == 0 || vertex > vertex_count {
                        return Err(DimacsError::VertexOutOfRange {
                            line,
                            vertex,
                            vertex_count,
                        });
                    }
                }
                if a == b {
                    return Err(DimacsError::InvalidEdge {
                        line,
                        source: GraphError::SelfLoop(a - 1),
                    });
                }
                let (u, v): (Vertex, Vertex) = (a.min(b) - 1, a.max(b) - 1);
                edges.insert((u, v));
            }
            Some(_) => return Err(DimacsError::MalformedLine(line)),
        }
    }

    let (vertex_count, declared) = header.ok_or(DimacsError::MissingHeader)?;
    if declared != edges.len() {
        return Err(DimacsError::CountMismatch {
            declared,
            parsed: edges.len(),
        });
    }
    Ok(Graph::from_canonical(vertex_count, edges.into_iter().collect()))
}

/// Writes `g` as DIMACS `.col`: header, then edges in lexicographic order.
pub fn emit_dimacs_col(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.edge_count());
    let _ = writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}
