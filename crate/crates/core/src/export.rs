//! graph6, DOT and JSON output for Cayley graphs.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Largest vertex count expressible in the one-byte graph6 header.
pub const GRAPH6_MAX_N: usize = 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    Dot,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" => Ok(Format::Graph6),
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse {
                input: other.to_string(),
                position: 0,
                message: "expected graph6, dot or json".into(),
            }),
        }
    }
}

/// Short-form graph6: header byte `63 + n`, then the upper triangle in
/// column order `(0,1), (0,2), (1,2), (0,3), …`, six bits per byte
/// (most significant first), zero-padded, each byte offset by 63.
pub fn graph6(graph: &SimpleGraph) -> Result<String> {
    let n = graph.n();
    if n > GRAPH6_MAX_N {
        return Err(Error::Unsupported(format!(
            "graph6 short form supports at most {GRAPH6_MAX_N} vertices, got {n}"
        )));
    }
    let mut out = String::new();
    out.push((63 + n as u8) as char);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | graph.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((63 + chunk) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((63 + (chunk << (6 - filled))) as char);
    }
    Ok(out)
}

/// Inverse of [`graph6`] for the short form.
pub fn parse_graph6(s: &str) -> Result<SimpleGraph> {
    let bytes = s.trim_end().as_bytes();
    let (&head, body) = bytes
        .split_first()
        .ok_or_else(|| Error::Format("empty graph6 string".into()))?;
    if !(63..=63 + GRAPH6_MAX_N as u8).contains(&head) {
        return Err(Error::Format(format!("unsupported graph6 header byte {head}")));
    }
    let n = (head - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(Error::Format(format!(
            "graph6 body has {} bytes, expected {}",
            body.len(),
            bits.div_ceil(6)
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6];
            if !(63..=126).contains(&byte) {
                return Err(Error::Format(format!("invalid graph6 byte {byte}")));
            }
            if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    SimpleGraph::from_edges(n, edges)
}

/// Undirected DOT with numeric vertex ids and element tokens as labels.
pub fn dot(graph: &CayleyGraph) -> String {
    let mut out = String::new();
    let set = graph.connection().tokens().join(",");
    writeln!(out, "graph \"Cay({}, {{{}}})\" {{", graph.group(), set).unwrap();
    for (v, token) in graph.vertex_tokens().iter().enumerate() {
        writeln!(out, "  {v} [label=\"{token}\"];").unwrap();
    }
    for (u, v) in graph.graph().edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub vertices: Vec<String>,
    pub group_spec: String,
    pub connection_set: Vec<String>,
}

pub fn to_json(graph: &CayleyGraph) -> GraphJson {
    GraphJson {
        n: graph.n(),
        edges: graph.graph().edges(),
        vertices: graph.vertex_tokens(),
        group_spec: graph.group().to_string(),
        connection_set: graph.connection().tokens(),
    }
}

pub fn json(graph: &CayleyGraph) -> Result<String> {
    Ok(serde_json::to_string(&to_json(graph))?)
}

/// Rebuilds the adjacency structure from a [`json`] export.
pub fn import_json(s: &str) -> Result<SimpleGraph> {
    let parsed: GraphJson = serde_json::from_str(s)?;
    SimpleGraph::from_edges(parsed.n, parsed.edges)
}

pub fn export_graph(graph: &CayleyGraph, format: Format) -> Result<String> {
    match format {
        Format::Graph6 => graph6(graph.graph()),
        Format::Dot => Ok(dot(graph)),
        Format::Json => json(graph),
    }
}
