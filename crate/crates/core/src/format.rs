//! Text and JSON serialization of graphs and digraphs.
//!
//! Graph text format: a header line `n m`, then `m` lines `u v` with
//! `0 <= u < v < n`, in ascending lexicographic order, newline-terminated
//! ASCII decimal. The digraph format is identical except arcs are ordered
//! pairs without the `u < v` restriction. Layered digraphs serialize as
//! JSON objects `{"n":…, "k":…, "layers":[[…],…], "arcs":[[u,v],…]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{Digraph, LayeredDigraph};
use crate::graph::{GraphError, UGraph};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: expected two integers, got {text:?}")]
    BadLine { line: usize, text: String },
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: expected u < v in an undirected edge line")]
    NotAscendingPair { line: usize },
    #[error("line {line}: self-loop not allowed")]
    SelfLoop { line: usize },
    #[error("line {line}: lines must be in ascending lexicographic order")]
    OutOfOrder { line: usize },
    #[error("expected {expected} entry lines, found {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid layered digraph: {0}")]
    Layered(#[from] GraphError),
}

pub fn write_ugraph(g: &UGraph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn write_digraph(d: &Digraph) -> String {
    let arcs = d.arcs();
    let mut out = format!("{} {}\n", d.n(), arcs.len());
    for (u, v) in arcs {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn parse_pair(line_no: usize, text: &str) -> Result<(usize, usize), ParseError> {
    let mut it = text.split_ascii_whitespace();
    let (a, b) = match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => (a, b),
        _ => {
            return Err(ParseError::BadLine {
                line: line_no,
                text: text.to_string(),
            })
        }
    };
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|_| ParseError::BadLine {
            line: line_no,
            text: text.to_string(),
        })
    };
    Ok((parse(a)?, parse(b)?))
}

fn parse_pair_lines(input: &str) -> Result<(usize, Vec<(usize, usize)>), ParseError> {
    let mut lines = input.lines().enumerate();
    let (_, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = parse_pair(1, header)?;
    let mut pairs = Vec::with_capacity(m);
    for (idx, text) in lines {
        let line_no = idx + 1;
        if text.is_empty() {
            return Err(ParseError::BadLine {
                line: line_no,
                text: String::new(),
            });
        }
        let (u, v) = parse_pair(line_no, text)?;
        for w in [u, v] {
            if w >= n {
                return Err(ParseError::VertexOutOfRange {
                    line: line_no,
                    vertex: w,
                    n,
                });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line: line_no });
        }
        if let Some(&prev) = pairs.last() {
            if prev >= (u, v) {
                return Err(ParseError::OutOfOrder { line: line_no });
            }
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(ParseError::WrongCount {
            expected: m,
            got: pairs.len(),
        });
    }
    Ok((n, pairs))
}

pub fn parse_ugraph(input: &str) -> Result<UGraph, ParseError> {
    let (n, pairs) = parse_pair_lines(input)?;
    for (idx, &(u, v)) in pairs.iter().enumerate() {
        if u >= v {
            return Err(ParseError::NotAscendingPair { line: idx + 2 });
        }
    }
    Ok(UGraph::from_edges(n, pairs).expect("pairs validated during parse"))
}

pub fn parse_digraph(input: &str) -> Result<Digraph, ParseError> {
    let (n, pairs) = parse_pair_lines(input)?;
    // Strict ascending order already rules out duplicate arcs.
    Ok(Digraph::from_arcs(n, pairs).expect("pairs validated during parse"))
}

/// Wire form of a layered digraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayeredDigraphJson {
    pub n: usize,
    pub k: usize,
    pub layers: Vec<Vec<usize>>,
    pub arcs: Vec<(usize, usize)>,
}

impl From<&LayeredDigraph> for LayeredDigraphJson {
    fn from(d: &LayeredDigraph) -> Self {
        LayeredDigraphJson {
            n: d.host_n(),
            k: d.k(),
            layers: d.layers().to_vec(),
            arcs: d.arcs_host(),
        }
    }
}

impl TryFrom<LayeredDigraphJson> for LayeredDigraph {
    type Error = GraphError;

    fn try_from(j: LayeredDigraphJson) -> Result<Self, GraphError> {
        LayeredDigraph::from_parts(j.n, j.k, j.layers, j.arcs)
    }
}

pub fn write_layered_json(d: &LayeredDigraph) -> String {
    let mut s = serde_json::to_string_pretty(&LayeredDigraphJson::from(d))
        .expect("layered digraph serializes");
    s.push('\n');
    s
}

pub fn parse_layered_json(input: &str) -> Result<LayeredDigraph, ParseError> {
    let j: LayeredDigraphJson = serde_json::from_str(input)?;
    Ok(LayeredDigraph::try_from(j)?)
}

/// A digraph read from either supported on-disk form.
pub enum LoadedDigraph {
    Plain(Digraph),
    Layered(LayeredDigraph),
}

/// Loads a digraph file, sniffing the format: JSON objects are layered
/// digraphs, anything else is the arc-list text format.
pub fn load_digraph(input: &str) -> Result<LoadedDigraph, ParseError> {
    if input.trim_start().starts_with('{') {
        Ok(LoadedDigraph::Layered(parse_layered_json(input)?))
    } else {
        Ok(LoadedDigraph::Plain(parse_digraph(input)?))
    }
}
