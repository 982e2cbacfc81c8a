//! Text formats.
//!
//! * Edge list: a header line `n m`, then `m` lines `u v` (0-based).
//! * Instance document: a `//` header comment followed by a JSON object with
//!   keys in the fixed order `name, n, edges, k, attackers, colors`. Vertices
//!   are 0-based, colors 1-based. `name` and `attackers` are omitted when absent.
//! * Coloring document: a JSON object `{"k": .., "colors": [[..], ..]}`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{ColorSet, Multicoloring, MAX_PALETTE};
use crate::constructions::ColoredInstance;
use crate::graph::Graph;

pub const INSTANCE_HEADER: &str =
    "// hrcolor instance: vertices are 0-based, colors are 1-based";

/// Decode failure with the offending field or line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{context}: self-loop at vertex {vertex}")]
    SelfLoop { context: String, vertex: usize },
    #[error("{context}: duplicate edge {u}-{v}")]
    DuplicateEdge { context: String, u: usize, v: usize },
    #[error("{context}: vertex {vertex} out of range 0..{n}")]
    VertexRange { context: String, vertex: i64, n: usize },
    #[error("{context}: color {color} out of range 1..={k}")]
    ColorRange { context: String, color: i64, k: usize },
    #[error("{context}: colors must be strictly ascending")]
    ColorOrder { context: String },
    #[error("colors: {found} entries for n = {n}")]
    LengthMismatch { found: usize, n: usize },
    #[error("{context}: palette size {k} must be in 1..={MAX_PALETTE}")]
    Palette { context: String, k: usize },
    #[error("{context}: expected {expected} edges, found {found}")]
    EdgeCount { context: String, expected: usize, found: usize },
}

impl DecodeError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            DecodeError::Syntax(_) => "syntax",
            DecodeError::SelfLoop { .. } => "self-loop",
            DecodeError::DuplicateEdge { .. } => "duplicate-edge",
            DecodeError::VertexRange { .. } => "vertex-range",
            DecodeError::ColorRange { .. } => "color-range",
            DecodeError::ColorOrder { .. } => "color-order",
            DecodeError::LengthMismatch { .. } => "length-mismatch",
            DecodeError::Palette { .. } => "palette",
            DecodeError::EdgeCount { .. } => "edge-count",
        }
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn color_lists(coloring: &Multicoloring) -> String {
    let lists = coloring
        .assignment()
        .iter()
        .map(|s| format!("[{}]", join(s.to_one_based())));
    format!("[{}]", join(lists))
}

/// Canonical rendering of a colored instance. Byte-identical for equal values.
pub fn encode_instance(inst: &ColoredInstance) -> String {
    let mut out = String::new();
    out.push_str(INSTANCE_HEADER);
    out.push_str("\n{\n");
    if let Some(name) = &inst.name {
        let quoted = serde_json::to_string(name).expect("strings serialize");
        writeln!(out, "  \"name\": {quoted},").unwrap();
    }
    writeln!(out, "  \"n\": {},", inst.graph.num_vertices()).unwrap();
    let edges = inst.graph.edges().into_iter().map(|(u, v)| format!("[{u},{v}]"));
    writeln!(out, "  \"edges\": [{}],", join(edges)).unwrap();
    writeln!(out, "  \"k\": {},", inst.coloring.palette_size()).unwrap();
    if let Some(a) = inst.attackers {
        writeln!(out, "  \"attackers\": {a},").unwrap();
    }
    writeln!(out, "  \"colors\": {}", color_lists(&inst.coloring)).unwrap();
    out.push_str("}\n");
    out
}

/// Renders a bare coloring as a coloring document.
pub fn encode_coloring(coloring: &Multicoloring) -> String {
    format!(
        "{{\n  \"k\": {},\n  \"colors\": {}\n}}\n",
        coloring.palette_size(),
        color_lists(coloring)
    )
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with("//"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDocument {
    name: Option<String>,
    n: usize,
    edges: Vec<(i64, i64)>,
    k: usize,
    attackers: Option<usize>,
    colors: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ColoringDocument {
    k: usize,
    colors: Vec<Vec<i64>>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, DecodeError> {
    serde_json::from_str(&strip_comments(text)).map_err(|e| DecodeError::Syntax(e.to_string()))
}

fn vertex(x: i64, n: usize, context: impl Fn() -> String) -> Result<usize, DecodeError> {
    usize::try_from(x)
        .ok()
        .filter(|&v| v < n)
        .ok_or_else(|| DecodeError::VertexRange {
            context: context(),
            vertex: x,
            n,
        })
}

fn build_graph(
    n: usize,
    edges: &[(i64, i64)],
    context: impl Fn(usize) -> String,
) -> Result<Graph, DecodeError> {
    let mut seen = BTreeSet::new();
    let mut checked = Vec::with_capacity(edges.len());
    for (i, &(x, y)) in edges.iter().enumerate() {
        let u = vertex(x, n, || context(i))?;
        let v = vertex(y, n, || context(i))?;
        if u == v {
            return Err(DecodeError::SelfLoop {
                context: context(i),
                vertex: u,
            });
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(DecodeError::DuplicateEdge {
                context: context(i),
                u: key.0,
                v: key.1,
            });
        }
        checked.push(key);
    }
    Ok(Graph::new(n, checked).expect("edges validated above"))
}

fn build_coloring(k: usize, colors: &[Vec<i64>]) -> Result<Multicoloring, DecodeError> {
    if k == 0 || k > MAX_PALETTE {
        return Err(DecodeError::Palette {
            context: "k".into(),
            k,
        });
    }
    let mut assignment = Vec::with_capacity(colors.len());
    for (v, list) in colors.iter().enumerate() {
        let context = || format!("colors[{v}]");
        let mut set = ColorSet::EMPTY;
        let mut prev = 0i64;
        for &c in list {
            if c < 1 || c > k as i64 {
                return Err(DecodeError::ColorRange {
                    context: context(),
                    color: c,
                    k,
                });
            }
            if c <= prev {
                return Err(DecodeError::ColorOrder { context: context() });
            }
            prev = c;
            set = set.with(c as usize - 1);
        }
        assignment.push(set);
    }
    Ok(Multicoloring::new(k, assignment).expect("colors validated above"))
}

/// Parses and validates an instance document.
pub fn decode_instance(text: &str) -> Result<ColoredInstance, DecodeError> {
    let doc: InstanceDocument = parse_json(text)?;
    let graph = build_graph(doc.n, &doc.edges, |i| format!("edges[{i}]"))?;
    let coloring = build_coloring(doc.k, &doc.colors)?;
    if coloring.len() != doc.n {
        return Err(DecodeError::LengthMismatch {
            found: coloring.len(),
            n: doc.n,
        });
    }
    Ok(ColoredInstance::new(doc.name, graph, coloring, doc.attackers).expect("lengths agree"))
}

/// Parses a coloring document.
pub fn decode_coloring(text: &str) -> Result<Multicoloring, DecodeError> {
    let doc: ColoringDocument = parse_json(text)?;
    build_coloring(doc.k, &doc.colors)
}

/// Renders a graph as an edge list.
pub fn encode_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.num_vertices(), g.num_edges());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

fn parse_pair(line: &str, lineno: usize) -> Result<(i64, i64), DecodeError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let bad = || DecodeError::Syntax(format!("line {lineno}: expected two integers, got '{line}'"));
    match fields.as_slice() {
        [a, b] => Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

/// Parses an edge list. Blank lines and lines starting with `#` are skipped.
pub fn decode_edge_list(text: &str) -> Result<Graph, DecodeError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| DecodeError::Syntax("missing 'n m' header".into()))?;
    let (n, m) = parse_pair(header, lineno)?;
    if n < 0 || m < 0 {
        return Err(DecodeError::Syntax(format!("line {lineno}: negative count")));
    }
    let mut edges = Vec::new();
    let mut linenos = Vec::new();
    for (lineno, line) in lines {
        edges.push(parse_pair(line, lineno)?);
        linenos.push(lineno);
    }
    if edges.len() != m as usize {
        return Err(DecodeError::EdgeCount {
            context: format!("line {lineno}"),
            expected: m as usize,
            found: edges.len(),
        });
    }
    build_graph(n as usize, &edges, |i| format!("line {}", linenos[i]))
}

/// Pretty JSON for reports; field order follows the struct definition.
pub fn render_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}
