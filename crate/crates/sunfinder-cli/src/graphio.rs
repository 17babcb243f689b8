//! Graph file parsing and serialization: edge-list and DIMACS formats.

use std::collections::HashMap;
use sunfinder::{Graph, VertexOrder};
use thiserror::Error;

/// Supported on-disk graph formats.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum FileFormat {
    /// Header "n m", then m lines "u v" (0-based ids or string labels);
    /// '#' starts a comment.
    #[default]
    EdgeList,
    /// DIMACS: "p edge n m" then "e u v" lines with 1-based ids.
    Dimacs,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("unknown label {0:?} in ordering")]
    UnknownLabel(String),
    #[error("ordering is invalid: {0}")]
    BadOrdering(String),
}

/// A parsed graph plus its display labels (one per dense id) and any
/// non-fatal warnings collected along the way.
pub struct ParsedGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
    pub warnings: Vec<String>,
}

impl ParsedGraph {
    /// True when the file used string labels rather than numeric ids.
    pub fn is_labeled(&self) -> bool {
        self.labels.iter().enumerate().any(|(i, l)| l != &i.to_string())
    }
}

pub fn parse_graph(text: &str, format: FileFormat) -> Result<ParsedGraph, ParseError> {
    match format {
        FileFormat::EdgeList => parse_edge_list(text),
        FileFormat::Dimacs => parse_dimacs(text),
    }
}

fn malformed(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Malformed { line, reason: reason.into() }
}

fn parse_edge_list(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut label_ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut numeric_used = false;
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some((n, m)) = header else {
            if tokens.len() != 2 {
                return Err(malformed(lineno, "expected header \"n m\""));
            }
            let n: usize = tokens[0]
                .parse()
                .map_err(|_| malformed(lineno, "vertex count is not a number"))?;
            let m: usize = tokens[1]
                .parse()
                .map_err(|_| malformed(lineno, "edge count is not a number"))?;
            header = Some((n, m));
            continue;
        };
        if tokens.len() != 2 {
            return Err(malformed(lineno, "expected an edge \"u v\""));
        }
        if edges.len() == m {
            return Err(malformed(lineno, format!("more than {m} edges")));
        }
        let mut resolve = |tok: &str| -> Result<usize, ParseError> {
            if let Ok(v) = tok.parse::<usize>() {
                if !label_ids.is_empty() {
                    return Err(malformed(lineno, "numeric id in a labeled file"));
                }
                if v >= n {
                    return Err(malformed(lineno, format!("vertex {v} out of range 0..{n}")));
                }
                numeric_used = true;
                return Ok(v);
            }
            if numeric_used {
                return Err(malformed(lineno, "label in a numeric file"));
            }
            if let Some(&id) = label_ids.get(tok) {
                return Ok(id);
            }
            let id = labels.len();
            if id == n {
                return Err(malformed(lineno, format!("more than {n} distinct labels")));
            }
            label_ids.insert(tok.to_string(), id);
            labels.push(tok.to_string());
            Ok(id)
        };
        let u = resolve(tokens[0])?;
        let v = resolve(tokens[1])?;
        if u == v {
            return Err(malformed(lineno, format!("self-loop at vertex {u}")));
        }
        if edges.contains(&(u.min(v), u.max(v))) {
            warnings.push(format!("line {lineno}: duplicate edge {} {}", tokens[0], tokens[1]));
        } else {
            edges.push((u.min(v), u.max(v)));
        }
        // Count duplicates against the declared total so "m lines" stays true.
    }
    let Some((n, m)) = header else {
        return Err(malformed(text.lines().count().max(1), "missing header \"n m\""));
    };
    let declared_lines = edges.len() + warnings.len();
    if declared_lines != m {
        return Err(ParseError::EdgeCount { expected: m, found: declared_lines });
    }
    if labels.is_empty() {
        labels = (0..n).map(|i| i.to_string()).collect();
    } else {
        for i in labels.len()..n {
            labels.push(format!("_{i}")); // unreferenced padding vertices
        }
    }
    let graph = Graph::from_edges(n, &edges)
        .map_err(|e| malformed(0, format!("invalid edge set: {e}")))?;
    Ok(ParsedGraph { graph, labels, warnings })
}

fn parse_dimacs(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut dup = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "p" => {
                if header.is_some() {
                    return Err(malformed(lineno, "second problem line"));
                }
                if tokens.len() != 4 || tokens[1] != "edge" {
                    return Err(malformed(lineno, "expected \"p edge n m\""));
                }
                let n = tokens[2]
                    .parse()
                    .map_err(|_| malformed(lineno, "vertex count is not a number"))?;
                let m = tokens[3]
                    .parse()
                    .map_err(|_| malformed(lineno, "edge count is not a number"))?;
                header = Some((n, m));
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| {
                    malformed(lineno, "edge before the problem line")
                })?;
                if tokens.len() != 3 {
                    return Err(malformed(lineno, "expected \"e u v\""));
                }
                let parse_endpoint = |tok: &str| -> Result<usize, ParseError> {
                    let v: usize = tok
                        .parse()
                        .map_err(|_| malformed(lineno, "endpoint is not a number"))?;
                    if v < 1 || v > n {
                        return Err(malformed(lineno, format!("vertex {v} out of range 1..={n}")));
                    }
                    Ok(v - 1)
                };
                let u = parse_endpoint(tokens[1])?;
                let v = parse_endpoint(tokens[2])?;
                if u == v {
                    return Err(malformed(lineno, format!("self-loop at vertex {}", u + 1)));
                }
                if edges.contains(&(u.min(v), u.max(v))) {
                    dup.push(format!("line {lineno}: duplicate edge {} {}", u + 1, v + 1));
                } else {
                    edges.push((u.min(v), u.max(v)));
                }
            }
            other => return Err(malformed(lineno, format!("unknown line type {other:?}"))),
        }
    }
    let Some((n, m)) = header else {
        return Err(malformed(text.lines().count().max(1), "missing problem line"));
    };
    if edges.len() + dup.len() != m {
        return Err(ParseError::EdgeCount { expected: m, found: edges.len() + dup.len() });
    }
    let graph = Graph::from_edges(n, &edges)
        .map_err(|e| malformed(0, format!("invalid edge set: {e}")))?;
    let labels = (1..=n).map(|i| i.to_string()).collect();
    Ok(ParsedGraph { graph, labels, warnings: dup })
}

/// Serialize back to the given format using dense ids.
#[allow(dead_code)] // exercised by the round-trip tests
pub fn serialize_graph(g: &Graph, format: FileFormat) -> String {
    let mut out = String::new();
    match format {
        FileFormat::EdgeList => {
            out.push_str(&format!("{} {}\n", g.vertex_count(), g.edge_count()));
            for (u, v) in g.edges() {
                out.push_str(&format!("{u} {v}\n"));
            }
        }
        FileFormat::Dimacs => {
            out.push_str(&format!("p edge {} {}\n", g.vertex_count(), g.edge_count()));
            for (u, v) in g.edges() {
                out.push_str(&format!("e {} {}\n", u + 1, v + 1));
            }
        }
    }
    out
}

/// Parse an ordering given as comma- or whitespace-separated tokens. Tokens
/// are labels when the graph is labeled, 0-based dense ids otherwise.
pub fn parse_ordering(text: &str, parsed: &ParsedGraph) -> Result<VertexOrder, ParseError> {
    let labeled = parsed.is_labeled();
    let label_ids: HashMap<&str, usize> = parsed
        .labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut seq = Vec::new();
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()) {
        if tok.is_empty() {
            continue;
        }
        let id = if labeled {
            *label_ids
                .get(tok)
                .ok_or_else(|| ParseError::UnknownLabel(tok.to_string()))?
        } else {
            tok.parse::<usize>().map_err(|_| ParseError::UnknownLabel(tok.to_string()))?
        };
        seq.push(id);
    }
    if seq.len() != parsed.graph.vertex_count() {
        return Err(ParseError::BadOrdering(format!(
            "expected {} vertices, got {}",
            parsed.graph.vertex_count(),
            seq.len()
        )));
    }
    VertexOrder::candidate(seq).map_err(ParseError::BadOrdering)
}
