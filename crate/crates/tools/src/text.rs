//! Line-oriented text formats. All of them are ASCII with LF newlines; `#`
//! starts a comment that runs to the end of the line and blank lines are
//! ignored on input.
//!
//! * graph: `n m`, then `m` lines `x y w` (0-based vertices, decimal weight);
//!   edge index = line order.
//! * saliency: the graph format with the weight column holding the value.
//! * dendrogram: `n k`, then `k` lines `id level child child ...` with ids
//!   `n..n+k`, children before parents.
//! * edge list: one edge index per line, ascending.

use std::fmt::{self, Display, Write};

use qfz_core::{normalize_weights, Dendrogram, EdgeSet, Graph, WeightMap};

#[derive(Debug)]
pub enum FormatError {
    Syntax { line: usize, message: String },
    Core(qfz_core::Error),
}

impl Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Syntax { line: 0, message } => write!(f, "{message}"),
            FormatError::Syntax { line, message } => write!(f, "line {line}: {message}"),
            FormatError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<qfz_core::Error> for FormatError {
    fn from(e: qfz_core::Error) -> Self {
        FormatError::Core(e)
    }
}

type Result<T> = std::result::Result<T, FormatError>;

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(FormatError::Syntax { line, message: message.into() })
}

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_num<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token.parse().or_else(|_| syntax(line, format!("invalid {what} {token:?}")))
}

/// A parsed graph file: the graph and its weight column, unparsed.
struct RawGraph<'a> {
    graph: Graph,
    column: Vec<(usize, &'a str)>,
}

fn parse_raw(text: &str) -> Result<RawGraph<'_>> {
    let mut lines = content_lines(text);
    let Some((ln, header)) = lines.next() else {
        return syntax(0, "empty graph file");
    };
    let [n, m] = header[..] else {
        return syntax(ln, "expected header `n m`");
    };
    let n: usize = parse_num(ln, n, "vertex count")?;
    let m: usize = parse_num(ln, m, "edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut column = Vec::with_capacity(m);
    for (ln, tokens) in lines {
        let [x, y, w] = tokens[..] else {
            return syntax(ln, "expected `x y w`");
        };
        if edges.len() == m {
            return syntax(ln, format!("more than the {m} edges announced in the header"));
        }
        edges.push((parse_num(ln, x, "vertex")?, parse_num(ln, y, "vertex")?));
        column.push((ln, w));
    }
    if edges.len() < m {
        return syntax(0, format!("header announces {m} edges, file has {}", edges.len()));
    }
    Ok(RawGraph { graph: Graph::new(n, &edges)?, column })
}

/// A graph file with its decimal weights.
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: Graph,
    pub raw: Vec<f64>,
}

impl GraphFile {
    /// Dense ranks of the raw weights.
    pub fn weights(&self) -> Result<WeightMap> {
        Ok(normalize_weights(&self.graph, &self.raw)?)
    }

    /// The weight column taken verbatim as ranks; every weight must be an
    /// integer in `0..m`.
    pub fn ranks(&self) -> Result<WeightMap> {
        let ranks = self
            .raw
            .iter()
            .enumerate()
            .map(|(e, &w)| {
                if w.fract() == 0.0 && (0.0..u32::MAX as f64).contains(&w) {
                    Ok(w as u32)
                } else {
                    syntax(0, format!("weight {w} of edge {e} is not an integer rank"))
                }
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(WeightMap::from_ranks(&self.graph, ranks)?)
    }
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let RawGraph { graph, column } = parse_raw(text)?;
    let raw = column.iter().map(|&(ln, w)| parse_num(ln, w, "weight")).collect::<Result<_>>()?;
    Ok(GraphFile { graph, raw })
}

/// Writes a graph file; `weights[e]` is printed with its `Display` form.
pub fn write_graph<W: Display>(graph: &Graph, weights: &[W]) -> String {
    assert_eq!(graph.edge_count(), weights.len(), "one weight per edge");
    let mut out = String::with_capacity(16 * weights.len() + 16);
    writeln!(out, "{} {}", graph.vertex_count(), graph.edge_count()).unwrap();
    for ((x, y), w) in graph.edges().zip(weights) {
        writeln!(out, "{x} {y} {w}").unwrap();
    }
    out
}

/// Reads a saliency file: a graph file with non-negative integer values.
pub fn parse_saliency(text: &str) -> Result<(Graph, Vec<u32>)> {
    let RawGraph { graph, column } = parse_raw(text)?;
    let values = column.iter().map(|&(ln, v)| parse_num(ln, v, "saliency value")).collect::<Result<_>>()?;
    Ok((graph, values))
}

pub fn write_saliency(graph: &Graph, values: &[u32]) -> String {
    write_graph(graph, values)
}

pub fn write_dendrogram(d: &Dendrogram) -> String {
    let n = d.leaf_count();
    let mut out = String::new();
    writeln!(out, "{} {}", n, d.internal_count()).unwrap();
    for id in n..d.node_count() {
        write!(out, "{} {}", id, d.level(id)).unwrap();
        for c in d.children(id) {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Reads a dendrogram file. `depth` is the number of edges of the host graph
/// (levels must lie in `1..=depth`); the result is canonicalized.
pub fn parse_dendrogram(text: &str, depth: usize) -> Result<Dendrogram> {
    let mut lines = content_lines(text);
    let Some((ln, header)) = lines.next() else {
        return syntax(0, "empty dendrogram file");
    };
    let [n, k] = header[..] else {
        return syntax(ln, "expected header `n k`");
    };
    let n: usize = parse_num(ln, n, "leaf count")?;
    let k: usize = parse_num(ln, k, "internal node count")?;
    let mut nodes: Vec<Option<(u32, Vec<usize>)>> = vec![None; k];
    for (ln, tokens) in lines {
        if tokens.len() < 2 {
            return syntax(ln, "expected `id level child ...`");
        }
        let id: usize = parse_num(ln, tokens[0], "node id")?;
        let slot = id.checked_sub(n).and_then(|i| nodes.get_mut(i));
        let Some(slot) = slot else {
            return syntax(ln, format!("node id {id} outside {n}..{}", n + k));
        };
        if slot.is_some() {
            return syntax(ln, format!("node {id} listed twice"));
        }
        let level = parse_num(ln, tokens[1], "level")?;
        let kids = tokens[2..].iter().map(|t| parse_num(ln, t, "child id")).collect::<Result<_>>()?;
        *slot = Some((level, kids));
    }
    let nodes = nodes
        .into_iter()
        .enumerate()
        .map(|(i, node)| node.ok_or_else(|| FormatError::Syntax { line: 0, message: format!("node {} missing", n + i) }))
        .collect::<Result<Vec<_>>>()?;
    Ok(Dendrogram::from_nodes(n, depth, &nodes)?)
}

pub fn write_edge_list(edges: &EdgeSet) -> String {
    let mut out = String::new();
    for e in edges.iter() {
        writeln!(out, "{e}").unwrap();
    }
    out
}

pub fn parse_edge_list(text: &str, edge_count: usize) -> Result<EdgeSet> {
    let mut indices = Vec::new();
    for (ln, tokens) in content_lines(text) {
        for t in tokens {
            indices.push(parse_num::<usize>(ln, t, "edge index")?);
        }
    }
    Ok(EdgeSet::from_indices(edge_count, indices)?)
}

/// The graph-format view of a spanning subgraph: all vertices, only the
/// selected edges with their weights, in host edge order.
pub fn write_subgraph<W: Display>(graph: &Graph, weights: &[W], edges: &EdgeSet) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", graph.vertex_count(), edges.len()).unwrap();
    for e in edges.iter() {
        let (x, y) = graph.edge(e);
        writeln!(out, "{x} {y} {}", weights[e]).unwrap();
    }
    out
}
