use core::fmt;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Graph construction: an edge `{x, x}`.
    SelfLoop { edge: usize, vertex: usize },
    /// Graph construction: the same unordered pair appears twice.
    DuplicateEdge { first: usize, second: usize },
    /// An edge endpoint is not a vertex of the graph.
    VertexOutOfRange { edge: usize, vertex: usize, vertex_count: usize },
    /// A graph must have at least one vertex.
    EmptyGraph,
    /// The graph (or subgraph) does not connect its vertex set.
    Disconnected { components: usize },
    /// An edge index does not belong to the host graph.
    EdgeOutOfRange { edge: usize, edge_count: usize },
    /// An edge index was listed twice in an edge set.
    DuplicateEdgeIndex { edge: usize },
    /// Per-edge data of the wrong length.
    LengthMismatch { expected: usize, found: usize },
    /// Two objects defined over different vertex counts.
    VertexCountMismatch { left: usize, right: usize },
    /// A weight that is negative, NaN or infinite.
    InvalidWeight { edge: usize, value: f64 },
    /// A rank outside `0..edge_count`.
    RankOutOfRange { edge: usize, rank: u32, edge_count: usize },
    /// A level parameter outside `0..=edge_count`.
    LevelOutOfRange { level: usize, max: usize },
    /// A spanning subgraph candidate that does not reach or connect every vertex.
    NotSpanning { components: usize },
    /// Input to an oracle exceeds its size guard.
    TooLarge { what: &'static str, size: usize, limit: usize },
    /// The map handed to the minimality probe is not a saliency map.
    NotSaliencyMap,
    /// A node list or partition sequence that is not a complete hierarchy.
    InvalidHierarchy(&'static str),
    /// Regions that overlap or fail to cover the vertex set.
    InvalidPartition(&'static str),
    /// Image with a zero dimension or inconsistent pixel buffer.
    InvalidImage(&'static str),
    /// Interpixel rendering needs a 4-adjacency pixel graph.
    UnsupportedAdjacency,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SelfLoop { edge, vertex } => write!(f, "edge {edge} is a self-loop on vertex {vertex}"),
            Error::DuplicateEdge { first, second } => {
                write!(f, "edges {first} and {second} join the same pair of vertices")
            }
            Error::VertexOutOfRange { edge, vertex, vertex_count } => write!(
                f,
                "edge {edge} references vertex {vertex}, but the graph has {vertex_count} vertices"
            ),
            Error::EmptyGraph => f.write_str("a graph needs at least one vertex"),
            Error::Disconnected { components } => {
                write!(f, "graph is disconnected ({components} connected components)")
            }
            Error::EdgeOutOfRange { edge, edge_count } => {
                write!(f, "edge index {edge} out of range (graph has {edge_count} edges)")
            }
            Error::DuplicateEdgeIndex { edge } => write!(f, "edge index {edge} listed twice"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} per-edge values, found {found}")
            }
            Error::VertexCountMismatch { left, right } => {
                write!(f, "vertex count mismatch: {left} vs {right}")
            }
            Error::InvalidWeight { edge, value } => {
                write!(f, "weight {value} of edge {edge} is not a finite nonnegative number")
            }
            Error::RankOutOfRange { edge, rank, edge_count } => {
                write!(f, "rank {rank} of edge {edge} is outside 0..{edge_count}")
            }
            Error::LevelOutOfRange { level, max } => write!(f, "level {level} is outside 0..={max}"),
            Error::NotSpanning { components } => write!(
                f,
                "candidate is not a connected spanning subgraph ({components} components)"
            ),
            Error::TooLarge { what, size, limit } => {
                write!(f, "{what} of {size} exceeds the oracle limit of {limit}")
            }
            Error::NotSaliencyMap => f.write_str("weight map is not a saliency map"),
            Error::InvalidHierarchy(msg) => write!(f, "invalid hierarchy: {msg}"),
            Error::InvalidPartition(msg) => write!(f, "invalid partition: {msg}"),
            Error::InvalidImage(msg) => write!(f, "invalid image: {msg}"),
            Error::UnsupportedAdjacency => {
                f.write_str("interpixel rendering requires a 4-adjacency pixel graph")
            }
        }
    }
}

impl core::error::Error for Error {}
