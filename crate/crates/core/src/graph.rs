//! Graphs, edge sets, weight maps and partitions.

use alloc::vec;
use alloc::vec::Vec;

use crate::union_find::UnionFind;
use crate::{Error, Result};

/// An undirected simple graph on vertices `0..vertex_count`.
///
/// Edge `i` is the `i`-th pair handed to the constructor; the order is part
/// of the graph's identity since weight maps and edge sets index into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    /// Validates and builds a connected graph.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let graph = Self::new_allow_disconnected(vertex_count, edges)?;
        let components = connected_components(&graph, &EdgeSet::full(graph.edge_count())).region_count();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(graph)
    }

    /// Same checks as [`Graph::new`] except connectivity.
    ///
    /// Only meant for subgraph manipulation and for probing disconnected
    /// inputs; the hierarchy constructors reject disconnected graphs.
    pub fn new_allow_disconnected(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        assert!(vertex_count < u32::MAX as usize && edges.len() < u32::MAX as usize);
        let mut stored = Vec::with_capacity(edges.len());
        for (i, &(x, y)) in edges.iter().enumerate() {
            for v in [x, y] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange { edge: i, vertex: v, vertex_count });
                }
            }
            if x == y {
                return Err(Error::SelfLoop { edge: i, vertex: x });
            }
            stored.push((x as u32, y as u32));
        }

        let mut keyed: Vec<(u64, u32)> = stored
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| {
                let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                (((lo as u64) << 32) | hi as u64, i as u32)
            })
            .collect();
        keyed.sort_unstable();
        if let Some(w) = keyed.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateEdge { first: w[0].1 as usize, second: w[1].1 as usize });
        }

        Ok(Graph { vertex_count, edges: stored })
    }

    /// For generators that produce valid connected graphs by construction.
    pub(crate) fn from_trusted(vertex_count: usize, edges: Vec<(u32, u32)>) -> Self {
        debug_assert!(vertex_count > 0);
        Graph { vertex_count, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `index`, in the order given at construction.
    pub fn edge(&self, index: usize) -> (usize, usize) {
        let (x, y) = self.edges[index];
        (x as usize, y as usize)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(x, y)| (x as usize, y as usize))
    }

    pub(crate) fn raw_edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
}

/// A set of edge indices of some host graph, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    edge_count: usize,
    indices: Vec<u32>,
}

impl EdgeSet {
    pub fn empty(edge_count: usize) -> Self {
        EdgeSet { edge_count, indices: Vec::new() }
    }

    pub fn full(edge_count: usize) -> Self {
        EdgeSet { edge_count, indices: (0..edge_count as u32).collect() }
    }

    /// Builds a set over a host with `edge_count` edges; rejects out-of-range
    /// and repeated indices.
    pub fn from_indices(edge_count: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut sorted = Vec::new();
        for i in indices {
            if i >= edge_count {
                return Err(Error::EdgeOutOfRange { edge: i, edge_count });
            }
            sorted.push(i as u32);
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdgeIndex { edge: w[0] as usize });
        }
        Ok(EdgeSet { edge_count, indices: sorted })
    }

    /// Builds a set from a per-edge membership mask.
    pub fn from_mask(mask: &[bool]) -> Self {
        EdgeSet {
            edge_count: mask.len(),
            indices: mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i as u32).collect(),
        }
    }

    /// Edge count of the host graph (not the size of the set).
    pub fn host_edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, edge: usize) -> bool {
        edge < self.edge_count && self.indices.binary_search(&(edge as u32)).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.indices.iter().map(|&i| i as usize)
    }

    pub fn to_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.edge_count];
        for &i in &self.indices {
            mask[i as usize] = true;
        }
        mask
    }

    /// Copy of the set with `edge` removed.
    pub fn without(&self, edge: usize) -> Self {
        EdgeSet {
            edge_count: self.edge_count,
            indices: self.indices.iter().copied().filter(|&i| i as usize != edge).collect(),
        }
    }

    pub(crate) fn check_host(&self, graph: &Graph) -> Result<()> {
        if self.edge_count != graph.edge_count() {
            return Err(Error::LengthMismatch { expected: graph.edge_count(), found: self.edge_count });
        }
        Ok(())
    }
}

/// Edge weights: the raw values and their order-preserving integer ranks.
///
/// Ranks are what every hierarchy operation looks at; raw values are kept
/// for spanning-tree weights and for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMap {
    raw: Vec<f64>,
    rank: Vec<u32>,
}

impl WeightMap {
    /// Uses integer values directly as ranks (raw = rank).
    ///
    /// Ranks must lie in `0..edge_count` but need not be dense; saliency maps
    /// are handled this way since their values are hierarchy levels.
    pub fn from_ranks(graph: &Graph, ranks: Vec<u32>) -> Result<Self> {
        let m = graph.edge_count();
        if ranks.len() != m {
            return Err(Error::LengthMismatch { expected: m, found: ranks.len() });
        }
        if let Some((edge, &rank)) = ranks.iter().enumerate().find(|(_, &r)| r as usize >= m) {
            return Err(Error::RankOutOfRange { edge, rank, edge_count: m });
        }
        Ok(WeightMap { raw: ranks.iter().map(|&r| r as f64).collect(), rank: ranks })
    }

    pub fn raw(&self) -> &[f64] {
        &self.raw
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    /// Raw weight carried by some edge of rank `rank`, if any.
    pub fn raw_of_rank(&self, rank: u32) -> Option<f64> {
        self.rank.iter().position(|&r| r == rank).map(|i| self.raw[i])
    }

    /// Table from rank to raw weight; `NaN` for ranks no edge carries.
    pub fn rank_to_raw_table(&self) -> Vec<f64> {
        let mut table = vec![f64::NAN; self.rank.len()];
        for (&r, &w) in self.rank.iter().zip(&self.raw) {
            table[r as usize] = w;
        }
        table
    }

    pub(crate) fn check_host(&self, graph: &Graph) -> Result<()> {
        if self.rank.len() != graph.edge_count() {
            return Err(Error::LengthMismatch { expected: graph.edge_count(), found: self.rank.len() });
        }
        Ok(())
    }
}

/// Maps raw nonnegative weights to dense ranks: equal raw values share a
/// rank and the ranks used are exactly `0..k`.
pub fn normalize_weights(graph: &Graph, raw: &[f64]) -> Result<WeightMap> {
    let m = graph.edge_count();
    if raw.len() != m {
        return Err(Error::LengthMismatch { expected: m, found: raw.len() });
    }
    if let Some((edge, &value)) = raw.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::InvalidWeight { edge, value });
    }
    // -0.0 would sort below +0.0 by bit pattern
    let raw: Vec<f64> = raw.iter().map(|&v| if v == 0.0 { 0.0 } else { v }).collect();

    // nonnegative finite floats order like their bit patterns
    let mut keyed: Vec<(u64, u32)> = raw.iter().enumerate().map(|(i, v)| (v.to_bits(), i as u32)).collect();
    keyed.sort_unstable();
    let mut rank = vec![0u32; m];
    let mut current = 0u32;
    for (pos, &(bits, edge)) in keyed.iter().enumerate() {
        if pos > 0 && bits != keyed[pos - 1].0 {
            current += 1;
        }
        rank[edge as usize] = current;
    }
    Ok(WeightMap { raw, rank })
}

/// A partition of `0..len` in canonical form: region ids are numbered in
/// order of their smallest vertex, so equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<u32>,
    region_count: usize,
}

impl Partition {
    /// Canonicalizes an arbitrary labeling: vertices with equal labels share
    /// a region.
    pub fn from_labels(labels: &[u32]) -> Self {
        let bound = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
        let mut remap = vec![u32::MAX; bound];
        let mut next = 0u32;
        let labels = labels
            .iter()
            .map(|&l| {
                let slot = &mut remap[l as usize];
                if *slot == u32::MAX {
                    *slot = next;
                    next += 1;
                }
                *slot
            })
            .collect();
        Partition { labels, region_count: next as usize }
    }

    /// Builds a partition from explicit regions; every vertex must appear
    /// exactly once.
    pub fn from_regions(len: usize, regions: &[&[usize]]) -> Result<Self> {
        let mut labels = vec![u32::MAX; len];
        for (r, region) in regions.iter().enumerate() {
            for &v in region.iter() {
                if v >= len {
                    return Err(Error::InvalidPartition("region lists a vertex out of range"));
                }
                if labels[v] != u32::MAX {
                    return Err(Error::InvalidPartition("vertex listed in two regions"));
                }
                labels[v] = r as u32;
            }
        }
        if labels.contains(&u32::MAX) {
            return Err(Error::InvalidPartition("regions do not cover every vertex"));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn singletons(len: usize) -> Self {
        Partition { labels: (0..len as u32).collect(), region_count: len }
    }

    pub fn whole(len: usize) -> Self {
        Partition { labels: vec![0; len], region_count: usize::from(len > 0) }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn region_count(&self) -> usize {
        self.region_count
    }

    /// Region id of vertex `x`.
    pub fn label(&self, x: usize) -> usize {
        self.labels[x] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn same_region(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    /// Regions as sorted vertex lists, in region-id order.
    pub fn regions(&self) -> Vec<Vec<usize>> {
        let mut regions = vec![Vec::new(); self.region_count];
        for (v, &l) in self.labels.iter().enumerate() {
            regions[l as usize].push(v);
        }
        regions
    }
}

/// Connected components of the spanning subgraph `(V, edge_subset)`.
pub fn connected_components(graph: &Graph, edge_subset: &EdgeSet) -> Partition {
    assert_eq!(edge_subset.host_edge_count(), graph.edge_count(), "edge set from another graph");
    let mut uf = UnionFind::new(graph.vertex_count());
    for e in edge_subset.iter() {
        let (x, y) = graph.edge(e);
        uf.union(x, y);
    }
    let labels: Vec<u32> = (0..graph.vertex_count()).map(|v| uf.find(v) as u32).collect();
    Partition::from_labels(&labels)
}

/// Whether every region of `fine` lies inside a region of `coarse`.
pub fn refines(fine: &Partition, coarse: &Partition) -> Result<bool> {
    if fine.len() != coarse.len() {
        return Err(Error::VertexCountMismatch { left: fine.len(), right: coarse.len() });
    }
    let mut image = vec![u32::MAX; fine.region_count()];
    for (&f, &c) in fine.labels.iter().zip(&coarse.labels) {
        let slot = &mut image[f as usize];
        if *slot == u32::MAX {
            *slot = c;
        } else if *slot != c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Edges whose endpoints lie in different regions of `partition`.
pub fn cut(partition: &Partition, graph: &Graph) -> Result<EdgeSet> {
    if partition.len() != graph.vertex_count() {
        return Err(Error::VertexCountMismatch { left: partition.len(), right: graph.vertex_count() });
    }
    let indices = graph
        .raw_edges()
        .iter()
        .enumerate()
        .filter(|(_, &(x, y))| partition.labels[x as usize] != partition.labels[y as usize])
        .map(|(i, _)| i as u32)
        .collect();
    Ok(EdgeSet { edge_count: graph.edge_count(), indices })
}
