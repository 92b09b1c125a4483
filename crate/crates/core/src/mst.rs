//! Minimum spanning trees, and their characterization as the minimal
//! subgraphs that keep the quasi-flat zones hierarchy unchanged.

use alloc::vec::Vec;

use crate::graph::{connected_components, EdgeSet, Graph, WeightMap};
use crate::hierarchy::{hierarchy_equal, qfz};
use crate::union_find::UnionFind;
use crate::{Error, Result};

/// A subgraph `(V, edges)` of a host graph: all vertices, some edges.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningSubgraph<'g> {
    graph: &'g Graph,
    edges: EdgeSet,
}

impl<'g> SpanningSubgraph<'g> {
    pub fn new(graph: &'g Graph, edges: EdgeSet) -> Result<Self> {
        edges.check_host(graph)?;
        Ok(SpanningSubgraph { graph, edges })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn into_edges(self) -> EdgeSet {
        self.edges
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self.graph, &self.edges).region_count() == 1
    }

    pub fn is_spanning_tree(&self) -> bool {
        self.edges.len() + 1 == self.graph.vertex_count() && self.is_connected()
    }
}

/// Kruskal's algorithm. Edges are taken by increasing rank, ties by edge
/// index, so the result is deterministic.
pub fn kruskal<'g>(graph: &'g Graph, weights: &WeightMap) -> Result<SpanningSubgraph<'g>> {
    weights.check_host(graph)?;
    let n = graph.vertex_count();
    let m = graph.edge_count();
    let ranks = weights.ranks();

    let mut start = alloc::vec![0usize; m + 1];
    for &r in ranks {
        start[r as usize + 1] += 1;
    }
    for i in 1..=m {
        start[i] += start[i - 1];
    }
    let mut order = alloc::vec![0u32; m];
    for (e, &r) in ranks.iter().enumerate() {
        order[start[r as usize]] = e as u32;
        start[r as usize] += 1;
    }

    let mut uf = UnionFind::new(n);
    let mut chosen = Vec::with_capacity(n.saturating_sub(1));
    for &e in &order {
        if chosen.len() + 1 == n {
            break;
        }
        let (x, y) = graph.edge(e as usize);
        if uf.union(x, y) {
            chosen.push(e as usize);
        }
    }
    if uf.set_count() != 1 {
        return Err(Error::Disconnected { components: uf.set_count() });
    }
    let edges = EdgeSet::from_indices(m, chosen)?;
    Ok(SpanningSubgraph { graph, edges })
}

/// Sum of the raw weights of the subgraph's edges.
pub fn total_weight(subgraph: &SpanningSubgraph<'_>, weights: &WeightMap) -> Result<f64> {
    weights.check_host(subgraph.graph)?;
    let raw = weights.raw();
    Ok(subgraph.edges.iter().map(|e| raw[e]).sum())
}

/// Decides whether `candidate` is a minimum spanning tree without looking at
/// total weights: it must induce the same quasi-flat zones hierarchy as the
/// whole graph, and no single edge may be dropped while keeping both
/// connectivity and that hierarchy.
///
/// For a spanning tree every deletion disconnects, so the second test only
/// runs edge deletions on candidates with cycles.
pub fn check_mst_via_qfz(graph: &Graph, weights: &WeightMap, candidate: &SpanningSubgraph<'_>) -> Result<bool> {
    if candidate.graph != graph {
        return Err(Error::LengthMismatch { expected: graph.edge_count(), found: candidate.edges.host_edge_count() });
    }
    let components = connected_components(graph, &candidate.edges).region_count();
    if components != 1 {
        return Err(Error::NotSpanning { components });
    }
    let reference = qfz(graph, weights, None)?;
    let own = qfz(graph, weights, Some(&candidate.edges))?;
    if !hierarchy_equal(&own, &reference)? {
        return Ok(false);
    }
    if candidate.edges.len() + 1 == graph.vertex_count() {
        return Ok(true);
    }
    for u in candidate.edges.iter() {
        let reduced = candidate.edges.without(u);
        if connected_components(graph, &reduced).region_count() != 1 {
            continue;
        }
        if hierarchy_equal(&qfz(graph, weights, Some(&reduced))?, &reference)? {
            return Ok(false);
        }
    }
    Ok(true)
}
