//! Deliberately naive reference implementations.
//!
//! Everything here follows the definitions literally (breadth-first search
//! per level, exhaustive enumeration, upward walks) and shares no code with
//! the fast paths it is used to check. Size guards fail loudly instead of
//! degrading.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EdgeSet, Graph, Partition, WeightMap};
use crate::hierarchy::Dendrogram;
use crate::{Error, Result};

/// Vertex limit for the per-level BFS oracles.
pub const MAX_NAIVE_VERTICES: usize = 64;
/// Vertex limit for spanning tree enumeration.
pub const MAX_ENUMERATION_VERTICES: usize = 7;

fn guard(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::TooLarge { what, size, limit });
    }
    Ok(())
}

/// Components of `(V, edges)` by breadth-first search.
fn bfs_components(n: usize, edges: &[(usize, usize)]) -> Partition {
    let mut adjacency = vec![Vec::new(); n];
    for &(x, y) in edges {
        adjacency[x].push(y);
        adjacency[y].push(x);
    }
    let mut label = vec![u32::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if label[start] != u32::MAX {
            continue;
        }
        label[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &adjacency[v] {
                if label[u] == u32::MAX {
                    label[u] = next;
                    queue.push_back(u);
                }
            }
        }
        next += 1;
    }
    Partition::from_labels(&label)
}

/// Every λ-level partition, λ = 0..=|E|, each computed from scratch.
pub fn qfz_naive(graph: &Graph, weights: &WeightMap) -> Result<Vec<Partition>> {
    guard("vertex count", graph.vertex_count(), MAX_NAIVE_VERTICES)?;
    if weights.len() != graph.edge_count() {
        return Err(Error::LengthMismatch { expected: graph.edge_count(), found: weights.len() });
    }
    let ranks = weights.ranks();
    Ok((0..=graph.edge_count())
        .map(|lambda| {
            let level_set: Vec<(usize, usize)> =
                graph.edges().enumerate().filter(|&(e, _)| (ranks[e] as usize) < lambda).map(|(_, p)| p).collect();
            bfs_components(graph.vertex_count(), &level_set)
        })
        .collect())
}

/// For each edge, the largest λ whose partition separates its endpoints.
pub fn saliency_naive(graph: &Graph, partitions: &[Partition]) -> Result<Vec<u32>> {
    if let Some(p) = partitions.iter().find(|p| p.len() != graph.vertex_count()) {
        return Err(Error::VertexCountMismatch { left: p.len(), right: graph.vertex_count() });
    }
    Ok(graph
        .edges()
        .map(|(x, y)| {
            (0..partitions.len())
                .rev()
                .find(|&lambda| !partitions[lambda].same_region(x, y))
                .map_or(0, |lambda| lambda as u32)
        })
        .collect())
}

/// All spanning trees of the graph with their total raw weight, by trying
/// every set of `|V| - 1` edges.
pub fn spanning_tree_enumerate(graph: &Graph, weights: &WeightMap) -> Result<Vec<(EdgeSet, f64)>> {
    let n = graph.vertex_count();
    guard("vertex count", n, MAX_ENUMERATION_VERTICES)?;
    let m = graph.edge_count();
    let k = n - 1;
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..k).collect();
    if k > m {
        return Ok(out);
    }
    loop {
        let chosen: Vec<(usize, usize)> = pick.iter().map(|&e| edges[e]).collect();
        if bfs_components(n, &chosen).region_count() == 1 {
            let total = pick.iter().map(|&e| weights.raw()[e]).sum();
            out.push((EdgeSet::from_indices(m, pick.iter().copied())?, total));
        }
        // next k-combination of 0..m in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| pick[i] != i + m - k) else { break };
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
    Ok(out)
}

/// Edges of the saliency map `saliency` whose value can be lowered by one
/// without changing the quasi-flat zones hierarchy. Empty for every true
/// saliency map.
///
/// Unit decrements are enough: a map squeezed between a decremented map
/// and the original has level sets squeezed between theirs, so equal
/// hierarchies at both ends force equality in between.
pub fn minimality_probe(graph: &Graph, saliency: &WeightMap) -> Result<Vec<usize>> {
    let reference = qfz_naive(graph, saliency)?;
    if saliency_naive(graph, &reference)? != saliency.ranks() {
        return Err(Error::NotSaliencyMap);
    }
    let mut violations = Vec::new();
    for (e, &value) in saliency.ranks().iter().enumerate() {
        if value == 0 {
            continue;
        }
        let mut lowered = saliency.ranks().to_vec();
        lowered[e] -= 1;
        let lowered = WeightMap::from_ranks(graph, lowered)?;
        if qfz_naive(graph, &lowered)? == reference {
            violations.push(e);
        }
    }
    Ok(violations)
}

/// Least common ancestor by walking parent links.
pub fn lca_naive(dendrogram: &Dendrogram, x: usize, y: usize) -> usize {
    let ancestors = |mut v: usize| {
        let mut chain = vec![v];
        while let Some(p) = dendrogram.parent(v) {
            chain.push(p);
            v = p;
        }
        chain
    };
    let from_x = ancestors(x);
    ancestors(y).into_iter().find(|a| from_x.contains(a)).expect("nodes share the root")
}

/// A small named weighted graph used as a worked example.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub graph: Graph,
    /// Integer weights, used verbatim as ranks.
    pub ranks: Vec<u32>,
}

impl Fixture {
    fn new(name: &str, n: usize, edges: &[(usize, usize)], ranks: &[u32]) -> Self {
        let graph = Graph::new(n, edges).expect("fixture graph is valid");
        guard("vertex count", n, 10).expect("fixtures stay small");
        Fixture { name: name.into(), graph, ranks: ranks.to_vec() }
    }

    pub fn weights(&self) -> WeightMap {
        WeightMap::from_ranks(&self.graph, self.ranks.clone()).expect("fixture ranks are in range")
    }

    /// Level partitions computed by the oracle.
    pub fn partitions(&self) -> Vec<Partition> {
        qfz_naive(&self.graph, &self.weights()).expect("fixture within oracle limits")
    }

    /// Saliency of the fixture's own hierarchy, computed by the oracle.
    pub fn saliency(&self) -> Vec<u32> {
        saliency_naive(&self.graph, &self.partitions()).expect("fixture within oracle limits")
    }

    pub fn spanning_trees(&self) -> Vec<(EdgeSet, f64)> {
        spanning_tree_enumerate(&self.graph, &self.weights()).expect("fixture within oracle limits")
    }
}

/// The single edge, path, triangle and 4-cycle examples.
pub fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture::new("single-edge", 2, &[(0, 1)], &[0]),
        Fixture::new("path", 3, &[(0, 1), (1, 2)], &[0, 1]),
        Fixture::new("triangle", 3, &[(0, 1), (1, 2), (0, 2)], &[0, 1, 2]),
        Fixture::new("four-cycle", 4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &[0, 2, 0, 3]),
    ]
}
