//! Saliency maps: per-edge level at which the two endpoints stop being
//! separated by the hierarchy.

use alloc::vec::Vec;

use crate::graph::{Graph, WeightMap};
use crate::hierarchy::{qfz, Dendrogram};
use crate::lca::LcaIndex;
use crate::{Error, Result};

/// Saliency values of the edges of a host graph, in edge order.
///
/// The value of an edge `{x, y}` is one less than the lowest level at which
/// `x` and `y` share a region, i.e. the highest level whose cut contains it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SaliencyMap {
    values: Vec<u32>,
}

impl SaliencyMap {
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The map as a weight map whose ranks are the saliency values.
    pub fn to_weight_map(&self, graph: &Graph) -> Result<WeightMap> {
        WeightMap::from_ranks(graph, self.values.clone())
    }

    /// Expresses each value through the raw weight that `source` assigns to
    /// that rank. Values of `Ψ(source)` are always ranks carried by some edge
    /// of `source`; other values come back as `NaN`.
    pub fn to_raw(&self, source: &WeightMap) -> Vec<f64> {
        let table = source.rank_to_raw_table();
        self.values.iter().map(|&v| table.get(v as usize).copied().unwrap_or(f64::NAN)).collect()
    }
}

/// Saliency map of the hierarchy stored in `dendrogram`, one LCA query per
/// edge.
pub fn saliency_of_hierarchy(dendrogram: &Dendrogram, graph: &Graph) -> Result<SaliencyMap> {
    if dendrogram.leaf_count() != graph.vertex_count() {
        return Err(Error::VertexCountMismatch { left: dendrogram.leaf_count(), right: graph.vertex_count() });
    }
    let index = LcaIndex::new(dendrogram);
    let values = graph
        .raw_edges()
        .iter()
        .map(|&(x, y)| dendrogram.level(index.lca(x as usize, y as usize)) - 1)
        .collect();
    Ok(SaliencyMap { values })
}

/// The saliency opening: saliency map of the quasi-flat zones hierarchy of
/// `weights`.
pub fn psi(graph: &Graph, weights: &WeightMap) -> Result<SaliencyMap> {
    let dendrogram = qfz(graph, weights, None)?;
    saliency_of_hierarchy(&dendrogram, graph)
}

/// Whether the ranks of `weights` already form a saliency map, i.e. are a
/// fixed point of [`psi`].
pub fn is_saliency_map(graph: &Graph, weights: &WeightMap) -> Result<bool> {
    Ok(psi(graph, weights)?.values == weights.ranks())
}
