//! Connected hierarchies of partitions on edge-weighted graphs, in their
//! three interchangeable forms: dendrograms of quasi-flat zones, saliency
//! maps and minimum spanning trees.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, image codecs
//! and the command-line front end live in the `qfz-tools` crate.
//!
//! ```
//! use qfz_core::{normalize_weights, psi, qfz, Graph};
//!
//! let graph = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
//! let weights = normalize_weights(&graph, &[0.0, 1.0, 2.0]).unwrap();
//! let hierarchy = qfz(&graph, &weights, None).unwrap();
//! assert_eq!(hierarchy.internal_count(), 2);
//!
//! // The edge {0, 2} is lowered to the level at which 0 and 2 first meet.
//! assert_eq!(psi(&graph, &weights).unwrap().values(), &[0, 1, 1]);
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod graph;
pub mod hierarchy;
pub mod lca;
pub mod mst;
pub mod oracle;
pub mod pixel;
pub mod saliency;
pub mod union_find;

pub use error::Error;
pub use graph::{
    connected_components, cut, normalize_weights, refines, EdgeSet, Graph, Partition, WeightMap,
};
pub use hierarchy::{hierarchy_equal, level_partition, qfz, Dendrogram, HierarchyView};
pub use lca::LcaIndex;
pub use mst::{check_mst_via_qfz, kruskal, total_weight, SpanningSubgraph};
pub use pixel::{image_to_graph, render_saliency, Adjacency, GrayImage, PixelGraph, PixelGraphMeta, RenderedSaliency};
pub use saliency::{is_saliency_map, psi, saliency_of_hierarchy, SaliencyMap};
pub use union_find::UnionFind;

pub type Result<T, E = Error> = core::result::Result<T, E>;
