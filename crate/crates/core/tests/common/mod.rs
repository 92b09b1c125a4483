#![allow(dead_code)]

use proptest::prelude::*;
use qfz_core::{normalize_weights, Graph, WeightMap};

#[derive(Debug, Clone)]
pub struct Weighted {
    pub graph: Graph,
    pub raw: Vec<f64>,
}

impl Weighted {
    pub fn weights(&self) -> WeightMap {
        normalize_weights(&self.graph, &self.raw).unwrap()
    }
}

/// Edge lists of connected simple graphs on `2..=max_n` vertices: a random
/// spanning tree plus random extra edges, shuffled.
pub fn connected_edges(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let tree: Vec<_> = (1..n).map(|i| 0..i).collect();
            (Just(n), tree, prop::collection::vec((0..n, 0..n), 0..=2 * n))
        })
        .prop_flat_map(|(n, tree, extra)| {
            let mut edges: Vec<(usize, usize)> = tree.into_iter().enumerate().map(|(i, p)| (p, i + 1)).collect();
            for (a, b) in extra {
                let pair = (a.min(b), a.max(b));
                if a != b && !edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == pair) {
                    edges.push((b, a));
                }
            }
            (Just(n), Just(edges).prop_shuffle())
        })
}

/// Connected graphs with small integer raw weights (many ties).
pub fn weighted_graph(max_n: usize) -> impl Strategy<Value = Weighted> {
    connected_edges(max_n).prop_flat_map(|(n, edges)| {
        let m = edges.len();
        (Just(n), Just(edges), prop::collection::vec(0u8..6, m))
    })
    .prop_map(|(n, edges, w)| Weighted {
        graph: Graph::new(n, &edges).unwrap(),
        raw: w.into_iter().map(f64::from).collect(),
    })
}
