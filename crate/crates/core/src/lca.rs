//! Constant-time least common ancestors on a dendrogram.
//!
//! The tree is flattened into its Euler tour; the LCA of two nodes is the
//! shallowest node of the tour between their first occurrences. Range minima
//! are answered by splitting the tour into 32-entry blocks: a sparse table
//! over the block minima handles whole blocks, and per-position bit masks of
//! the in-block minimum stack handle the partial blocks at both ends.

use alloc::vec;
use alloc::vec::Vec;

use crate::hierarchy::Dendrogram;

const BLOCK: usize = 32;

#[derive(Debug, Clone)]
pub struct LcaIndex {
    /// First tour position of every node.
    first: Vec<u32>,
    /// Tour entries packed as `depth << 32 | node`, so the minimum key is the
    /// shallowest node.
    tour: Vec<u64>,
    masks: Vec<u32>,
    block_count: usize,
    /// Row `k` holds the minimum of blocks `i..i + 2^k`.
    table: Vec<u64>,
}

impl LcaIndex {
    pub fn new(dendrogram: &Dendrogram) -> Self {
        let nodes = dendrogram.node_count();
        let root = dendrogram.root();
        let mut first = vec![0u32; nodes];
        let mut tour = Vec::with_capacity(2 * nodes - 1);
        let mut depth = vec![0u32; nodes];

        // (node, index of the next child to visit)
        let mut stack: Vec<(u32, u32)> = vec![(root as u32, 0)];
        first[root] = 0;
        tour.push(root as u64);
        while let Some(top) = stack.last_mut() {
            let (node, next) = *top;
            let kids = dendrogram.children(node as usize);
            if let Some(&child) = kids.get(next as usize) {
                top.1 += 1;
                let d = depth[node as usize] + 1;
                depth[child as usize] = d;
                first[child as usize] = tour.len() as u32;
                tour.push(((d as u64) << 32) | child as u64);
                stack.push((child, 0));
            } else {
                stack.pop();
                if let Some(&(parent, _)) = stack.last() {
                    tour.push(((depth[parent as usize] as u64) << 32) | parent as u64);
                }
            }
        }

        let masks = in_block_masks(&tour);
        let block_count = tour.len().div_ceil(BLOCK);
        let mut table: Vec<u64> = tour.chunks(BLOCK).map(|c| *c.iter().min().unwrap()).collect();
        let mut width = 1;
        while 2 * width <= block_count {
            let prev = table.len() - block_count;
            for i in 0..block_count {
                let v = if i + width < block_count {
                    table[prev + i].min(table[prev + i + width])
                } else {
                    table[prev + i]
                };
                table.push(v);
            }
            width *= 2;
        }

        LcaIndex { first, tour, masks, block_count, table }
    }

    /// Number of tree nodes indexed.
    pub fn node_count(&self) -> usize {
        self.first.len()
    }

    /// Least common ancestor of nodes `x` and `y`.
    #[inline]
    pub fn lca(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.first[x] as usize, self.first[y] as usize);
        let (l, r) = if a <= b { (a, b) } else { (b, a) };
        (self.range_min(l, r) & 0xFFFF_FFFF) as usize
    }

    /// Minimum tour key over positions `l..=r`.
    #[inline]
    fn range_min(&self, l: usize, r: usize) -> u64 {
        let (bl, br) = (l / BLOCK, r / BLOCK);
        if bl == br {
            return self.in_block(l, r);
        }
        let mut best = self.in_block(l, bl * BLOCK + BLOCK - 1).min(self.in_block(br * BLOCK, r));
        if bl + 1 < br {
            let (lo, hi) = (bl + 1, br);
            let k = (hi - lo).ilog2() as usize;
            let row = k * self.block_count;
            best = best.min(self.table[row + lo]).min(self.table[row + hi - (1 << k)]);
        }
        best
    }

    #[inline]
    fn in_block(&self, l: usize, r: usize) -> u64 {
        let start = l & !(BLOCK - 1);
        let live = self.masks[r] & (u32::MAX << (l - start));
        self.tour[start + live.trailing_zeros() as usize]
    }
}

/// For each position, the set of in-block positions still on the minimum
/// stack after pushing it. The lowest such position at or after `l` holds
/// the minimum of `l..=r`.
fn in_block_masks(keys: &[u64]) -> Vec<u32> {
    let mut masks = vec![0u32; keys.len()];
    for (b, chunk) in keys.chunks(BLOCK).enumerate() {
        let mut stack = 0u32;
        for (j, &key) in chunk.iter().enumerate() {
            while stack != 0 {
                let top = 31 - stack.leading_zeros() as usize;
                if chunk[top] >= key {
                    stack &= !(1 << top);
                } else {
                    break;
                }
            }
            stack |= 1 << j;
            masks[b * BLOCK + j] = stack;
        }
    }
    masks
}
