//! Disjoint sets with path compression and union by rank.

use alloc::vec::Vec;

/// A forest of disjoint sets over `0..len`.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
    sets: usize,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        assert!(len <= u32::MAX as usize, "union-find supports at most 2^32 - 1 elements");
        UnionFind { parent: (0..len as u32).collect(), rank: alloc::vec![0; len], sets: len }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Number of disjoint sets currently in the forest.
    pub fn set_count(&self) -> usize {
        self.sets
    }

    /// Representative of the set containing `x`.
    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x as u32;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x as u32;
        while cur != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root as usize
    }

    /// Links two *roots* and returns the root of the merged set.
    ///
    /// Both arguments must be representatives returned by [`find`](Self::find)
    /// and must differ.
    pub fn link(&mut self, a: usize, b: usize) -> usize {
        debug_assert!(a != b && self.parent[a] as usize == a && self.parent[b] as usize == b);
        self.sets -= 1;
        let (ra, rb) = (self.rank[a], self.rank[b]);
        if ra < rb {
            self.parent[a] = b as u32;
            b
        } else {
            self.parent[b] = a as u32;
            if ra == rb {
                self.rank[a] += 1;
            }
            a
        }
    }

    /// Merges the sets of `a` and `b`. Returns `false` if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.link(ra, rb);
        true
    }
}
