//! Level partitions and the quasi-flat zones hierarchy.
//!
//! The hierarchy of a weighted graph is the sequence of its λ-level
//! partitions for λ in `0..=|E|`, where the λ-level partition is the set of
//! connected components of the edges of rank below λ. Most of those
//! partitions repeat, so the hierarchy is stored as a [`Dendrogram`]: one
//! internal node per region that appears at some level, carrying the level
//! at which it appears.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EdgeSet, Graph, Partition, WeightMap};
use crate::union_find::UnionFind;
use crate::{Error, Result};

const NONE: u32 = u32::MAX;

/// Canonical merge tree of a complete hierarchy.
///
/// Nodes `0..leaf_count` are the leaves (vertices, level 0). Internal nodes
/// follow, numbered by increasing `(level, smallest leaf)`, so children
/// always precede their parent and the root is the last node. Every internal
/// node has at least two children, all of strictly lower level, listed by
/// smallest leaf. Two dendrograms describe the same hierarchy iff they are
/// structurally equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dendrogram {
    leaf_count: usize,
    depth: usize,
    parent: Vec<u32>,
    level: Vec<u32>,
    child_offsets: Vec<u32>,
    children: Vec<u32>,
}

impl Dendrogram {
    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn internal_count(&self) -> usize {
        self.parent.len() - self.leaf_count
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    /// Largest meaningful level parameter (the edge count of the host graph).
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn root(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        node < self.leaf_count
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        match self.parent[node] {
            NONE => None,
            p => Some(p as usize),
        }
    }

    /// Level at which `node` appears; 0 for leaves.
    pub fn level(&self, node: usize) -> u32 {
        self.level[node]
    }

    pub fn children(&self, node: usize) -> &[u32] {
        if node < self.leaf_count {
            return &[];
        }
        let i = node - self.leaf_count;
        &self.children[self.child_offsets[i] as usize..self.child_offsets[i + 1] as usize]
    }

    /// Sorted leaves below `node`.
    pub fn leaves_of(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            if self.is_leaf(x) {
                out.push(x);
            } else {
                stack.extend(self.children(x).iter().map(|&c| c as usize));
            }
        }
        out.sort_unstable();
        out
    }

    /// The λ-level partition encoded by the tree: vertex `x` belongs to the
    /// leaf set of its highest ancestor whose level is at most λ.
    pub fn partition_at(&self, lambda: usize) -> Result<Partition> {
        if lambda > self.depth {
            return Err(Error::LevelOutOfRange { level: lambda, max: self.depth });
        }
        let lambda = lambda as u32;
        let mut label = vec![0u32; self.parent.len()];
        for node in (0..self.parent.len()).rev() {
            let p = self.parent[node];
            label[node] = if p != NONE && self.level[p as usize] <= lambda {
                label[p as usize]
            } else {
                node as u32
            };
        }
        label.truncate(self.leaf_count);
        Ok(Partition::from_labels(&label))
    }

    pub fn view(&self) -> HierarchyView<'_> {
        HierarchyView { dendrogram: self }
    }

    /// Builds and canonicalizes a dendrogram from an explicit node list.
    ///
    /// `internal[i]` describes node `leaf_count + i` as `(level, children)`;
    /// any numbering is accepted. Fails unless the nodes form a single tree
    /// over all leaves with at least two children per node, strictly
    /// increasing levels towards the root and levels in `1..=depth`.
    pub fn from_nodes(leaf_count: usize, depth: usize, internal: &[(u32, Vec<usize>)]) -> Result<Self> {
        if leaf_count == 0 {
            return Err(Error::EmptyGraph);
        }
        let total = leaf_count + internal.len();
        let bad = |msg| Err(Error::InvalidHierarchy(msg));
        let mut parent = vec![NONE; total];
        let mut level = vec![0u32; total];
        for (i, (lvl, kids)) in internal.iter().enumerate() {
            let id = leaf_count + i;
            if *lvl == 0 || *lvl as usize > depth {
                return Err(Error::LevelOutOfRange { level: *lvl as usize, max: depth });
            }
            if kids.len() < 2 {
                return bad("internal node with fewer than two children");
            }
            level[id] = *lvl;
            for &c in kids {
                if c >= total {
                    return bad("child id out of range");
                }
                if parent[c] != NONE {
                    return bad("node with two parents");
                }
                parent[c] = id as u32;
            }
        }
        for (id, &p) in parent.iter().enumerate() {
            if p != NONE && level[p as usize] <= level[id] {
                return bad("parent level not above child level");
            }
        }
        let roots = parent.iter().filter(|&&p| p == NONE).count();
        if roots != 1 {
            return Err(Error::Disconnected { components: roots });
        }

        // strictly increasing levels make level order a topological order
        let mut order: Vec<u32> = (leaf_count as u32..total as u32).collect();
        order.sort_unstable_by_key(|&t| level[t as usize]);
        let mut min_leaf: Vec<u32> = (0..total as u32).collect();
        for t in 0..leaf_count as u32 {
            propagate_min(&mut min_leaf, &parent, t);
        }
        for &t in &order {
            propagate_min(&mut min_leaf, &parent, t);
        }
        Ok(assemble(leaf_count, depth, &order, &parent, &level, &min_leaf))
    }

    /// Rebuilds the dendrogram of a hierarchy given as its full sequence of
    /// partitions `P_0, …, P_depth`.
    pub fn from_partitions(partitions: &[Partition]) -> Result<Self> {
        let first = partitions.first().ok_or(Error::InvalidHierarchy("empty partition sequence"))?;
        let n = first.len();
        if *first != Partition::singletons(n) {
            return Err(Error::InvalidHierarchy("first partition is not made of singletons"));
        }
        let last = &partitions[partitions.len() - 1];
        if last.region_count() != 1 {
            return Err(Error::InvalidHierarchy("last partition is not the whole vertex set"));
        }
        let mut internal: Vec<(u32, Vec<usize>)> = Vec::new();
        // node currently representing each region of the previous partition
        let mut node_of: Vec<usize> = (0..n).collect();
        for (lambda, pair) in partitions.windows(2).enumerate() {
            let (prev, next) = (&pair[0], &pair[1]);
            if next.len() != n {
                return Err(Error::VertexCountMismatch { left: n, right: next.len() });
            }
            let mut members: Vec<Vec<usize>> = vec![Vec::new(); next.region_count()];
            let mut seen = vec![false; prev.region_count()];
            let mut image = vec![usize::MAX; prev.region_count()];
            for v in 0..n {
                let (p, q) = (prev.label(v), next.label(v));
                if image[p] == usize::MAX {
                    image[p] = q;
                } else if image[p] != q {
                    return Err(Error::InvalidHierarchy("partitions are not nested"));
                }
                if !seen[p] {
                    seen[p] = true;
                    members[q].push(p);
                }
            }
            let mut next_node = vec![0usize; next.region_count()];
            for (q, parts) in members.iter().enumerate() {
                if parts.len() == 1 {
                    next_node[q] = node_of[parts[0]];
                } else {
                    next_node[q] = n + internal.len();
                    internal.push(((lambda + 1) as u32, parts.iter().map(|&p| node_of[p]).collect()));
                }
            }
            node_of = next_node;
        }
        Self::from_nodes(n, partitions.len() - 1, &internal)
    }
}

fn propagate_min(min_leaf: &mut [u32], parent: &[u32], node: u32) {
    let p = parent[node as usize];
    if p != NONE && min_leaf[node as usize] < min_leaf[p as usize] {
        min_leaf[p as usize] = min_leaf[node as usize];
    }
}

/// Stable counting sort of `items` by `key(item) < bound`.
fn counting_sort(items: &[u32], bound: usize, key: impl Fn(u32) -> usize) -> Vec<u32> {
    let mut start = vec![0u32; bound + 1];
    for &it in items {
        start[key(it) + 1] += 1;
    }
    for i in 1..=bound {
        start[i] += start[i - 1];
    }
    let mut out = vec![0u32; items.len()];
    for &it in items {
        let slot = &mut start[key(it)];
        out[*slot as usize] = it;
        *slot += 1;
    }
    out
}

/// Renumbers a tree given in an arbitrary id space into canonical form.
///
/// `internal` lists the old ids of the internal nodes to keep; `parent`,
/// `level` and `min_leaf` are indexed by old id and `parent` must already
/// point at kept nodes for every kept node and leaf.
fn assemble(
    leaf_count: usize,
    depth: usize,
    internal: &[u32],
    parent: &[u32],
    level: &[u32],
    min_leaf: &[u32],
) -> Dendrogram {
    let n = leaf_count;
    let k = internal.len();
    let by_leaf = counting_sort(internal, n, |t| min_leaf[t as usize] as usize);
    let canonical = counting_sort(&by_leaf, depth + 1, |t| level[t as usize] as usize);

    let mut new_id: Vec<u32> = (0..n as u32).collect();
    new_id.resize(parent.len(), NONE);
    for (i, &t) in canonical.iter().enumerate() {
        new_id[t as usize] = (n + i) as u32;
    }

    let mut new_parent = vec![NONE; n + k];
    let mut new_level = vec![0u32; n + k];
    let mut child_offsets = vec![0u32; k + 1];
    let mut remap_parent = |old: u32| -> u32 {
        let p = parent[old as usize];
        let np = if p == NONE { NONE } else { new_id[p as usize] };
        new_parent[new_id[old as usize] as usize] = np;
        np
    };
    for v in 0..n as u32 {
        let p = remap_parent(v);
        if p != NONE {
            child_offsets[p as usize - n + 1] += 1;
        }
    }
    for &t in &canonical {
        new_level[new_id[t as usize] as usize] = level[t as usize];
        let p = remap_parent(t);
        if p != NONE {
            child_offsets[p as usize - n + 1] += 1;
        }
    }
    for i in 1..=k {
        child_offsets[i] += child_offsets[i - 1];
    }

    // siblings have disjoint leaf sets, so visiting nodes by smallest leaf
    // fills every child list in canonical order
    let mut cursor = child_offsets.clone();
    let mut children = vec![0u32; child_offsets[k] as usize];
    let mut push = |node: u32| {
        let p = new_parent[node as usize];
        if p != NONE {
            let slot = &mut cursor[p as usize - n];
            children[*slot as usize] = node;
            *slot += 1;
        }
    };
    let mut j = 0;
    for v in 0..n as u32 {
        push(v);
        while j < k && min_leaf[by_leaf[j] as usize] == v {
            push(new_id[by_leaf[j] as usize]);
            j += 1;
        }
    }

    Dendrogram { leaf_count: n, depth, parent: new_parent, level: new_level, child_offsets, children }
}

/// Level-wise access to the partitions of a dendrogram.
#[derive(Debug, Clone, Copy)]
pub struct HierarchyView<'a> {
    dendrogram: &'a Dendrogram,
}

impl<'a> HierarchyView<'a> {
    pub fn dendrogram(&self) -> &'a Dendrogram {
        self.dendrogram
    }

    pub fn depth(&self) -> usize {
        self.dendrogram.depth
    }

    pub fn partition_at(&self, lambda: usize) -> Result<Partition> {
        self.dendrogram.partition_at(lambda)
    }

    /// Levels at which the partition changes, increasing.
    pub fn breakpoints(&self) -> Vec<u32> {
        let mut levels: Vec<u32> = self.dendrogram.level[self.dendrogram.leaf_count..].to_vec();
        levels.dedup();
        levels
    }

    /// All partitions `P_0, …, P_depth`.
    pub fn partitions(&self) -> impl Iterator<Item = Partition> + 'a {
        let d = self.dendrogram;
        (0..=d.depth).map(move |lambda| d.partition_at(lambda).expect("level within depth"))
    }
}

/// Connected components of the λ-level graph: all vertices, and the edges
/// (of `edge_subset` when given) whose rank is below λ.
pub fn level_partition(
    graph: &Graph,
    weights: &WeightMap,
    lambda: usize,
    edge_subset: Option<&EdgeSet>,
) -> Result<Partition> {
    weights.check_host(graph)?;
    let m = graph.edge_count();
    if lambda > m {
        return Err(Error::LevelOutOfRange { level: lambda, max: m });
    }
    let ranks = weights.ranks();
    let mut uf = UnionFind::new(graph.vertex_count());
    let mut join = |e: usize| {
        if (ranks[e] as usize) < lambda {
            let (x, y) = graph.edge(e);
            uf.union(x, y);
        }
    };
    match edge_subset {
        Some(set) => {
            set.check_host(graph)?;
            set.iter().for_each(&mut join);
        }
        None => (0..m).for_each(&mut join),
    }
    let labels: Vec<u32> = (0..graph.vertex_count()).map(|v| uf.find(v) as u32).collect();
    Ok(Partition::from_labels(&labels))
}

/// Quasi-flat zones hierarchy of the graph (or of the spanning subgraph
/// `(V, edge_subset)`) for `weights`.
///
/// Edges are swept by increasing rank; an edge of rank `r` joining two
/// components creates their merge at level `r + 1`. Merges at equal level
/// are then fused into single nodes. Fails on a disconnected (sub)graph.
pub fn qfz(graph: &Graph, weights: &WeightMap, edge_subset: Option<&EdgeSet>) -> Result<Dendrogram> {
    weights.check_host(graph)?;
    let n = graph.vertex_count();
    let m = graph.edge_count();
    let ranks = weights.ranks();

    let selected: Vec<u32> = match edge_subset {
        Some(set) => {
            set.check_host(graph)?;
            set.iter().map(|e| e as u32).collect()
        }
        None => (0..m as u32).collect(),
    };
    let edges = graph.raw_edges();
    // scatter endpoints and rank together so the sweep reads them in order
    let mut start = vec![0u32; m + 1];
    for &e in &selected {
        start[ranks[e as usize] as usize + 1] += 1;
    }
    for i in 1..=m {
        start[i] += start[i - 1];
    }
    let mut sorted = vec![(0u32, 0u32, 0u32); selected.len()];
    for &e in &selected {
        let r = ranks[e as usize];
        let slot = &mut start[r as usize];
        let (x, y) = edges[e as usize];
        sorted[*slot as usize] = (x, y, r);
        *slot += 1;
    }

    // binary merge tree: nodes n.. are created in merge order
    let size = 2 * n - 1;
    let mut parent = vec![NONE; size];
    let mut level = vec![0u32; size];
    let mut tree_node: Vec<u32> = (0..n as u32).collect();
    let mut uf = UnionFind::new(n);
    let mut next = n;
    for &(x, y, r) in &sorted {
        let (rx, ry) = (uf.find(x as usize), uf.find(y as usize));
        if rx == ry {
            continue;
        }
        parent[tree_node[rx] as usize] = next as u32;
        parent[tree_node[ry] as usize] = next as u32;
        level[next] = r + 1;
        let r = uf.link(rx, ry);
        tree_node[r] = next as u32;
        next += 1;
        if next == size {
            break;
        }
    }
    if next != size {
        return Err(Error::Disconnected { components: size - next + 1 });
    }

    // fuse each node into its parent when both sit at the same level
    let mut rep: Vec<u32> = (0..size as u32).collect();
    for t in (n..size).rev() {
        let p = parent[t];
        if p != NONE && level[p as usize] == level[t] {
            rep[t] = rep[p as usize];
        }
    }
    let mut min_leaf: Vec<u32> = (0..size as u32).collect();
    for t in 0..size as u32 {
        propagate_min(&mut min_leaf, &parent, t);
    }
    for p in parent.iter_mut() {
        if *p != NONE {
            *p = rep[*p as usize];
        }
    }
    let kept: Vec<u32> = (n as u32..size as u32).filter(|&t| rep[t as usize] == t).collect();
    Ok(assemble(n, m, &kept, &parent, &level, &min_leaf))
}

/// Whether two dendrograms encode the same sequence of partitions.
pub fn hierarchy_equal(a: &Dendrogram, b: &Dendrogram) -> Result<bool> {
    if a.leaf_count != b.leaf_count {
        return Err(Error::VertexCountMismatch { left: a.leaf_count, right: b.leaf_count });
    }
    Ok(a.parent == b.parent && a.level == b.level)
}
