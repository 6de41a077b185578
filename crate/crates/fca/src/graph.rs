//! Simple connected graphs, rooted trees, star/branch detection, and
//! desk-scale tree enumeration.
//!
//! Vertices are dense 0-based indices. External 1-based labels are the
//! caller's business and get translated at the I/O boundary.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest vertex count accepted by the tree enumerator.
pub const ENUMERATION_MAX_VERTICES: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("graph has a cycle; expected a tree")]
    HasCycle,
    #[error("a star needs at least one leaf")]
    EmptyStar,
    #[error("tree enumeration supports 1..={max} vertices, got {n}")]
    EnumerationOutOfRange { n: usize, max: usize },
}

/// Immutable simple connected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as (u, v) pairs with u < v, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_tree(&self) -> bool {
        // Connectivity is a construction invariant, so edge count decides.
        self.edge_count() == self.n - 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Graph", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("edges", &self.edges())?;
        s.end()
    }
}

/// Validate and build a simple connected graph from an edge list.
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if adj[u].contains(&v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let g = Graph { n, adj };
    if !connected(&g) {
        return Err(GraphError::Disconnected);
    }
    Ok(g)
}

fn connected(g: &Graph) -> bool {
    let mut seen = vec![false; g.n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == g.n
}

/// Star with `k` leaves: center 0, leaves 1..=k.
pub fn make_star(k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::EmptyStar);
    }
    let edges: Vec<(usize, usize)> = (1..=k).map(|leaf| (0, leaf)).collect();
    build_graph(k + 1, &edges)
}

/// A tree with a designated root and derived parent/children/depth structure.
#[derive(Debug, Clone)]
pub struct RootedTree {
    graph: Graph,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

impl RootedTree {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Parent of `v` (its unique neighbor on the path from the root), or
    /// `None` for the root itself.
    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Level of `v`: distance from the root.
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Vertices of the descendant subtree rooted at `v`, in preorder.
    pub fn subtree_vertices(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children[u].iter().copied());
        }
        out
    }

    /// Maximum level among vertices of the descendant subtree at `v`.
    pub fn subtree_depth(&self, v: usize) -> usize {
        self.subtree_vertices(v)
            .into_iter()
            .map(|u| self.depth[u])
            .max()
            .unwrap()
    }
}

/// Orient a tree from `root`, computing parents, children, and levels.
pub fn root_tree(g: &Graph, root: usize) -> Result<RootedTree, GraphError> {
    if root >= g.n() {
        return Err(GraphError::VertexOutOfRange {
            vertex: root,
            n: g.n(),
        });
    }
    if !g.is_tree() {
        return Err(GraphError::HasCycle);
    }
    let n = g.n();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut depth = vec![0; n];
    let mut stack = vec![root];
    let mut seen = vec![false; n];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                parent[u] = Some(v);
                children[v].push(u);
                depth[u] = depth[v] + 1;
                stack.push(u);
            }
        }
    }
    Ok(RootedTree {
        graph: g.clone(),
        root,
        parent,
        children,
        depth,
    })
}

/// A star inside an ambient graph: a center whose listed leaves all have
/// degree 1. When the center additionally has exactly one neighbor outside
/// the star, it is a branch rooted at that neighbor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarSpec {
    pub center: usize,
    pub leaves: Vec<usize>,
    pub is_branch: bool,
    /// For a branch found in a rooted tree: every sibling subtree of the
    /// center is a singleton or a branch (or the center's parent is the root
    /// of the whole tree and the condition holds over its children).
    pub is_terminal: bool,
}

/// All descendant subtrees of `t` that form branches, with terminal branches
/// flagged.
pub fn find_branches(t: &RootedTree) -> Vec<StarSpec> {
    let n = t.graph().n();
    // A descendant subtree T_v is a branch iff v is not the root (so the
    // parent is the branch root), v has at least one child, and every child
    // is childless (hence a leaf of the ambient tree).
    let is_branch_at = |v: usize| -> bool {
        v != t.root()
            && !t.children(v).is_empty()
            && t.children(v).iter().all(|&c| t.children(c).is_empty())
    };
    let mut out = Vec::new();
    for v in 0..n {
        if !is_branch_at(v) {
            continue;
        }
        let p = t.parent(v).unwrap();
        let is_terminal = t.children(p).iter().all(|&sib| {
            t.children(sib).is_empty() || is_branch_at(sib)
        });
        out.push(StarSpec {
            center: v,
            leaves: t.children(v).to_vec(),
            is_branch: true,
            is_terminal,
        });
    }
    out
}

/// Iterator over all labeled trees on `n` vertices with maximum degree at
/// most `max_degree`, generated from Prüfer sequences in lexicographic order.
pub struct TreeIter {
    n: usize,
    max_degree: usize,
    // Current Prüfer sequence encoded as an index in 0..n^(n-2).
    next_index: u64,
    total: u64,
}

impl Iterator for TreeIter {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        // n = 1 and n = 2 have a single tree each and an empty Prüfer space;
        // `total` is 1 for both.
        while self.next_index < self.total {
            let idx = self.next_index;
            self.next_index += 1;
            let g = match self.n {
                1 => build_graph(1, &[]).unwrap(),
                2 => build_graph(2, &[(0, 1)]).unwrap(),
                _ => {
                    let seq = prufer_from_index(idx, self.n);
                    decode_prufer(&seq)
                }
            };
            if g.max_degree() <= self.max_degree {
                return Some(g);
            }
        }
        None
    }
}

/// Enumerate labeled trees on `n` vertices with maximum degree ≤ `max_degree`.
///
/// Guarded to `n ≤ 10`: the Prüfer space is `n^(n-2)`, which is already 10^8
/// at the guard.
pub fn enumerate_trees(n: usize, max_degree: usize) -> Result<TreeIter, GraphError> {
    if n == 0 || n > ENUMERATION_MAX_VERTICES {
        return Err(GraphError::EnumerationOutOfRange {
            n,
            max: ENUMERATION_MAX_VERTICES,
        });
    }
    let total = if n <= 2 {
        1
    } else {
        (n as u64).pow(n as u32 - 2)
    };
    Ok(TreeIter {
        n,
        max_degree,
        next_index: 0,
        total,
    })
}

/// Enumerate isomorphism classes of trees on `n` vertices with maximum
/// degree ≤ `max_degree`. One representative per class, in first-seen
/// (Prüfer-lexicographic) order.
pub fn enumerate_tree_classes(n: usize, max_degree: usize) -> Result<Vec<Graph>, GraphError> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for g in enumerate_trees(n, max_degree)? {
        if seen.insert(tree_canonical_form(&g)) {
            out.push(g);
        }
    }
    Ok(out)
}

fn prufer_from_index(mut idx: u64, n: usize) -> Vec<usize> {
    let len = n - 2;
    let mut seq = vec![0; len];
    for slot in (0..len).rev() {
        seq[slot] = (idx % n as u64) as usize;
        idx /= n as u64;
    }
    seq
}

/// Standard Prüfer decoding; always yields a tree on `seq.len() + 2` vertices.
pub(crate) fn decode_prufer(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // `ptr`/`leaf` walk yields the smallest available leaf in O(n) amortized.
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &v in seq {
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    build_graph(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Canonical form of an unlabeled tree: the lexicographically smallest
/// center-rooted AHU encoding. Equal strings iff isomorphic.
pub fn tree_canonical_form(g: &Graph) -> String {
    debug_assert!(g.is_tree());
    tree_centers(g)
        .into_iter()
        .map(|c| ahu_encode(g, c))
        .min()
        .unwrap()
}

/// The one or two middle vertices of the tree (peeling leaves layer by layer).
fn tree_centers(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            degree[v] = 0;
            for &u in g.neighbors(v) {
                if degree[u] > 1 {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    layer
}

fn ahu_encode(g: &Graph, root: usize) -> String {
    fn encode(g: &Graph, v: usize, parent: Option<usize>) -> String {
        let mut parts: Vec<String> = g
            .neighbors(v)
            .iter()
            .filter(|&&u| Some(u) != parent)
            .map(|&u| encode(g, u, Some(v)))
            .collect();
        parts.sort();
        format!("({})", parts.join(""))
    }
    encode(g, root, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_smallest_tree() {
        let g = build_graph(2, &[(0, 1)]).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.degree(0), 1);
        assert!(g.is_tree());
    }

    #[test]
    fn build_double_star() {
        // Two degree-4 centers (indices 3 and 4) with three leaves each.
        let g = build_graph(8, &[(3, 0), (3, 1), (3, 2), (3, 4), (4, 5), (4, 6), (4, 7)]).unwrap();
        assert_eq!(g.max_degree(), 4);
        let degrees: Vec<usize> = (0..8).map(|v| g.degree(v)).collect();
        assert_eq!(degrees, vec![1, 1, 1, 4, 4, 1, 1, 1]);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(build_graph(3, &[(0, 1)]).unwrap_err(), GraphError::Disconnected);
        assert_eq!(
            build_graph(2, &[(0, 0), (0, 1)]).unwrap_err(),
            GraphError::SelfLoop(0)
        );
        assert_eq!(
            build_graph(2, &[(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(1, 0)
        );
        assert_eq!(
            build_graph(2, &[(0, 2)]).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 2, n: 2 }
        );
    }

    #[test]
    fn star_shapes() {
        let g = make_star(4).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.degree(0), 4);
        assert_eq!(make_star(1).unwrap().edge_count(), 1);
        assert_eq!(make_star(6).unwrap().n(), 7);
        assert_eq!(make_star(0).unwrap_err(), GraphError::EmptyStar);
    }

    #[test]
    fn rooting_a_path() {
        let g = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let t = root_tree(&g, 0).unwrap();
        assert_eq!(t.parent(1), Some(0));
        assert_eq!(t.parent(2), Some(1));
        assert_eq!(t.parent(0), None);
        assert_eq!(t.depth(2), 2);
        assert_eq!(t.subtree_depth(0), 2);
    }

    #[test]
    fn rooting_rejects_cycles() {
        let g = build_graph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(root_tree(&g, 0).unwrap_err(), GraphError::HasCycle);
    }

    #[test]
    fn rooted_star_structure() {
        let g = make_star(4).unwrap();
        let t = root_tree(&g, 0).unwrap();
        for leaf in 1..=4 {
            assert_eq!(t.parent(leaf), Some(0));
            assert_eq!(t.depth(leaf), 1);
        }
    }

    #[test]
    fn rooting_preserves_edges() {
        let g = build_graph(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        let t = root_tree(&g, 2).unwrap();
        let mut rebuilt: Vec<(usize, usize)> = (0..6)
            .filter_map(|v| t.parent(v).map(|p| (p.min(v), p.max(v))))
            .collect();
        rebuilt.sort_unstable();
        assert_eq!(rebuilt, g.edges());
    }

    #[test]
    fn branch_in_short_path() {
        let g = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let t = root_tree(&g, 0).unwrap();
        let branches = find_branches(&t);
        assert_eq!(branches.len(), 1);
        assert_eq!(branches[0].center, 1);
        assert_eq!(branches[0].leaves, vec![2]);
        assert!(branches[0].is_branch);
        assert!(branches[0].is_terminal);
    }

    #[test]
    fn branch_in_double_star() {
        let g = build_graph(8, &[(3, 0), (3, 1), (3, 2), (3, 4), (4, 5), (4, 6), (4, 7)]).unwrap();
        let t = root_tree(&g, 0).unwrap();
        let branches = find_branches(&t);
        assert_eq!(branches.len(), 1);
        assert_eq!(branches[0].center, 4);
        assert_eq!(branches[0].leaves, vec![5, 6, 7]);
        assert!(branches[0].is_terminal);
    }

    #[test]
    fn star_rooted_at_center_has_no_branch() {
        let g = make_star(5).unwrap();
        let t = root_tree(&g, 0).unwrap();
        assert!(find_branches(&t).is_empty());
    }

    #[test]
    fn star_rooted_at_leaf_is_a_branch() {
        let g = make_star(3).unwrap();
        let t = root_tree(&g, 1).unwrap();
        let branches = find_branches(&t);
        assert_eq!(branches.len(), 1);
        assert_eq!(branches[0].center, 0);
        assert_eq!(branches[0].leaves.len(), 2);
    }

    #[test]
    fn labeled_tree_counts_match_cayley() {
        // n^(n-2) labeled trees on n vertices.
        for (n, expected) in [(3usize, 3u64), (4, 16), (5, 125), (6, 1296), (7, 16807)] {
            let count = enumerate_trees(n, n - 1).unwrap().count() as u64;
            assert_eq!(count, expected, "n = {n}");
        }
    }

    #[test]
    fn path_only_enumeration() {
        // Max degree 2 keeps only paths: n!/2 labeled, one class.
        let labeled: Vec<Graph> = enumerate_trees(4, 2).unwrap().collect();
        assert_eq!(labeled.len(), 12);
        let classes = enumerate_tree_classes(4, 2).unwrap();
        assert_eq!(classes.len(), 1);
    }

    #[test]
    fn isomorphism_class_counts() {
        // Unlabeled trees on n = 1..7 vertices.
        for (n, expected) in [(1usize, 1usize), (2, 1), (3, 1), (4, 2), (5, 3), (6, 6), (7, 11)] {
            let classes = enumerate_tree_classes(n, n.max(2) - 1).unwrap();
            assert_eq!(classes.len(), expected, "n = {n}");
        }
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(
            enumerate_trees(11, 10),
            Err(GraphError::EnumerationOutOfRange { .. })
        ));
        assert!(matches!(
            enumerate_trees(0, 1),
            Err(GraphError::EnumerationOutOfRange { .. })
        ));
    }

    #[test]
    fn enumerated_trees_are_trees() {
        for g in enumerate_trees(6, 5).unwrap() {
            assert!(g.is_tree());
            assert_eq!(g.edge_count(), 5);
        }
    }

    #[test]
    fn enumeration_is_a_bijection_at_small_n() {
        // All decoded edge sets are pairwise distinct, so together with the
        // Cayley count the decoder hits every labeled tree exactly once.
        for n in [4usize, 5] {
            let mut seen = std::collections::HashSet::new();
            for g in enumerate_trees(n, n - 1).unwrap() {
                assert!(seen.insert(g.edges()));
            }
            assert_eq!(seen.len(), (n as u64).pow(n as u32 - 2) as usize);
        }
    }

    #[test]
    fn canonical_form_separates_shapes() {
        let path = build_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let star = make_star(3).unwrap();
        assert_ne!(tree_canonical_form(&path), tree_canonical_form(&star));
        let path_relabeled = build_graph(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(tree_canonical_form(&path), tree_canonical_form(&path_relabeled));
    }
}
