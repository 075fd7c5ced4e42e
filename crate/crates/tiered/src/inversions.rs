//! Rooted trees and inversion statistics: plain inversions, κ-inversions
//! relative to an ambient graph, and the generalized inversions of tiered
//! rooted trees.

use crate::graph::{Edge, GraphError, SimpleGraph, Vertex};
use std::collections::BTreeSet;

/// Rooted labelled tree with derived parent and distance maps.
#[derive(Debug, Clone)]
pub struct RootedTree {
    tree: SimpleGraph,
    root: Vertex,
    parent: Vec<Option<Vertex>>,
    dist: Vec<usize>,
}

impl RootedTree {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>, root: Vertex) -> Result<Self, GraphError> {
        let tree = SimpleGraph::new(n, edges)?;
        if !tree.is_tree() {
            return Err(GraphError::NotATree);
        }
        if root == 0 || root > n {
            return Err(GraphError::UnknownVertex(root, n));
        }
        let mut parent = vec![None; n + 1];
        let mut dist = vec![usize::MAX; n + 1];
        dist[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for u in tree.neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    parent[u] = Some(v);
                    queue.push_back(u);
                }
            }
        }
        Ok(RootedTree { tree, root, parent, dist })
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn tree(&self) -> &SimpleGraph {
        &self.tree
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn dist(&self, v: Vertex) -> usize {
        self.dist[v]
    }

    /// Proper descendants of v (v itself excluded).
    pub fn descendants(&self, v: Vertex) -> BTreeSet<Vertex> {
        let mut out = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for u in self.tree.neighbors(x) {
                if self.parent[u] == Some(x) {
                    out.insert(u);
                    stack.push(u);
                }
            }
        }
        out
    }
}

/// Inversions: pairs (i,j) with j a descendant of i and i > j.
pub fn tree_inversions(tree: &RootedTree) -> usize {
    let mut count = 0;
    for i in tree.tree().vertices() {
        for j in tree.descendants(i) {
            if i > j {
                count += 1;
            }
        }
    }
    count
}

/// κ-inversions of a spanning tree relative to its ambient rooted graph:
/// inversion pairs (i,j) of T whose witness edge {p(i), j} lies in E(G).
pub fn kappa_inversions(
    graph: &SimpleGraph,
    tree_edges: &[Edge],
    root: Vertex,
) -> Result<usize, GraphError> {
    for &(a, b) in tree_edges {
        if !graph.has_edge(a, b) {
            return Err(GraphError::NotSpanningTree);
        }
    }
    let rooted = RootedTree::new(graph.vertex_count(), tree_edges.iter().copied(), root)
        .map_err(|_| GraphError::NotSpanningTree)?;
    let mut count = 0;
    for i in graph.vertices() {
        let Some(p) = rooted.parent(i) else { continue };
        for j in rooted.descendants(i) {
            if i > j && graph.has_edge(p, j) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Rooted tree on abstract nodes carrying a (possibly repeated) label and a
/// tier per node; the generality needed for α-trees.
#[derive(Debug, Clone)]
pub struct LabelledTieredTree {
    structure: RootedTree,
    label: Vec<usize>,
    tier: Vec<usize>,
}

impl LabelledTieredTree {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = Edge>,
        root: Vertex,
        label: Vec<usize>,
        tier: Vec<usize>,
    ) -> Result<Self, GraphError> {
        assert_eq!(label.len(), n);
        assert_eq!(tier.len(), n);
        Ok(LabelledTieredTree { structure: RootedTree::new(n, edges, root)?, label, tier })
    }

    /// Standard-labelled tiered rooted tree: node ids are the labels.
    pub fn standard(tree: &crate::graph::TieredGraph, root: Vertex) -> Result<Self, GraphError> {
        let n = tree.vertex_count();
        LabelledTieredTree::new(
            n,
            tree.edges().iter().copied(),
            root,
            (1..=n).collect(),
            tree.tiers().to_vec(),
        )
    }

    fn label(&self, v: Vertex) -> usize {
        self.label[v - 1]
    }

    fn tier_of(&self, v: Vertex) -> usize {
        self.tier[v - 1]
    }

    fn compatible(&self, a: Vertex, b: Vertex) -> bool {
        let (la, lb) = (self.label(a), self.label(b));
        let (ta, tb) = (self.tier_of(a), self.tier_of(b));
        (ta < tb && la < lb) || (ta > tb && la > lb)
    }
}

/// Generalized inversions of a tiered rooted tree: pairs of non-root nodes
/// (i,j) with j a descendant of i, j compatible with the parent of i, and
/// label(i) > label(j) or label(i) = label(j).
///
/// The equality branch is implemented as stated; a node is never its own
/// descendant, so it fires only for repeated labels.
pub fn generalized_inversions(tree: &LabelledTieredTree) -> usize {
    let root = tree.structure.root();
    let mut count = 0;
    for i in tree.structure.tree().vertices() {
        if i == root {
            continue;
        }
        let p = tree.structure.parent(i).expect("non-root has a parent");
        for j in tree.structure.descendants(i) {
            if j == root {
                continue;
            }
            if tree.compatible(j, p) && tree.label(i) >= tree.label(j) {
                count += 1;
            }
        }
    }
    count
}
