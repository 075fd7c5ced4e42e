//! Labelled simple graphs and tiered graphs.
//!
//! Vertices are labelled 1..=n throughout. Edges are stored normalised with
//! the smaller endpoint first.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range 1..={1}")]
    UnknownVertex(Vertex, usize),
    #[error("loop edge at vertex {0}")]
    LoopEdge(Vertex),
    #[error("input graph is not a tree")]
    NotATree,
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("tiering is not surjective onto 1..={0}")]
    NonSurjectiveTiering(usize),
    #[error("edge set is not a spanning tree of the graph")]
    NotSpanningTree,
    #[error("dual graph requires at least 2 tiers, got {0}")]
    TooFewTiers(usize),
    #[error("vertex {0} is not a cut vertex")]
    NotACutVertex(Vertex),
    #[error("spanning tree count {count} exceeds cap {cap}")]
    CapExceeded { count: String, cap: u64 },
    #[error("attachment vertices are invalid for the twist: {0}")]
    InvalidAttachment(String),
}

/// Finite simple undirected graph on vertices 1..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(GraphError::UnknownVertex(v, n));
                }
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(SimpleGraph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order (the crate's canonical edge order).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_of(1).len() == self.n
    }

    fn component_of(&self, start: Vertex) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen
    }

    /// Connected components as sorted vertex sets, ordered by minimum vertex.
    pub fn components(&self) -> Vec<BTreeSet<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if !seen.contains(&v) {
                let comp = self.component_of(v);
                seen.extend(comp.iter().copied());
                out.push(comp);
            }
        }
        out
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    /// Edge subset acyclicity via union-find.
    pub fn is_acyclic(edges: &[Edge], n: usize) -> bool {
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    /// The subgraph on the same vertex set with the given edges removed.
    pub fn without_edges(&self, remove: &BTreeSet<Edge>) -> SimpleGraph {
        SimpleGraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|e| !remove.contains(e))
                .collect(),
        }
    }
}

/// How empty tiers are treated by validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum EmptyTierPolicy {
    /// Every tier 1..=m must be occupied (the book definition).
    #[default]
    Forbid,
    /// Empty tiers are tolerated; produced by identification padding.
    AllowFromIdentification,
}

/// Labelled tiered graph: a simple graph plus a tier map V -> 1..=m such that
/// adjacent vertices lie in different tiers and the label order matches the
/// tier order along every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieredGraph {
    graph: SimpleGraph,
    tier: Vec<usize>,
    m: usize,
    empty_tier_policy: EmptyTierPolicy,
}

/// A violation reported by [`TieredGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TierViolation {
    TierOutOfRange { vertex: Vertex, tier: usize, m: usize },
    EmptyTier { tier: usize },
    EdgeWithinTier { edge: Edge, tier: usize },
    EdgeOrderMismatch { edge: Edge, tier_lo: usize, tier_hi: usize },
}

impl fmt::Display for TierViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TierViolation::TierOutOfRange { vertex, tier, m } => {
                write!(f, "vertex {vertex} has tier {tier} outside 1..={m}")
            }
            TierViolation::EmptyTier { tier } => write!(f, "tier {tier} is empty"),
            TierViolation::EdgeWithinTier { edge: (a, b), tier } => {
                write!(f, "edge ({a},{b}) joins two vertices of tier {tier}")
            }
            TierViolation::EdgeOrderMismatch { edge: (a, b), tier_lo, tier_hi } => {
                write!(f, "edge ({a},{b}): i<j but t(i)={tier_lo} > t(j)={tier_hi}")
            }
        }
    }
}

impl TieredGraph {
    /// Build a tiered graph; `tier[v-1]` is the tier of vertex v.
    pub fn new(
        n: usize,
        m: usize,
        tier: Vec<usize>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, GraphError> {
        assert_eq!(tier.len(), n, "tier vector length must equal n");
        let graph = SimpleGraph::new(n, edges)?;
        Ok(TieredGraph {
            graph,
            tier,
            m,
            empty_tier_policy: EmptyTierPolicy::Forbid,
        })
    }

    pub(crate) fn with_policy(mut self, policy: EmptyTierPolicy) -> Self {
        self.empty_tier_policy = policy;
        self
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.n
    }

    pub fn tier_count(&self) -> usize {
        self.m
    }

    pub fn tier(&self, v: Vertex) -> usize {
        self.tier[v - 1]
    }

    pub fn tiers(&self) -> &[usize] {
        &self.tier
    }

    pub fn edges(&self) -> &[Edge] {
        self.graph.edges()
    }

    pub fn empty_tier_policy(&self) -> EmptyTierPolicy {
        self.empty_tier_policy
    }

    /// Diagnostics, not failures: the empty list means every invariant holds.
    pub fn validate(&self) -> Vec<TierViolation> {
        let mut out = Vec::new();
        let mut seen = vec![false; self.m + 1];
        for v in self.graph.vertices() {
            let t = self.tier(v);
            if t == 0 || t > self.m {
                out.push(TierViolation::TierOutOfRange { vertex: v, tier: t, m: self.m });
            } else {
                seen[t] = true;
            }
        }
        if self.empty_tier_policy == EmptyTierPolicy::Forbid {
            for t in 1..=self.m {
                if !seen[t] {
                    out.push(TierViolation::EmptyTier { tier: t });
                }
            }
        }
        for &(i, j) in self.graph.edges() {
            let (ti, tj) = (self.tier(i), self.tier(j));
            if ti == tj {
                out.push(TierViolation::EdgeWithinTier { edge: (i, j), tier: ti });
            } else if ti > tj {
                // edges are normalised with i < j
                out.push(TierViolation::EdgeOrderMismatch { edge: (i, j), tier_lo: ti, tier_hi: tj });
            }
        }
        out
    }

    /// Non-edge pairs (i,j) compatible with the tiering: t(i)<t(j) and i<j,
    /// or t(i)>t(j) and i>j.
    pub fn compatible_pairs(&self) -> Result<BTreeSet<Edge>, GraphError> {
        if !self.graph.is_tree() {
            return Err(GraphError::NotATree);
        }
        let mut out = BTreeSet::new();
        for i in self.graph.vertices() {
            for j in i + 1..=self.graph.n {
                if self.graph.has_edge(i, j) {
                    continue;
                }
                if self.tier(i) < self.tier(j) {
                    out.insert((i, j));
                }
                // t(i) > t(j) with i > j is the same unordered pair seen from
                // the other side; with i < j fixed it never fires.
            }
        }
        Ok(out)
    }

    /// Tree edges plus all compatible pairs, same tiering.
    pub fn compatibility_graph(&self) -> Result<TieredGraph, GraphError> {
        let extra = self.compatible_pairs()?;
        let mut edges: Vec<Edge> = self.graph.edges().to_vec();
        edges.extend(extra);
        TieredGraph::new(self.graph.n, self.m, self.tier.clone(), edges)
    }
}

/// The complete tiered graph of a tiering: edge (i,j) exactly when i<j and
/// t(i)<t(j).
pub fn complete_tiered_graph(tiering: &[usize]) -> Result<TieredGraph, GraphError> {
    let n = tiering.len();
    let m = tiering.iter().copied().max().unwrap_or(0);
    let mut seen = vec![false; m + 1];
    for &t in tiering {
        if t == 0 {
            return Err(GraphError::NonSurjectiveTiering(m));
        }
        seen[t] = true;
    }
    if (1..=m).any(|t| !seen[t]) {
        return Err(GraphError::NonSurjectiveTiering(m));
    }
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if tiering[i - 1] < tiering[j - 1] {
                edges.push((i, j));
            }
        }
    }
    TieredGraph::new(n, m, tiering.to_vec(), edges)
}

/// JSON document form: {"n", "m", "tier", "edges"}.
#[derive(Debug, Serialize, Deserialize)]
pub struct TieredGraphDoc {
    pub n: usize,
    pub m: usize,
    pub tier: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "is_default_policy")]
    pub empty_tier_policy: EmptyTierPolicy,
}

fn is_default_policy(p: &EmptyTierPolicy) -> bool {
    *p == EmptyTierPolicy::Forbid
}

impl From<&TieredGraph> for TieredGraphDoc {
    fn from(g: &TieredGraph) -> Self {
        TieredGraphDoc {
            n: g.vertex_count(),
            m: g.tier_count(),
            tier: g.tier.clone(),
            edges: g.edges().to_vec(),
            empty_tier_policy: g.empty_tier_policy,
        }
    }
}

impl TryFrom<&TieredGraphDoc> for TieredGraph {
    type Error = GraphError;
    fn try_from(doc: &TieredGraphDoc) -> Result<Self, GraphError> {
        if doc.tier.len() != doc.n {
            return Err(GraphError::UnknownVertex(doc.tier.len(), doc.n));
        }
        Ok(TieredGraph::new(doc.n, doc.m, doc.tier.clone(), doc.edges.iter().copied())?
            .with_policy(doc.empty_tier_policy))
    }
}

/// DOT export with tiers rendered as ranks.
pub fn to_dot(g: &TieredGraph) -> String {
    let mut s = String::from("graph tiered {\n  rankdir=BT;\n");
    for t in 1..=g.tier_count() {
        let members: Vec<String> = g
            .graph()
            .vertices()
            .filter(|&v| g.tier(v) == t)
            .map(|v| v.to_string())
            .collect();
        if !members.is_empty() {
            s.push_str(&format!("  {{ rank=same; {} }}\n", members.join("; ")));
        }
    }
    for &(a, b) in g.edges() {
        s.push_str(&format!("  {a} -- {b};\n"));
    }
    s.push_str("}\n");
    s
}

/// A 6-vertex worked-example tiered tree with tiers (1,1,2,2,2,3).
pub fn worked_example_tree() -> TieredGraph {
    TieredGraph::new(6, 3, vec![1, 1, 2, 2, 2, 3], [(1, 3), (2, 4), (3, 6), (4, 6), (5, 6)])
        .expect("worked-example tree is valid")
}

/// The compatibility graph of the worked-example tree: the complete tiered
/// graph on its tiering.
pub fn worked_example_graph() -> TieredGraph {
    complete_tiered_graph(&[1, 1, 2, 2, 2, 3]).expect("worked-example tiering is surjective")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_tree_is_valid() {
        assert!(worked_example_tree().validate().is_empty());
    }

    #[test]
    fn single_vertex_valid() {
        let g = TieredGraph::new(1, 1, vec![1], []).unwrap();
        assert!(g.validate().is_empty());
    }

    #[test]
    fn order_mismatch_is_reported() {
        // edge (1,2) with t(1)=2, t(2)=1
        let g = TieredGraph::new(2, 2, vec![2, 1], [(1, 2)]).unwrap();
        let v = g.validate();
        assert!(v
            .iter()
            .any(|x| matches!(x, TierViolation::EdgeOrderMismatch { edge: (1, 2), .. })));
    }

    #[test]
    fn worked_example_compatible_pairs() {
        let pairs = worked_example_tree().compatible_pairs().unwrap();
        let expected: BTreeSet<Edge> =
            [(1, 6), (1, 4), (1, 5), (2, 3), (2, 5), (2, 6)].into_iter().collect();
        assert_eq!(pairs, expected);
    }

    #[test]
    fn worked_example_compatibility_graph_is_complete() {
        let comp = worked_example_tree().compatibility_graph().unwrap();
        assert_eq!(comp.edges(), worked_example_graph().edges());
        assert_eq!(comp.edges().len(), 11);
        assert!(comp.validate().is_empty());
    }

    #[test]
    fn compatibility_rejects_non_trees() {
        let g = TieredGraph::new(3, 2, vec![1, 1, 2], [(1, 3)]).unwrap();
        assert_eq!(g.compatible_pairs().unwrap_err(), GraphError::NotATree);
    }

    #[test]
    fn two_vertex_tree_has_no_compatible_pairs() {
        let g = TieredGraph::new(2, 2, vec![1, 2], [(1, 2)]).unwrap();
        assert!(g.compatible_pairs().unwrap().is_empty());
        assert_eq!(g.compatibility_graph().unwrap().edges(), g.edges());
    }

    #[test]
    fn complete_tiered_two_singletons() {
        let g = complete_tiered_graph(&[1, 2]).unwrap();
        assert_eq!(g.edges(), &[(1, 2)]);
    }

    #[test]
    fn complete_tiered_rejects_gaps() {
        assert!(matches!(
            complete_tiered_graph(&[1, 3]),
            Err(GraphError::NonSurjectiveTiering(_))
        ));
    }

    #[test]
    fn complete_tiered_graph_is_every_trees_compatibility_graph() {
        // three-pool tiering (2,1,3): the compatibility graph of any spanning
        // tiered tree equals the complete tiered graph of the tiering
        let tiering = [1, 1, 2, 3, 3, 3];
        let complete = complete_tiered_graph(&tiering).unwrap();
        let trees =
            crate::tutte::spanning_trees(complete.graph(), crate::tutte::DEFAULT_TREE_CAP)
                .unwrap();
        assert!(!trees.is_empty());
        for edges in trees {
            let tree = TieredGraph::new(6, 3, tiering.to_vec(), edges).unwrap();
            assert_eq!(tree.compatibility_graph().unwrap().edges(), complete.edges());
        }
    }

    #[test]
    fn doc_roundtrip() {
        let g = worked_example_graph();
        let doc = TieredGraphDoc::from(&g);
        let back = TieredGraph::try_from(&doc).unwrap();
        assert_eq!(g, back);
    }
}
