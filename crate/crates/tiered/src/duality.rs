//! Dual tiered graphs: vertex reversal i ↦ n+1−i with tier reversal
//! t ↦ m+1−t, and the induced bijection on spanning forests.

use crate::graph::{Edge, GraphError, TieredGraph};

/// The dual tiered graph: t*(i) = (m+1) − t(n+1−i) and
/// (i,j) ∈ E(G*) iff (n+1−i, n+1−j) ∈ E(G). An involution.
pub fn dual_graph(g: &TieredGraph) -> Result<TieredGraph, GraphError> {
    let m = g.tier_count();
    if m < 2 {
        return Err(GraphError::TooFewTiers(m));
    }
    if !g.graph().is_connected() {
        return Err(GraphError::DisconnectedGraph);
    }
    let n = g.vertex_count();
    let tier: Vec<usize> = (1..=n).map(|i| (m + 1) - g.tier(n + 1 - i)).collect();
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (n + 1 - a, n + 1 - b);
            (x.min(y), x.max(y))
        })
        .collect();
    TieredGraph::new(n, m, tier, edges)
}

/// Componentwise dual θ of a spanning forest: the image of the forest's edge
/// set under the vertex reversal of the ambient dual graph.
pub fn forest_dual(n: usize, forest: &[Edge]) -> Vec<Edge> {
    let mut out: Vec<Edge> = forest
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (n + 1 - a, n + 1 - b);
            (x.min(y), x.max(y))
        })
        .collect();
    out.sort_unstable();
    out
}

/// Does γ(i) = n+1−i preserve adjacency between G and G*? Checked pairwise.
pub fn gamma_is_isomorphism(g: &TieredGraph, dual: &TieredGraph) -> bool {
    let n = g.vertex_count();
    if dual.vertex_count() != n {
        return false;
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let mapped = g.graph().has_edge(n + 1 - i, n + 1 - j);
            if dual.graph().has_edge(i, j) != mapped {
                return false;
            }
        }
    }
    true
}
