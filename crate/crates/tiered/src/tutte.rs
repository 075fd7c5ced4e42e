//! Spanning-tree enumeration, the Matrix-Tree count, edge activities and the
//! Tutte polynomial.

use crate::exact::integer_determinant;
use crate::graph::{Edge, GraphError, SimpleGraph, Vertex};
use crate::poly::TuttePolynomial;
use num::{BigInt, One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;

/// Default guard on spanning-tree enumeration.
pub const DEFAULT_TREE_CAP: u64 = 10_000_000;

/// Total order on the edges of a graph, as a permutation of the edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrder {
    edges: Vec<Edge>,
}

impl EdgeOrder {
    /// Lexicographic order by (min endpoint, max endpoint).
    pub fn lexicographic(graph: &SimpleGraph) -> Self {
        EdgeOrder { edges: graph.edges().to_vec() }
    }

    /// Uniformly random total order (seeded by the caller's RNG).
    pub fn random(graph: &SimpleGraph, rng: &mut impl Rng) -> Self {
        let mut edges = graph.edges().to_vec();
        edges.shuffle(rng);
        EdgeOrder { edges }
    }

    pub fn from_edges(graph: &SimpleGraph, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let want: BTreeSet<Edge> = graph.edges().iter().copied().collect();
        let got: BTreeSet<Edge> = edges.iter().copied().collect();
        if want != got || edges.len() != graph.edge_count() {
            return Err(GraphError::NotSpanningTree);
        }
        Ok(EdgeOrder { edges })
    }

    pub fn rank(&self, e: Edge) -> usize {
        self.edges.iter().position(|&x| x == e).expect("edge not in order")
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

/// Number of spanning trees by the Matrix-Tree theorem, in exact arithmetic.
/// Returns 0 for disconnected graphs; 1 for the single-vertex graph.
pub fn count_spanning_trees(graph: &SimpleGraph) -> BigInt {
    let n = graph.vertex_count();
    if n == 0 {
        return BigInt::zero();
    }
    if n == 1 {
        return BigInt::one();
    }
    // principal minor of the Laplacian: drop the last row and column
    let mut lap = vec![vec![BigInt::zero(); n - 1]; n - 1];
    for v in 1..n {
        lap[v - 1][v - 1] = BigInt::from(graph.degree(v));
    }
    for &(a, b) in graph.edges() {
        if a < n && b < n {
            lap[a - 1][b - 1] -= 1;
            lap[b - 1][a - 1] -= 1;
        }
    }
    integer_determinant(&lap)
}

/// All spanning trees, enumerated by recursive inclusion/exclusion over the
/// lexicographic edge order, each tree exactly once, deterministic order.
///
/// Refuses graphs whose Matrix-Tree count exceeds `cap`.
pub fn spanning_trees(graph: &SimpleGraph, cap: u64) -> Result<Vec<Vec<Edge>>, GraphError> {
    if !graph.is_connected() {
        return Err(GraphError::DisconnectedGraph);
    }
    let count = count_spanning_trees(graph);
    if count > BigInt::from(cap) {
        return Err(GraphError::CapExceeded { count: count.to_string(), cap });
    }
    let n = graph.vertex_count();
    let edges = graph.edges();
    let mut out = Vec::new();
    let mut chosen: Vec<Edge> = Vec::new();
    recurse(edges, 0, n, &mut chosen, &mut out);
    Ok(out)
}

fn recurse(
    edges: &[Edge],
    idx: usize,
    n: usize,
    chosen: &mut Vec<Edge>,
    out: &mut Vec<Vec<Edge>>,
) {
    if chosen.len() == n - 1 {
        out.push(chosen.clone());
        return;
    }
    if idx == edges.len() {
        return;
    }
    // prune: not enough edges left to finish
    if chosen.len() + (edges.len() - idx) < n - 1 {
        return;
    }
    let e = edges[idx];
    let mut test = chosen.clone();
    test.push(e);
    if SimpleGraph::is_acyclic(&test, n) {
        chosen.push(e);
        recurse(edges, idx + 1, n, chosen, out);
        chosen.pop();
    }
    // exclude e only if the rest can still connect the graph
    let rest: Vec<Edge> = chosen
        .iter()
        .copied()
        .chain(edges[idx + 1..].iter().copied())
        .collect();
    if spans(&rest, n) {
        recurse(edges, idx + 1, n, chosen, out);
    }
}

fn spans(edges: &[Edge], n: usize) -> bool {
    let g = SimpleGraph::new(n, edges.iter().copied()).expect("edges validated upstream");
    g.is_connected()
}

/// All spanning forests (acyclic edge subsets over the full vertex set).
pub fn spanning_forests(graph: &SimpleGraph) -> Vec<Vec<Edge>> {
    let n = graph.vertex_count();
    let edges = graph.edges();
    let mut out = Vec::new();
    let mut chosen: Vec<Edge> = Vec::new();
    fn go(edges: &[Edge], idx: usize, n: usize, chosen: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        if idx == edges.len() {
            out.push(chosen.clone());
            return;
        }
        let mut test = chosen.clone();
        test.push(edges[idx]);
        if SimpleGraph::is_acyclic(&test, n) {
            chosen.push(edges[idx]);
            go(edges, idx + 1, n, chosen, out);
            chosen.pop();
        }
        go(edges, idx + 1, n, chosen, out);
    }
    go(edges, 0, n, &mut chosen, &mut out);
    out
}

/// Internal and external activity counts of a spanning tree under an order.
pub fn activities(
    graph: &SimpleGraph,
    tree: &[Edge],
    order: &EdgeOrder,
) -> Result<(usize, usize), GraphError> {
    let n = graph.vertex_count();
    let tset: BTreeSet<Edge> = tree.iter().copied().collect();
    if tree.len() != n.saturating_sub(1)
        || !SimpleGraph::is_acyclic(tree, n)
        || !tset.iter().all(|&(a, b)| graph.has_edge(a, b))
    {
        return Err(GraphError::NotSpanningTree);
    }
    let tree_graph = SimpleGraph::new(n, tree.iter().copied())?;
    if !tree_graph.is_connected() {
        return Err(GraphError::NotSpanningTree);
    }

    let mut internal = 0usize;
    for &e in tree {
        // fundamental cut: edges of G joining the two components of T - e
        let side = half_of_cut(&tree_graph, e);
        let cut_min = graph
            .edges()
            .iter()
            .copied()
            .filter(|&(a, b)| side.contains(&a) != side.contains(&b))
            .min_by_key(|&f| order.rank(f))
            .expect("cut contains e itself");
        if cut_min == e {
            internal += 1;
        }
    }

    let mut external = 0usize;
    for &e in graph.edges() {
        if tset.contains(&e) {
            continue;
        }
        // fundamental cycle: tree path between the endpoints, plus e
        let path = tree_path(&tree_graph, e.0, e.1);
        let cyc_min = path
            .into_iter()
            .chain(std::iter::once(e))
            .min_by_key(|&f| order.rank(f))
            .expect("cycle nonempty");
        if cyc_min == e {
            external += 1;
        }
    }
    Ok((internal, external))
}

/// Vertices on e.0's side after deleting e from the tree.
fn half_of_cut(tree: &SimpleGraph, e: Edge) -> BTreeSet<Vertex> {
    let mut seen = BTreeSet::from([e.0]);
    let mut stack = vec![e.0];
    while let Some(v) = stack.pop() {
        for u in tree.neighbors(v) {
            if (v, u) == e || (u, v) == e {
                continue;
            }
            if seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen
}

/// Edges of the tree path from a to b.
fn tree_path(tree: &SimpleGraph, a: Vertex, b: Vertex) -> Vec<Edge> {
    let n = tree.vertex_count();
    let mut prev = vec![0usize; n + 1];
    let mut seen = vec![false; n + 1];
    seen[a] = true;
    let mut stack = vec![a];
    while let Some(v) = stack.pop() {
        for u in tree.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                prev[u] = v;
                stack.push(u);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = b;
    while v != a {
        let p = prev[v];
        path.push((p.min(v), p.max(v)));
        v = p;
    }
    path
}

/// Tutte polynomial as the activity generating function over spanning trees.
pub fn tutte_polynomial(
    graph: &SimpleGraph,
    order: &EdgeOrder,
    cap: u64,
) -> Result<TuttePolynomial, GraphError> {
    let trees = spanning_trees(graph, cap)?;
    let mut poly = TuttePolynomial::zero();
    for tree in &trees {
        let (int_act, ext_act) = activities(graph, tree, order)?;
        poly.add_monomial(int_act as u32, ext_act as u32, BigInt::one());
    }
    Ok(poly)
}

/// Histogram of external activities over all spanning trees (lexicographic
/// order); index k holds the number of trees with ext(T) = k.
pub fn external_activity_histogram(graph: &SimpleGraph, cap: u64) -> Result<Vec<usize>, GraphError> {
    let order = EdgeOrder::lexicographic(graph);
    let trees = spanning_trees(graph, cap)?;
    let mut hist = Vec::new();
    for tree in &trees {
        let (_, ext) = activities(graph, tree, &order)?;
        if hist.len() <= ext {
            hist.resize(ext + 1, 0);
        }
        hist[ext] += 1;
    }
    Ok(hist)
}

pub fn complete_graph(n: usize) -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            edges.push((i, j));
        }
    }
    SimpleGraph::new(n, edges).expect("complete graph is simple")
}
