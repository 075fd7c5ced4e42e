//! Whitney operations on tiered graphs: identification, cleaving, twisting.
//!
//! Identification aligns the two tierings so that the merged vertex receives a
//! single tier index (the tier concatenation t₁(i′) • t₂(i″) read as
//! pairing tier k with tier k after padding); labels are relabelled
//! order-preservingly with the merged vertex taking the slot of both
//! attachment vertices.

// index-map construction loops read better keyed by the vertex number
#![allow(clippy::needless_range_loop)]

use crate::graph::{Edge, EmptyTierPolicy, GraphError, SimpleGraph, TieredGraph, Vertex};
use std::collections::BTreeSet;

fn check_vertex(g: &TieredGraph, v: Vertex) -> Result<(), GraphError> {
    if v == 0 || v > g.vertex_count() {
        return Err(GraphError::UnknownVertex(v, g.vertex_count()));
    }
    Ok(())
}

/// Merge v1 of g1 with v2 of g2 into a single vertex adjacent to all former
/// neighbours of both.
pub fn identify(
    g1: &TieredGraph,
    v1: Vertex,
    g2: &TieredGraph,
    v2: Vertex,
) -> Result<TieredGraph, GraphError> {
    check_vertex(g1, v1)?;
    check_vertex(g2, v2)?;
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());

    // Align tiers so the two attachment tiers coincide.
    let delta = g2.tier(v2) as isize - g1.tier(v1) as isize;
    let s1 = delta.max(0) as usize;
    let s2 = (-delta).max(0) as usize;
    let m = (g1.tier_count() + s1).max(g2.tier_count() + s2);

    // New label order: [g1 < v1][g2 < v2][merged][g1 > v1][g2 > v2].
    let n = n1 + n2 - 1;
    let mut map1 = vec![0usize; n1 + 1];
    let mut map2 = vec![0usize; n2 + 1];
    let mut next = 1;
    for v in 1..v1 {
        map1[v] = next;
        next += 1;
    }
    for v in 1..v2 {
        map2[v] = next;
        next += 1;
    }
    let merged = next;
    map1[v1] = merged;
    map2[v2] = merged;
    next += 1;
    for v in v1 + 1..=n1 {
        map1[v] = next;
        next += 1;
    }
    for v in v2 + 1..=n2 {
        map2[v] = next;
        next += 1;
    }
    debug_assert_eq!(next, n + 1);

    let mut tier = vec![0usize; n];
    for v in 1..=n1 {
        tier[map1[v] - 1] = g1.tier(v) + s1;
    }
    for v in 1..=n2 {
        tier[map2[v] - 1] = g2.tier(v) + s2;
    }

    let mut edges: Vec<Edge> = Vec::new();
    for &(a, b) in g1.edges() {
        let (x, y) = (map1[a], map1[b]);
        edges.push((x.min(y), x.max(y)));
    }
    for &(a, b) in g2.edges() {
        let (x, y) = (map2[a], map2[b]);
        edges.push((x.min(y), x.max(y)));
    }

    Ok(TieredGraph::new(n, m, tier, edges)?
        .with_policy(EmptyTierPolicy::AllowFromIdentification))
}

/// Split a graph at a cut vertex into two parts, each retaining a copy of it.
/// The first part is the component containing the smallest non-cut vertex.
pub fn cleave(g: &TieredGraph, v: Vertex) -> Result<(TieredGraph, TieredGraph), GraphError> {
    check_vertex(g, v)?;
    let n = g.vertex_count();
    let without: SimpleGraph = SimpleGraph::new(
        n,
        g.edges().iter().copied().filter(|&(a, b)| a != v && b != v),
    )?;
    let comps: Vec<BTreeSet<Vertex>> = without
        .components()
        .into_iter()
        .filter(|c| !(c.len() == 1 && c.contains(&v)))
        .collect();
    if comps.len() < 2 {
        return Err(GraphError::NotACutVertex(v));
    }
    let first: BTreeSet<Vertex> = comps[0].iter().copied().chain([v]).collect();
    let second: BTreeSet<Vertex> = comps[1..]
        .iter()
        .flat_map(|c| c.iter().copied())
        .chain([v])
        .collect();
    Ok((induced(g, &first), induced(g, &second)))
}

/// Induced tiered subgraph with labels and tiers compressed order-preservingly.
fn induced(g: &TieredGraph, verts: &BTreeSet<Vertex>) -> TieredGraph {
    let relabel: std::collections::BTreeMap<Vertex, Vertex> = verts
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i + 1))
        .collect();
    let mut tiers_used: Vec<usize> = verts.iter().map(|&v| g.tier(v)).collect();
    tiers_used.sort_unstable();
    tiers_used.dedup();
    let tier_map: std::collections::BTreeMap<usize, usize> = tiers_used
        .iter()
        .enumerate()
        .map(|(i, &t)| (t, i + 1))
        .collect();
    let tier: Vec<usize> = verts.iter().map(|&v| tier_map[&g.tier(v)]).collect();
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|&&(a, b)| verts.contains(&a) && verts.contains(&b))
        .map(|&(a, b)| (relabel[&a], relabel[&b]))
        .collect();
    TieredGraph::new(verts.len(), tiers_used.len(), tier, edges)
        .expect("induced subgraph of a valid graph is valid")
}

/// Twisted 2-sum: identify u1 with v2 and u2 with v1.
///
/// Valid as a tiered graph only when the attachment tiers align
/// (t1(u1) − t2(v2) = t1(v1) − t2(u2)) and the label orders anti-match
/// ((u1 < v1) ⇔ (v2 < u2)); otherwise InvalidAttachment.
pub fn twist(
    g1: &TieredGraph,
    u1: Vertex,
    v1: Vertex,
    g2: &TieredGraph,
    u2: Vertex,
    v2: Vertex,
) -> Result<TieredGraph, GraphError> {
    for (g, v) in [(g1, u1), (g1, v1), (g2, u2), (g2, v2)] {
        check_vertex(g, v)?;
    }
    if u1 == v1 || u2 == v2 {
        return Err(GraphError::InvalidAttachment(
            "attachment vertices must be distinct".into(),
        ));
    }
    // normalise so u1 < v1 (swapping both pairs keeps the identification)
    let (u1, v1, u2, v2) = if u1 < v1 { (u1, v1, u2, v2) } else { (v1, u1, v2, u2) };
    if !(v2 < u2) {
        return Err(GraphError::InvalidAttachment(
            "label orders must anti-match: u1<v1 requires v2<u2".into(),
        ));
    }
    let d1 = g2.tier(v2) as isize - g1.tier(u1) as isize;
    let d2 = g2.tier(u2) as isize - g1.tier(v1) as isize;
    if d1 != d2 {
        return Err(GraphError::InvalidAttachment(format!(
            "attachment tiers do not align: {d1} vs {d2}"
        )));
    }
    let s1 = d1.max(0) as usize;
    let s2 = (-d1).max(0) as usize;
    let m = (g1.tier_count() + s1).max(g2.tier_count() + s2);
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let n = n1 + n2 - 2;

    // [g1<u1][g2<v2] a [g1 in (u1,v1)][g2 in (v2,u2)] b [g1>v1][g2>u2]
    let mut map1 = vec![0usize; n1 + 1];
    let mut map2 = vec![0usize; n2 + 1];
    let mut next = 1;
    for v in 1..u1 {
        map1[v] = next;
        next += 1;
    }
    for v in 1..v2 {
        map2[v] = next;
        next += 1;
    }
    map1[u1] = next;
    map2[v2] = next;
    next += 1;
    for v in u1 + 1..v1 {
        map1[v] = next;
        next += 1;
    }
    for v in v2 + 1..u2 {
        map2[v] = next;
        next += 1;
    }
    map1[v1] = next;
    map2[u2] = next;
    next += 1;
    for v in v1 + 1..=n1 {
        map1[v] = next;
        next += 1;
    }
    for v in u2 + 1..=n2 {
        map2[v] = next;
        next += 1;
    }
    debug_assert_eq!(next, n + 1);

    let mut tier = vec![0usize; n];
    for v in 1..=n1 {
        tier[map1[v] - 1] = g1.tier(v) + s1;
    }
    for v in 1..=n2 {
        tier[map2[v] - 1] = g2.tier(v) + s2;
    }
    let mut edges: Vec<Edge> = Vec::new();
    for &(a, b) in g1.edges() {
        let (x, y) = (map1[a], map1[b]);
        edges.push((x.min(y), x.max(y)));
    }
    for &(a, b) in g2.edges() {
        let (x, y) = (map2[a], map2[b]);
        edges.push((x.min(y), x.max(y)));
    }
    Ok(TieredGraph::new(n, m, tier, edges)?
        .with_policy(EmptyTierPolicy::AllowFromIdentification))
}

/// Untwisted 2-sum as a plain graph (u1 with u2, v1 with v2), for comparing
/// Tutte polynomials and tree counts against the twist.
pub fn two_sum_plain(
    g1: &SimpleGraph,
    u1: Vertex,
    v1: Vertex,
    g2: &SimpleGraph,
    u2: Vertex,
    v2: Vertex,
) -> SimpleGraph {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let n = n1 + n2 - 2;
    let mut map1: Vec<usize> = vec![0; n1 + 1];
    let mut map2: Vec<usize> = vec![0; n2 + 1];
    let mut next = 1;
    for v in 1..=n1 {
        if v != u1 && v != v1 {
            map1[v] = next;
            next += 1;
        }
    }
    for v in 1..=n2 {
        if v != u2 && v != v2 {
            map2[v] = next;
            next += 1;
        }
    }
    map1[u1] = next;
    map2[u2] = next;
    map1[v1] = next + 1;
    map2[v2] = next + 1;
    let mut edges: Vec<Edge> = Vec::new();
    for &(a, b) in g1.edges() {
        let (x, y) = (map1[a], map1[b]);
        edges.push((x.min(y), x.max(y)));
    }
    for &(a, b) in g2.edges() {
        let (x, y) = (map2[a], map2[b]);
        edges.push((x.min(y), x.max(y)));
    }
    SimpleGraph::new(n, edges).expect("2-sum of simple graphs is simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_tiered_graph;
    use crate::tutte::{count_spanning_trees, tutte_polynomial, EdgeOrder, DEFAULT_TREE_CAP};

    fn triangle() -> TieredGraph {
        complete_tiered_graph(&[1, 2, 3]).unwrap()
    }

    #[test]
    fn identify_with_isolated_vertex_is_identity() {
        let g = triangle();
        let single = TieredGraph::new(1, 1, vec![1], []).unwrap();
        let merged = identify(&g, 2, &single, 1).unwrap();
        assert_eq!(merged.vertex_count(), 3);
        assert_eq!(merged.edges(), g.edges());
        assert_eq!(merged.tiers(), g.tiers());
        assert!(merged.validate().is_empty());
    }

    #[test]
    fn identify_multiplies_tree_counts() {
        let g1 = triangle();
        let g2 = complete_tiered_graph(&[1, 1, 2, 2]).unwrap();
        for v1 in 1..=3 {
            for v2 in 1..=4 {
                let joined = identify(&g1, v1, &g2, v2).unwrap();
                assert!(joined.validate().is_empty(), "valid for v1={v1} v2={v2}");
                assert_eq!(
                    count_spanning_trees(joined.graph()),
                    count_spanning_trees(g1.graph()) * count_spanning_trees(g2.graph())
                );
            }
        }
    }

    #[test]
    fn cleave_two_triangles_sharing_a_vertex() {
        let t = triangle();
        let joined = identify(&t, 3, &t, 1).unwrap();
        let (a, b) = cleave(&joined, 3).unwrap();
        assert_eq!(a, t);
        assert_eq!(b, t);
    }

    #[test]
    fn cleave_rejects_non_cut_vertices() {
        let t = triangle();
        assert!(matches!(cleave(&t, 1), Err(GraphError::NotACutVertex(1))));
    }

    #[test]
    fn identify_then_cleave_roundtrip() {
        let g1 = complete_tiered_graph(&[1, 2, 2, 3]).unwrap();
        let g2 = complete_tiered_graph(&[1, 1, 2]).unwrap();
        let mut tested = 0;
        for v1 in 1..=4 {
            for v2 in 1..=3 {
                // cleaving recovers the operands only when neither attachment
                // vertex is itself a cut vertex of its graph
                if is_cut(&g1, v1) || is_cut(&g2, v2) {
                    continue;
                }
                let joined = identify(&g1, v1, &g2, v2).unwrap();
                let merged_vertex = v1 + v2 - 1;
                let (a, b) = cleave(&joined, merged_vertex).unwrap();
                let (a, b) = if a.vertex_count() == g1.vertex_count() { (a, b) } else { (b, a) };
                assert_eq!(a, g1, "v1={v1} v2={v2}");
                assert_eq!(b, g2, "v1={v1} v2={v2}");
                tested += 1;
            }
        }
        assert!(tested >= 6, "only {tested} attachment pairs exercised");
    }

    fn is_cut(g: &TieredGraph, v: crate::graph::Vertex) -> bool {
        cleave(g, v).is_ok()
    }

    #[test]
    fn twist_by_an_edge_is_isomorphic_to_straight_join() {
        // g2 a single edge: the twist equals the plain 2-sum as a graph.
        // Attachment tiers must differ by the edge's own tier gap.
        let g1 = complete_tiered_graph(&[1, 2, 2]).unwrap();
        let edge = complete_tiered_graph(&[1, 2]).unwrap();
        // u1=1 (tier 1) < v1=2 (tier 2); v2=1 (tier 1) < u2=2 (tier 2)
        let twisted = twist(&g1, 1, 2, &edge, 2, 1).unwrap();
        assert!(twisted.validate().is_empty());
        let straight = two_sum_plain(g1.graph(), 1, 2, edge.graph(), 2, 1);
        assert_eq!(
            count_spanning_trees(twisted.graph()),
            count_spanning_trees(&straight)
        );
    }

    #[test]
    fn twist_preserves_tutte_polynomial() {
        let g1 = complete_tiered_graph(&[1, 2, 2, 3]).unwrap();
        let g2 = complete_tiered_graph(&[1, 1, 2]).unwrap();
        // attach at the two tier-2 vertices of g1 (labels 2,3) and the two
        // tier-1 vertices of g2 (labels 1,2): u1=2<v1=3 and v2=1<u2=2
        let twisted = twist(&g1, 2, 3, &g2, 2, 1).unwrap();
        assert!(twisted.validate().is_empty());
        let straight = two_sum_plain(g1.graph(), 2, 3, g2.graph(), 2, 1);
        let t1 = tutte_polynomial(
            twisted.graph(),
            &EdgeOrder::lexicographic(twisted.graph()),
            DEFAULT_TREE_CAP,
        )
        .unwrap();
        let t2 = tutte_polynomial(&straight, &EdgeOrder::lexicographic(&straight), DEFAULT_TREE_CAP)
            .unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn twist_rejects_misaligned_tiers() {
        let g1 = complete_tiered_graph(&[1, 2, 3]).unwrap();
        let g2 = complete_tiered_graph(&[1, 1, 2]).unwrap();
        // t1(1)=1, t1(2)=2 vs t2(2)=1, t2(1)=1: deltas differ
        assert!(matches!(
            twist(&g1, 1, 2, &g2, 2, 1),
            Err(GraphError::InvalidAttachment(_))
        ));
    }
}
