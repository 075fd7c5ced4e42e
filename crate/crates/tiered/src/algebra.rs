//! Graded algebras attached to a graph: the monomial ideal (standard
//! monomials = G-parking configurations), the power ideal, the square-free
//! algebra Φ_G with its spanning-tree-counting subalgebra 𝒞_G, and the space
//! 𝒮_G of complete tiered graphs. All dimensions are exact ranks over the
//! rationals.

use crate::exact::integer_rank;
use crate::graph::{complete_tiered_graph, Edge, GraphError, SimpleGraph, TieredGraph, Vertex};
use crate::poly::{TuttePolynomial, UniPoly};
use crate::sandpile::enumerate_g_parking;
use crate::tutte::{count_spanning_trees, external_activity_histogram, spanning_trees, EdgeOrder};
use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

/// Slim-subgraph enumeration walks 2^e subsets.
pub const MAX_SLIM_EDGES: usize = 20;
/// Rank computations cap.
pub const MAX_RANK_VERTICES: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("vertex {0} is not a member of the subset")]
    VertexNotInSubset(Vertex),
    #[error("{what} ({got}) exceeds cap {cap}")]
    CapExceeded { what: &'static str, got: usize, cap: usize },
    #[error("graph is not a complete tiered graph")]
    NotCompleteTiered,
    #[error("specialization produced a negative exponent; internal bug")]
    NonPolynomialResult,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sandpile(#[from] crate::sandpile::SandpileError),
}

/// d_I(i): number of edges from i ∈ I to vertices outside I.
pub fn d_subset_degree(graph: &SimpleGraph, subset: &[Vertex], i: Vertex) -> Result<usize, AlgebraError> {
    if !subset.contains(&i) {
        return Err(AlgebraError::VertexNotInSubset(i));
    }
    Ok(graph
        .neighbors(i)
        .iter()
        .filter(|u| !subset.contains(u))
        .count())
}

/// Monomial m_I = Π_{i∈I} x_i^{d_I(i)}, as an exponent vector over the
/// non-sink vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub exponents: BTreeMap<Vertex, usize>,
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.exponents.values().sum()
    }

    pub fn divides(&self, other: &BTreeMap<Vertex, usize>) -> bool {
        self.exponents
            .iter()
            .all(|(v, &e)| other.get(v).copied().unwrap_or(0) >= e)
    }
}

/// Power-ideal generator p_I = (Σ_{i∈I} x_i)^{D_I + 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerGenerator {
    pub support: Vec<Vertex>,
    pub exponent: usize,
}

fn non_sink_subsets(graph: &SimpleGraph, sink: Vertex) -> Result<Vec<Vec<Vertex>>, AlgebraError> {
    let others: Vec<Vertex> = graph.vertices().filter(|&v| v != sink).collect();
    if others.len() > MAX_SLIM_EDGES {
        return Err(AlgebraError::CapExceeded {
            what: "non-sink vertices",
            got: others.len(),
            cap: MAX_SLIM_EDGES,
        });
    }
    let mut out = Vec::new();
    for mask in 1u64..(1 << others.len()) {
        out.push(
            others
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect(),
        );
    }
    Ok(out)
}

/// One m_I per non-empty subset I of the non-sink vertices.
pub fn monomial_ideal_generators(
    graph: &SimpleGraph,
    sink: Vertex,
) -> Result<Vec<Monomial>, AlgebraError> {
    let mut out = Vec::new();
    for subset in non_sink_subsets(graph, sink)? {
        let exponents = subset
            .iter()
            .map(|&i| Ok((i, d_subset_degree(graph, &subset, i)?)))
            .collect::<Result<_, AlgebraError>>()?;
        out.push(Monomial { exponents });
    }
    Ok(out)
}

/// One p_I per non-empty subset I of the non-sink vertices.
pub fn power_ideal_generators(
    graph: &SimpleGraph,
    sink: Vertex,
) -> Result<Vec<PowerGenerator>, AlgebraError> {
    let mut out = Vec::new();
    for subset in non_sink_subsets(graph, sink)? {
        let d_total: usize = subset
            .iter()
            .map(|&i| d_subset_degree(graph, &subset, i))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .sum();
        out.push(PowerGenerator { support: subset, exponent: d_total + 1 });
    }
    Ok(out)
}

/// Exponent vectors (over non-sink vertices) of monomials divisible by no
/// m_I. These are exactly the G-parking configurations.
pub fn standard_monomials(
    graph: &SimpleGraph,
    sink: Vertex,
) -> Result<Vec<BTreeMap<Vertex, usize>>, AlgebraError> {
    let gens = monomial_ideal_generators(graph, sink)?;
    let others: Vec<Vertex> = graph.vertices().filter(|&v| v != sink).collect();
    let mut out = Vec::new();
    let mut exps: BTreeMap<Vertex, usize> = others.iter().map(|&v| (v, 0)).collect();
    loop {
        if !gens.iter().any(|g| g.divides(&exps)) {
            out.push(exps.clone());
        }
        let mut idx = 0;
        loop {
            if idx == others.len() {
                return Ok(out);
            }
            let v = others[idx];
            let e = exps.get_mut(&v).expect("non-sink vertex");
            if *e + 1 < graph.degree(v) {
                *e += 1;
                break;
            }
            *e = 0;
            idx += 1;
        }
    }
}

/// Slim subgraphs (edge subsets with connected complement) graded by size,
/// each as a bitmask over the graph's lexicographic edge list.
#[derive(Debug, Clone)]
pub struct SlimBasis {
    pub edge_list: Vec<Edge>,
    pub by_degree: Vec<Vec<u32>>,
}

pub fn slim_subgraphs(graph: &SimpleGraph) -> Result<SlimBasis, AlgebraError> {
    let e = graph.edge_count();
    if e > MAX_SLIM_EDGES {
        return Err(AlgebraError::CapExceeded { what: "edges", got: e, cap: MAX_SLIM_EDGES });
    }
    if !graph.is_connected() {
        return Err(AlgebraError::Graph(GraphError::DisconnectedGraph));
    }
    let edge_list = graph.edges().to_vec();
    let max_size = e.saturating_sub(graph.vertex_count().saturating_sub(1));
    let mut by_degree: Vec<Vec<u32>> = vec![Vec::new(); max_size + 1];
    for mask in 0u32..(1 << e) {
        let size = mask.count_ones() as usize;
        if size > max_size {
            continue;
        }
        let removed: BTreeSet<Edge> = edge_list
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if graph.without_edges(&removed).is_connected() {
            by_degree[size].push(mask);
        }
    }
    Ok(SlimBasis { edge_list, by_degree })
}

/// Signed incidence coefficients c_{i,e}: +1 if e = (i,j) with i < j, −1 if
/// i > j, 0 otherwise. Row per vertex, column per edge in lexicographic
/// order.
pub fn c_algebra_generators(graph: &SimpleGraph) -> Vec<Vec<i8>> {
    let edges = graph.edges();
    graph
        .vertices()
        .map(|i| {
            edges
                .iter()
                .map(|&(a, b)| {
                    if a == i {
                        1
                    } else if b == i {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

/// Per-degree dimensions of a graded algebra or space, plus the total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDimensions {
    pub dims: Vec<usize>,
}

impl GradedDimensions {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn as_polynomial(&self) -> UniPoly {
        let mut p = UniPoly::zero();
        for (k, &d) in self.dims.iter().enumerate() {
            p.add_term(k, BigInt::from(d));
        }
        p
    }
}

/// Graded dimensions of 𝒞_G: degree k is spanned by the k-fold products of
/// the generators X_i expanded in the slim φ-basis; dimension is the exact
/// rank.
pub fn c_algebra_graded_dims(graph: &SimpleGraph) -> Result<GradedDimensions, AlgebraError> {
    if graph.vertex_count() > MAX_RANK_VERTICES {
        return Err(AlgebraError::CapExceeded {
            what: "vertices",
            got: graph.vertex_count(),
            cap: MAX_RANK_VERTICES,
        });
    }
    let slim = slim_subgraphs(graph)?;
    let coeffs = c_algebra_generators(graph);
    let slim_index: Vec<HashMap<u32, usize>> = slim
        .by_degree
        .iter()
        .map(|masks| masks.iter().enumerate().map(|(i, &m)| (m, i)).collect())
        .collect();
    let n = graph.vertex_count();
    let e = graph.edge_count();

    let mut dims = vec![1usize]; // degree 0: the unit
    for k in 1..slim.by_degree.len() {
        let basis = &slim_index[k];
        if basis.is_empty() {
            dims.push(0);
            continue;
        }
        // DFS over non-decreasing generator sequences, reusing prefix products
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut product: HashMap<u32, BigInt> = HashMap::from([(0u32, BigInt::one())]);
        dfs_products(
            1,
            k,
            n,
            e,
            &coeffs,
            &slim_index,
            &mut product,
            basis,
            &mut rows,
        );
        dims.push(integer_rank(&rows));
    }
    Ok(GradedDimensions { dims })
}

#[allow(clippy::too_many_arguments)]
fn dfs_products(
    min_gen: usize,
    remaining: usize,
    n: usize,
    e: usize,
    coeffs: &[Vec<i8>],
    slim_index: &[HashMap<u32, usize>],
    product: &mut HashMap<u32, BigInt>,
    basis: &HashMap<u32, usize>,
    rows: &mut Vec<Vec<BigInt>>,
) {
    if remaining == 0 {
        let mut row = vec![BigInt::zero(); basis.len()];
        let mut nonzero = false;
        for (mask, c) in product.iter() {
            if let Some(&idx) = basis.get(mask) {
                if !c.is_zero() {
                    row[idx] = c.clone();
                    nonzero = true;
                }
            }
        }
        if nonzero {
            rows.push(row);
        }
        return;
    }
    for i in min_gen..=n {
        let mut next: HashMap<u32, BigInt> = HashMap::new();
        for (mask, c) in product.iter() {
            if c.is_zero() {
                continue;
            }
            for ej in 0..e {
                let sign = coeffs[i - 1][ej];
                if sign == 0 || mask >> ej & 1 == 1 {
                    continue;
                }
                let new_mask = mask | (1 << ej);
                let size = new_mask.count_ones() as usize;
                // nonslim products vanish
                if size < slim_index.len() && slim_index[size].contains_key(&new_mask) {
                    let entry = next.entry(new_mask).or_insert_with(BigInt::zero);
                    *entry += BigInt::from(sign) * c;
                }
            }
        }
        if !next.is_empty() {
            let saved = std::mem::replace(product, next);
            dfs_products(i, remaining - 1, n, e, coeffs, slim_index, product, basis, rows);
            *product = saved;
        }
    }
}

/// The Macaulay sweep walks monomial spaces of dimension
/// C(vars+degree−1, degree) up to the socle degree, so the power-ideal
/// quotient gets a much tighter cap than the other rank computations.
pub const MAX_POWER_IDEAL_VERTICES: usize = 6;
pub const MAX_POWER_IDEAL_EDGES: usize = 10;

/// Graded dimensions of the power-ideal quotient ℬ_G, Macaulay style:
/// degree-by-degree exact rank of the ideal's span, truncated once the
/// quotient vanishes.
pub fn b_algebra_graded_dims(
    graph: &SimpleGraph,
    sink: Vertex,
) -> Result<GradedDimensions, AlgebraError> {
    if graph.vertex_count() > MAX_POWER_IDEAL_VERTICES {
        return Err(AlgebraError::CapExceeded {
            what: "vertices",
            got: graph.vertex_count(),
            cap: MAX_POWER_IDEAL_VERTICES,
        });
    }
    if graph.edge_count() > MAX_POWER_IDEAL_EDGES {
        return Err(AlgebraError::CapExceeded {
            what: "edges",
            got: graph.edge_count(),
            cap: MAX_POWER_IDEAL_EDGES,
        });
    }
    let gens = power_ideal_generators(graph, sink)?;
    let vars: Vec<Vertex> = graph.vertices().filter(|&v| v != sink).collect();
    let mut dims = Vec::new();
    for degree in 0.. {
        let monos = monomials_of_degree(&vars, degree);
        let index: HashMap<Vec<usize>, usize> =
            monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for gen in &gens {
            if gen.exponent > degree {
                continue;
            }
            let expansion = power_sum_expansion(&vars, &gen.support, gen.exponent);
            for shift in monomials_of_degree(&vars, degree - gen.exponent) {
                let mut row = vec![BigInt::zero(); monos.len()];
                for (mono, c) in &expansion {
                    let combined: Vec<usize> =
                        mono.iter().zip(&shift).map(|(a, b)| a + b).collect();
                    row[index[&combined]] += c;
                }
                rows.push(row);
            }
        }
        let rank = integer_rank(&rows);
        let dim = monos.len() - rank;
        dims.push(dim);
        if dim == 0 {
            break;
        }
    }
    Ok(GradedDimensions { dims })
}

/// All exponent vectors over `vars` of total degree `degree`.
fn monomials_of_degree(vars: &[Vertex], degree: usize) -> Vec<Vec<usize>> {
    fn go(pos: usize, left: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos + 1 == current.len() {
            current[pos] = left;
            out.push(current.clone());
            current[pos] = 0;
            return;
        }
        for take in 0..=left {
            current[pos] = take;
            go(pos + 1, left - take, current, out);
        }
        current[pos] = 0;
    }
    if vars.is_empty() {
        return if degree == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut current = vec![0usize; vars.len()];
    go(0, degree, &mut current, &mut out);
    out
}

/// Multinomial expansion of (Σ_{i∈support} x_i)^power over `vars`.
fn power_sum_expansion(
    vars: &[Vertex],
    support: &[Vertex],
    power: usize,
) -> Vec<(Vec<usize>, BigInt)> {
    let positions: Vec<usize> = support
        .iter()
        .map(|v| vars.iter().position(|w| w == v).expect("support within vars"))
        .collect();
    let mut out = Vec::new();
    let mut comp = vec![0usize; positions.len()];
    fn go(
        idx: usize,
        left: usize,
        comp: &mut Vec<usize>,
        positions: &[usize],
        nvars: usize,
        power: usize,
        out: &mut Vec<(Vec<usize>, BigInt)>,
    ) {
        if idx + 1 == comp.len() {
            comp[idx] = left;
            let mut exps = vec![0usize; nvars];
            for (i, &p) in positions.iter().enumerate() {
                exps[p] = comp[i];
            }
            out.push((exps, multinomial(power, comp)));
            comp[idx] = 0;
            return;
        }
        for take in 0..=left {
            comp[idx] = take;
            go(idx + 1, left - take, comp, positions, nvars, power, out);
        }
        comp[idx] = 0;
    }
    if positions.is_empty() {
        return out;
    }
    go(0, power, &mut comp, &positions, vars.len(), power, &mut out);
    out
}

fn multinomial(total: usize, parts: &[usize]) -> BigInt {
    let mut result = BigInt::one();
    let mut remaining = total;
    for &p in parts {
        result *= binomial(remaining, p);
        remaining -= p;
    }
    result
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k.min(n - k) {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Hilbert polynomial of 𝒞_G as a Tutte specialization:
/// ℋ(s) = T_G(1, s⁻¹) · s^{e−v+c}.
pub fn hilbert_via_tutte(graph: &SimpleGraph, tutte: &TuttePolynomial) -> Result<UniPoly, AlgebraError> {
    let genus = graph.edge_count() as i64 - graph.vertex_count() as i64
        + graph.components().len() as i64;
    let mut poly = UniPoly::zero();
    for (&(_, b), c) in tutte.terms() {
        let exp = genus - b as i64;
        if exp < 0 {
            return Err(AlgebraError::NonPolynomialResult);
        }
        poly.add_term(exp as usize, c.clone());
    }
    Ok(poly)
}

/// Forest-side Hilbert series T_G(1+s, s⁻¹) · s^{e−v+c}; its value at s = 1
/// is the number of spanning forests. This is the series the power ideal
/// realizes.
pub fn forest_hilbert_via_tutte(
    graph: &SimpleGraph,
    tutte: &TuttePolynomial,
) -> Result<UniPoly, AlgebraError> {
    let genus = graph.edge_count() as i64 - graph.vertex_count() as i64
        + graph.components().len() as i64;
    let mut poly = UniPoly::zero();
    for (&(a, b), c) in tutte.terms() {
        for j in 0..=a {
            let exp = j as i64 + genus - b as i64;
            if exp < 0 {
                return Err(AlgebraError::NonPolynomialResult);
            }
            poly.add_term(exp as usize, c * binomial(a as usize, j as usize));
        }
    }
    Ok(poly)
}

/// Graded dimensions of the space 𝒮_G spanned by Z_H = Π_{(i,j)∈H} (z_i−z_j)
/// over slim subgraphs H, for complete tiered graphs.
pub fn s_space_graded_dims(graph: &TieredGraph) -> Result<GradedDimensions, AlgebraError> {
    require_complete_tiered(graph)?;
    let slim = slim_subgraphs(graph.graph())?;
    let n = graph.vertex_count();
    let vars: Vec<Vertex> = (1..=n).collect();
    let mut dims = vec![1usize];
    for k in 1..slim.by_degree.len() {
        let masks = &slim.by_degree[k];
        if masks.is_empty() {
            dims.push(0);
            continue;
        }
        let monos = monomials_of_degree(&vars, k);
        let index: HashMap<Vec<usize>, usize> =
            monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut rows = Vec::new();
        for &mask in masks {
            rows.push(z_polynomial_row(&slim.edge_list, mask, n, &index, monos.len()));
        }
        dims.push(integer_rank(&rows));
    }
    Ok(GradedDimensions { dims })
}

fn z_polynomial_row(
    edge_list: &[Edge],
    mask: u32,
    n: usize,
    index: &HashMap<Vec<usize>, usize>,
    width: usize,
) -> Vec<BigInt> {
    // expand Π (z_i − z_j) over the edges in the mask
    let mut terms: HashMap<Vec<usize>, BigInt> =
        HashMap::from([(vec![0usize; n], BigInt::one())]);
    for (ej, &(i, j)) in edge_list.iter().enumerate() {
        if mask >> ej & 1 == 0 {
            continue;
        }
        let mut next: HashMap<Vec<usize>, BigInt> = HashMap::new();
        for (exps, c) in &terms {
            let mut plus = exps.clone();
            plus[i - 1] += 1;
            *next.entry(plus).or_insert_with(BigInt::zero) += c;
            let mut minus = exps.clone();
            minus[j - 1] += 1;
            *next.entry(minus).or_insert_with(BigInt::zero) -= c;
        }
        terms = next;
    }
    let mut row = vec![BigInt::zero(); width];
    for (exps, c) in terms {
        if !c.is_zero() {
            row[index[&exps]] = c;
        }
    }
    row
}

fn require_complete_tiered(graph: &TieredGraph) -> Result<(), AlgebraError> {
    let complete = complete_tiered_graph(graph.tiers()).map_err(AlgebraError::Graph)?;
    if complete.edges() != graph.edges() {
        return Err(AlgebraError::NotCompleteTiered);
    }
    Ok(())
}

/// Does the family Z_{G∖T_act}, T ranging over spanning trees with their
/// externally active edges joined, span 𝒮_G degree by degree?
pub fn spanning_lemma_check(graph: &TieredGraph, cap: u64) -> Result<bool, AlgebraError> {
    require_complete_tiered(graph)?;
    let gp = graph.graph();
    let slim = slim_subgraphs(gp)?;
    let s_dims = s_space_graded_dims(graph)?;
    let order = EdgeOrder::lexicographic(gp);
    let edge_pos: HashMap<Edge, usize> =
        gp.edges().iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let n = gp.vertex_count();
    let vars: Vec<Vertex> = (1..=n).collect();

    // group masks of G \ T_act by degree
    let mut families: BTreeMap<usize, BTreeSet<u32>> = BTreeMap::new();
    for tree in spanning_trees(gp, cap).map_err(AlgebraError::Graph)? {
        let tree_set: BTreeSet<Edge> = tree.iter().copied().collect();
        let mut active: BTreeSet<Edge> = BTreeSet::new();
        for &e in gp.edges() {
            if tree_set.contains(&e) {
                continue;
            }
            if is_externally_active(gp, &tree, e, &order) {
                active.insert(e);
            }
        }
        let mut mask = 0u32;
        for &e in gp.edges() {
            if !tree_set.contains(&e) && !active.contains(&e) {
                mask |= 1 << edge_pos[&e];
            }
        }
        families
            .entry(mask.count_ones() as usize)
            .or_default()
            .insert(mask);
    }

    for (k, &dim) in s_dims.dims.iter().enumerate() {
        if dim == 0 {
            continue;
        }
        let Some(masks) = families.get(&k) else {
            if k == 0 {
                // degree 0 is spanned by the empty product
                continue;
            }
            return Ok(false);
        };
        let monos = monomials_of_degree(&vars, k);
        let index: HashMap<Vec<usize>, usize> =
            monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let rows: Vec<Vec<BigInt>> = masks
            .iter()
            .map(|&mask| z_polynomial_row(&slim.edge_list, mask, n, &index, monos.len()))
            .collect();
        if integer_rank(&rows) != dim {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_externally_active(graph: &SimpleGraph, tree: &[Edge], e: Edge, order: &EdgeOrder) -> bool {
    // minimal edge of the fundamental cycle of tree + e
    let n = graph.vertex_count();
    let tg = SimpleGraph::new(n, tree.iter().copied()).expect("tree edges are valid");
    let mut prev = vec![0usize; n + 1];
    let mut seen = vec![false; n + 1];
    seen[e.0] = true;
    let mut stack = vec![e.0];
    while let Some(v) = stack.pop() {
        for u in tg.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                prev[u] = v;
                stack.push(u);
            }
        }
    }
    let mut cycle = vec![e];
    let mut v = e.1;
    while v != e.0 {
        let p = prev[v];
        cycle.push((p.min(v), p.max(v)));
        v = p;
    }
    cycle.into_iter().min_by_key(|&f| order.rank(f)) == Some(e)
}

/// Cross-checked dimension report for one graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GradedAlgebraReport {
    pub graded_dims: GradedDimensions,
    pub tree_count: u64,
    pub hilbert: Vec<u64>,
    pub ext_histogram: Vec<usize>,
    pub checks: AlgebraChecks,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraChecks {
    pub tutte_match: bool,
    pub histogram_match: bool,
    pub s_space_match: Option<bool>,
}

/// Assemble the 𝒞_G report: graded dimensions, the external-activity
/// histogram, the Hilbert specialization and, for complete tiered graphs,
/// the 𝒮_G comparison.
pub fn graded_algebra_report(
    graph: &SimpleGraph,
    tiered: Option<&TieredGraph>,
    cap: u64,
) -> Result<GradedAlgebraReport, AlgebraError> {
    let dims = c_algebra_graded_dims(graph)?;
    let tutte = crate::tutte::tutte_polynomial(graph, &EdgeOrder::lexicographic(graph), cap)
        .map_err(AlgebraError::Graph)?;
    let hilbert = hilbert_via_tutte(graph, &tutte)?;
    let hist = external_activity_histogram(graph, cap).map_err(AlgebraError::Graph)?;
    let tree_count = count_spanning_trees(graph);

    let tutte_match = hilbert == dims.as_polynomial();
    let genus = graph.edge_count() - (graph.vertex_count() - 1);
    let histogram_match = dims
        .dims
        .iter()
        .enumerate()
        .all(|(k, &d)| {
            let ext = genus as i64 - k as i64;
            let expected = if ext < 0 {
                0
            } else {
                hist.get(ext as usize).copied().unwrap_or(0)
            };
            d == expected
        });
    let s_space_match = match tiered {
        Some(t) => Some(s_space_graded_dims(t)? == dims),
        None => None,
    };
    Ok(GradedAlgebraReport {
        hilbert: hilbert
            .dense()
            .iter()
            .map(|c| u64::try_from(c).expect("desk-scale coefficients fit u64"))
            .collect(),
        graded_dims: dims,
        tree_count: u64::try_from(&tree_count).expect("desk-scale counts fit u64"),
        ext_histogram: hist,
        checks: AlgebraChecks { tutte_match, histogram_match, s_space_match },
    })
}

/// The number of standard monomials equals the number of G-parking
/// configurations, set-for-set.
pub fn standard_monomials_match_parking(
    graph: &SimpleGraph,
    sink: Vertex,
) -> Result<bool, AlgebraError> {
    let std_set: BTreeSet<Vec<(Vertex, usize)>> = standard_monomials(graph, sink)?
        .into_iter()
        .map(|m| m.into_iter().collect())
        .collect();
    let parking: BTreeSet<Vec<(Vertex, usize)>> = enumerate_g_parking(graph, sink)?
        .into_iter()
        .map(|c| {
            c.grains()
                .iter()
                .map(|(&v, &g)| (v, g as usize))
                .collect()
        })
        .collect();
    Ok(std_set == parking)
}
