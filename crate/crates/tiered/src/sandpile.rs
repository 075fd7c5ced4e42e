//! Abelian sandpile dynamics with a sink: toppling, stabilization, recurrent
//! configurations, G-parking (superstable) configurations and the classical
//! parking functions they generalize.

use crate::graph::{GraphError, SimpleGraph, Vertex};
use crate::poly::UniPoly;
use num::{BigInt, One};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Subset-test cap: the test iterates 2^(n-1) subsets.
pub const MAX_SUBSET_VERTICES: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SandpileError {
    #[error("vertex {0} unknown or equal to the sink")]
    UnknownVertex(Vertex),
    #[error("toppling vertex {0} would leave a negative entry")]
    NotToppleable(Vertex),
    #[error("configuration is not stable")]
    NotStable,
    #[error("configuration has a negative entry at {0}")]
    NegativeEntry(Vertex),
    #[error("{0} non-sink vertices exceed the subset-test cap {1}")]
    CapExceeded(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Grain vector over the non-sink vertices of a graph with a chosen sink.
/// Entries are signed so intermediate toppling arithmetic can dip below zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Configuration {
    sink: Vertex,
    grains: BTreeMap<Vertex, i64>,
}

impl Configuration {
    pub fn new(graph: &SimpleGraph, sink: Vertex, grains: BTreeMap<Vertex, i64>) -> Result<Self, SandpileError> {
        if sink == 0 || sink > graph.vertex_count() {
            return Err(SandpileError::UnknownVertex(sink));
        }
        for v in graph.vertices() {
            if v != sink && !grains.contains_key(&v) {
                return Err(SandpileError::UnknownVertex(v));
            }
        }
        if grains.contains_key(&sink) || grains.len() != graph.vertex_count() - 1 {
            return Err(SandpileError::UnknownVertex(sink));
        }
        Ok(Configuration { sink, grains })
    }

    pub fn zero(graph: &SimpleGraph, sink: Vertex) -> Result<Self, SandpileError> {
        let grains = graph.vertices().filter(|&v| v != sink).map(|v| (v, 0)).collect();
        Configuration::new(graph, sink, grains)
    }

    /// The maximal stable configuration c_max(v) = deg(v) - 1.
    pub fn max_stable(graph: &SimpleGraph, sink: Vertex) -> Result<Self, SandpileError> {
        let grains = graph
            .vertices()
            .filter(|&v| v != sink)
            .map(|v| (v, graph.degree(v) as i64 - 1))
            .collect();
        Configuration::new(graph, sink, grains)
    }

    pub fn sink(&self) -> Vertex {
        self.sink
    }

    pub fn get(&self, v: Vertex) -> i64 {
        self.grains[&v]
    }

    pub fn grains(&self) -> &BTreeMap<Vertex, i64> {
        &self.grains
    }

    pub fn total(&self) -> i64 {
        self.grains.values().sum()
    }

    pub fn is_non_negative(&self) -> bool {
        self.grains.values().all(|&g| g >= 0)
    }

    /// Pointwise complement c_max - self.
    pub fn complement(&self, graph: &SimpleGraph) -> Configuration {
        let grains = self
            .grains
            .iter()
            .map(|(&v, &g)| (v, graph.degree(v) as i64 - 1 - g))
            .collect();
        Configuration { sink: self.sink, grains }
    }
}

/// The toppling operator Δ(v) as a signed vector over all vertices:
/// deg(v) at v, −1 at each neighbour, 0 elsewhere.
pub fn delta(graph: &SimpleGraph, v: Vertex) -> Result<Vec<i64>, SandpileError> {
    if v == 0 || v > graph.vertex_count() {
        return Err(SandpileError::UnknownVertex(v));
    }
    let mut out = vec![0i64; graph.vertex_count() + 1];
    out[v] = graph.degree(v) as i64;
    for u in graph.neighbors(v) {
        out[u] = -1;
    }
    Ok(out)
}

/// Δ(A) = Σ_{v∈A} Δ(v).
pub fn delta_subset(graph: &SimpleGraph, subset: &[Vertex]) -> Result<Vec<i64>, SandpileError> {
    let mut out = vec![0i64; graph.vertex_count() + 1];
    for &v in subset {
        for (i, d) in delta(graph, v)?.into_iter().enumerate() {
            out[i] += d;
        }
    }
    Ok(out)
}

/// Topple one vertex in the subset-relative sense: legal only when the input
/// and the result are both non-negative. Grains sent to the sink vanish.
pub fn topple(graph: &SimpleGraph, config: &Configuration, v: Vertex) -> Result<Configuration, SandpileError> {
    if v == config.sink || v == 0 || v > graph.vertex_count() {
        return Err(SandpileError::UnknownVertex(v));
    }
    if !config.is_non_negative() {
        return Err(SandpileError::NegativeEntry(
            *config.grains.iter().find(|(_, &g)| g < 0).expect("negative entry").0,
        ));
    }
    let d = delta(graph, v)?;
    let mut grains = config.grains.clone();
    for (&u, g) in grains.iter_mut() {
        *g -= d[u];
    }
    let out = Configuration { sink: config.sink, grains };
    if !out.is_non_negative() {
        return Err(SandpileError::NotToppleable(v));
    }
    Ok(out)
}

/// Unconditional toppling used by the stabilizer; may create debts at
/// neighbours that later topplings repay.
fn topple_unchecked(graph: &SimpleGraph, config: &mut Configuration, v: Vertex) {
    let deg = graph.degree(v) as i64;
    *config.grains.get_mut(&v).expect("non-sink vertex") -= deg;
    for u in graph.neighbors(v) {
        if u != config.sink {
            *config.grains.get_mut(&u).expect("non-sink vertex") += 1;
        }
    }
}

/// Is every non-sink vertex v stable, c(v) <= deg(v) - 1?
pub fn is_stable(graph: &SimpleGraph, config: &Configuration) -> bool {
    config
        .grains
        .iter()
        .all(|(&v, &g)| g < graph.degree(v) as i64)
}

/// Vertex-selection policy for the stabilizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopplePolicy {
    SmallestFirst,
    LargestFirst,
}

/// Topple unstable vertices until stable; returns the stable configuration
/// and the toppling sequence. Terminates on connected graphs with a sink.
pub fn stabilize(
    graph: &SimpleGraph,
    config: &Configuration,
    policy: TopplePolicy,
) -> Result<(Configuration, Vec<Vertex>), SandpileError> {
    if let Some((&v, _)) = config.grains.iter().find(|(_, &g)| g < 0) {
        return Err(SandpileError::NegativeEntry(v));
    }
    if !graph.is_connected() {
        return Err(SandpileError::Graph(GraphError::DisconnectedGraph));
    }
    let mut current = config.clone();
    let mut sequence = Vec::new();
    loop {
        let mut unstable = current
            .grains
            .iter()
            .filter(|(&v, &g)| g >= graph.degree(v) as i64)
            .map(|(&v, _)| v);
        let pick = match policy {
            TopplePolicy::SmallestFirst => unstable.min(),
            TopplePolicy::LargestFirst => unstable.next_back(),
        };
        match pick {
            Some(v) => {
                topple_unchecked(graph, &mut current, v);
                sequence.push(v);
            }
            None => return Ok((current, sequence)),
        }
    }
}

/// Dhar's burning test: a stable configuration is recurrent iff firing the
/// sink lets every vertex burn.
pub fn is_recurrent(graph: &SimpleGraph, config: &Configuration) -> Result<bool, SandpileError> {
    if !config.is_non_negative() {
        return Err(SandpileError::NotStable);
    }
    if !is_stable(graph, config) {
        return Err(SandpileError::NotStable);
    }
    let sink = config.sink;
    let mut burnt = vec![false; graph.vertex_count() + 1];
    burnt[sink] = true;
    let mut burnt_count = 1;
    loop {
        let mut progressed = false;
        for v in graph.vertices() {
            if burnt[v] {
                continue;
            }
            let edges_to_burnt = graph.neighbors(v).iter().filter(|&&u| burnt[u]).count() as i64;
            if config.get(v) >= graph.degree(v) as i64 - edges_to_burnt {
                burnt[v] = true;
                burnt_count += 1;
                progressed = true;
            }
        }
        if !progressed {
            return Ok(burnt_count == graph.vertex_count());
        }
    }
}

/// Definitional oracle for recurrence: fire the sink once and stabilize; the
/// configuration is recurrent iff the dynamics return to it.
pub fn is_recurrent_by_cycle(graph: &SimpleGraph, config: &Configuration) -> Result<bool, SandpileError> {
    if !config.is_non_negative() || !is_stable(graph, config) {
        return Err(SandpileError::NotStable);
    }
    let mut fired = config.clone();
    for u in graph.neighbors(config.sink) {
        *fired.grains.get_mut(&u).expect("sink neighbours are non-sink") += 1;
    }
    let (stable, _) = stabilize(graph, &fired, TopplePolicy::SmallestFirst)?;
    Ok(stable == *config)
}

/// d_I(v): edges from v ∈ I to vertices outside I.
pub fn subset_out_degree(graph: &SimpleGraph, subset: &[Vertex], v: Vertex) -> usize {
    graph
        .neighbors(v)
        .iter()
        .filter(|u| !subset.contains(u))
        .count()
}

/// Precomputed bit-level view of (graph, sink) for the subset test.
struct SubsetTester {
    others: Vec<Vertex>,
    nbr_bits: Vec<u64>,
    outside_degree: Vec<i64>,
}

impl SubsetTester {
    fn new(graph: &SimpleGraph, sink: Vertex) -> Result<Self, SandpileError> {
        let others: Vec<Vertex> = graph.vertices().filter(|&v| v != sink).collect();
        if others.len() > MAX_SUBSET_VERTICES {
            return Err(SandpileError::CapExceeded(others.len(), MAX_SUBSET_VERTICES));
        }
        let bit_of: BTreeMap<Vertex, usize> =
            others.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut nbr_bits = vec![0u64; others.len()];
        let mut outside_degree = vec![0i64; others.len()];
        for (i, &v) in others.iter().enumerate() {
            for u in graph.neighbors(v) {
                match bit_of.get(&u) {
                    Some(&j) => nbr_bits[i] |= 1 << j,
                    None => outside_degree[i] += 1, // edge to the sink
                }
            }
        }
        Ok(SubsetTester { others, nbr_bits, outside_degree })
    }

    /// For every non-empty subset I there must be i ∈ I with c(i) < d_I(i).
    fn is_g_parking(&self, grains: &[i64]) -> bool {
        if grains.iter().any(|&g| g < 0) {
            return false;
        }
        for mask in 1u64..(1u64 << self.others.len()) {
            let mut found = false;
            let mut bits = mask;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let d = (self.nbr_bits[i] & !mask).count_ones() as i64 + self.outside_degree[i];
                if grains[i] < d {
                    found = true;
                    break;
                }
            }
            if !found {
                return false;
            }
        }
        true
    }
}

/// G-parking (superstable) test: for every non-empty subset I of non-sink
/// vertices some i ∈ I has c(i) < d_I(i). Iterates 2^(n-1) subsets with early
/// exit.
pub fn is_g_parking(graph: &SimpleGraph, config: &Configuration) -> Result<bool, SandpileError> {
    let tester = SubsetTester::new(graph, config.sink())?;
    let grains: Vec<i64> = tester.others.iter().map(|&v| config.get(v)).collect();
    Ok(tester.is_g_parking(&grains))
}

/// All G-parking configurations of (graph, sink).
pub fn enumerate_g_parking(
    graph: &SimpleGraph,
    sink: Vertex,
) -> Result<Vec<Configuration>, SandpileError> {
    if !graph.is_connected() {
        return Err(SandpileError::Graph(GraphError::DisconnectedGraph));
    }
    let tester = SubsetTester::new(graph, sink)?;
    let degrees: Vec<i64> = tester.others.iter().map(|&v| graph.degree(v) as i64).collect();
    let mut out = Vec::new();
    let mut grains = vec![0i64; tester.others.len()];
    loop {
        if tester.is_g_parking(&grains) {
            out.push(Configuration {
                sink,
                grains: tester.others.iter().copied().zip(grains.iter().copied()).collect(),
            });
        }
        let mut idx = 0;
        loop {
            if idx == grains.len() {
                return Ok(out);
            }
            if grains[idx] + 1 < degrees[idx] {
                grains[idx] += 1;
                break;
            }
            grains[idx] = 0;
            idx += 1;
        }
    }
}

/// All recurrent configurations of (graph, sink).
pub fn enumerate_recurrent(
    graph: &SimpleGraph,
    sink: Vertex,
) -> Result<Vec<Configuration>, SandpileError> {
    enumerate_by(graph, sink, is_recurrent)
}

fn enumerate_by(
    graph: &SimpleGraph,
    sink: Vertex,
    test: impl Fn(&SimpleGraph, &Configuration) -> Result<bool, SandpileError>,
) -> Result<Vec<Configuration>, SandpileError> {
    if !graph.is_connected() {
        return Err(SandpileError::Graph(GraphError::DisconnectedGraph));
    }
    let others: Vec<Vertex> = graph.vertices().filter(|&v| v != sink).collect();
    if others.len() > MAX_SUBSET_VERTICES {
        return Err(SandpileError::CapExceeded(others.len(), MAX_SUBSET_VERTICES));
    }
    // both families satisfy c(v) <= deg(v) - 1
    let mut out = Vec::new();
    let mut grains: BTreeMap<Vertex, i64> = others.iter().map(|&v| (v, 0)).collect();
    loop {
        let config = Configuration { sink, grains: grains.clone() };
        if test(graph, &config)? {
            out.push(config);
        }
        // odometer over the box Π [0, deg(v)-1]
        let mut idx = 0;
        loop {
            if idx == others.len() {
                return Ok(out);
            }
            let v = others[idx];
            let slot = grains.get_mut(&v).expect("non-sink vertex");
            if *slot + 1 < graph.degree(v) as i64 {
                *slot += 1;
                break;
            }
            *slot = 0;
            idx += 1;
        }
    }
}

/// Classical parking function test: f: [n] -> [n] with
/// |{j : f(j) >= i}| <= n+1-i for every i.
pub fn is_classical_parking_function(seq: &[usize]) -> bool {
    let n = seq.len();
    if seq.iter().any(|&x| x == 0 || x > n) {
        return false;
    }
    (1..=n).all(|i| seq.iter().filter(|&&x| x >= i).count() <= n + 1 - i)
}

/// Convert 0-based street preferences (spots 0..n-1) to the 1-based form.
pub fn parking_preferences_from_street(street: &[usize]) -> Vec<usize> {
    street.iter().map(|&x| x + 1).collect()
}

/// Reversed-sum enumerator Σ_b q^{rs(b)} over G-parking configurations, with
/// rs(b) = g − s(b) and g = e(G) − v(G) + 1.
pub fn rs_enumerator(graph: &SimpleGraph, sink: Vertex) -> Result<UniPoly, SandpileError> {
    let genus = graph.edge_count() as i64 - graph.vertex_count() as i64 + 1;
    let mut poly = UniPoly::zero();
    for config in enumerate_g_parking(graph, sink)? {
        let rs = genus - config.total();
        assert!(rs >= 0, "rs(b) must be non-negative for G-parking b");
        poly.add_term(rs as usize, BigInt::one());
    }
    Ok(poly)
}

/// Serialized form: {"sink": v, "grains": {"vertex": grains}}.
#[derive(Debug, Serialize, Deserialize)]
pub struct ConfigurationDoc {
    pub sink: Vertex,
    pub grains: BTreeMap<String, i64>,
}

impl From<&Configuration> for ConfigurationDoc {
    fn from(c: &Configuration) -> Self {
        ConfigurationDoc {
            sink: c.sink,
            grains: c.grains.iter().map(|(v, g)| (v.to_string(), *g)).collect(),
        }
    }
}

impl ConfigurationDoc {
    pub fn into_configuration(&self, graph: &SimpleGraph) -> Result<Configuration, SandpileError> {
        let mut grains = BTreeMap::new();
        for (k, &g) in &self.grains {
            let v: Vertex = k.parse().map_err(|_| SandpileError::UnknownVertex(0))?;
            grains.insert(v, g);
        }
        Configuration::new(graph, self.sink, grains)
    }
}
