//! The bijection α between labelled parallelogram polyominoes LPP(U) and
//! G-parking configurations PC(G_U).
//!
//! A cell (c,r) of the full m×n grid is *white* when the column label and the
//! row label form an edge of G_U (column label < row label). The initial
//! configuration W counts, for each blue label, the white cells above it in
//! its column; for each red label, the white cells to its right in its row;
//! and for the black label both, which is exactly deg(sink). The G-parking
//! image of the polyomino is the complement c_max − W over non-sink vertices,
//! and the inverse is a canonical alternating burning that replays the bounce
//! path.

use crate::graph::{complete_tiered_graph, GraphError, TieredGraph};
use crate::polyomino::{Cell, LabelColor, LatticePath, Lpp, PolyominoError, Step};
use crate::sandpile::Configuration;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BijectionError {
    #[error(transparent)]
    Polyomino(#[from] PolyominoError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("configuration is not G-parking on G_U: {0}")]
    NotGParking(String),
    #[error("configuration sink {got} is not the black label {want}")]
    WrongSink { got: usize, want: usize },
}

/// Ordered set partition (blue pool, black label, red pool) of 1..=k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pools {
    pub blue: Vec<usize>,
    pub black: usize,
    pub red: Vec<usize>,
}

impl Pools {
    pub fn new(blue: Vec<usize>, black: usize, red: Vec<usize>) -> Result<Self, PolyominoError> {
        let mut all: Vec<usize> = blue.iter().chain(red.iter()).copied().collect();
        all.push(black);
        all.sort_unstable();
        let k = all.len();
        if !all.into_iter().eq(1..=k) {
            return Err(PolyominoError::BadPartition(k));
        }
        let mut blue = blue;
        let mut red = red;
        blue.sort_unstable();
        red.sort_unstable();
        Ok(Pools { blue, black, red })
    }

    pub fn from_lpp(lpp: &Lpp) -> Result<Self, PolyominoError> {
        let (blue, black, red) = lpp.pools();
        Pools::new(blue, black, red)
    }

    pub fn total(&self) -> usize {
        self.blue.len() + 1 + self.red.len()
    }

    /// Tier of a label: blue pool below the black label below the red pool,
    /// with unused pools compacted away so the tiering stays surjective.
    fn tiering(&self) -> Vec<usize> {
        let mut tier = vec![0usize; self.total()];
        let mut next = 0;
        if !self.blue.is_empty() {
            next += 1;
            for &b in &self.blue {
                tier[b - 1] = next;
            }
        }
        next += 1;
        tier[self.black - 1] = next;
        if !self.red.is_empty() {
            next += 1;
            for &r in &self.red {
                tier[r - 1] = next;
            }
        }
        tier
    }
}

/// G_U: the complete tiered graph of the pool tiering (blue, black, red).
pub fn g_u(pools: &Pools) -> Result<TieredGraph, GraphError> {
    complete_tiered_graph(&pools.tiering())
}

/// α applied to one polyomino: the ambient graph, the initial configuration
/// (the white-cell counts, with the sink carrying deg(sink)) and the
/// G-parking image.
#[derive(Debug, Clone)]
pub struct AlphaImage {
    pub graph: TieredGraph,
    pub pools: Pools,
    /// label -> white-cell count; the recurrent-side vector.
    pub initial: BTreeMap<usize, i64>,
    /// c_max − initial over non-sink labels: the G-parking configuration.
    pub parking: Configuration,
}

impl AlphaImage {
    /// The initial configuration in display order: black label first, then
    /// red labels by row bottom to top, then blue labels by column left to
    /// right (the order the worked example tabulates).
    pub fn initial_display_order(&self, lpp: &Lpp) -> Vec<(usize, i64)> {
        let mut out = vec![(self.pools.black, self.initial[&self.pools.black])];
        for r in 2..=lpp.height() {
            let l = lpp.row_label(r);
            out.push((l, self.initial[&l]));
        }
        for c in 2..=lpp.width() {
            let l = lpp.column_label(c);
            out.push((l, self.initial[&l]));
        }
        out
    }
}

pub fn alpha(lpp: &Lpp) -> Result<AlphaImage, BijectionError> {
    let violations = lpp.validate();
    if !violations.is_empty() {
        return Err(PolyominoError::InvalidLpp(violations.len()).into());
    }
    let pools = Pools::from_lpp(lpp)?;
    let graph = g_u(&pools)?;
    let (m, n) = (lpp.width(), lpp.height());
    let col_label: Vec<usize> = (1..=m).map(|c| lpp.column_label(c)).collect();
    let row_label: Vec<usize> = (1..=n).map(|r| lpp.row_label(r)).collect();

    let mut initial = BTreeMap::new();
    for (&label, &((c, r), color)) in &lpp.labels {
        let count = match color {
            LabelColor::Blue => (r + 1..=n).filter(|&rr| row_label[rr - 1] > label).count(),
            LabelColor::Red => (c + 1..=m).filter(|&cc| col_label[cc - 1] < label).count(),
            LabelColor::Black => {
                (r + 1..=n).filter(|&rr| row_label[rr - 1] > label).count()
                    + (c + 1..=m).filter(|&cc| col_label[cc - 1] < label).count()
            }
        };
        initial.insert(label, count as i64);
    }

    let grains: BTreeMap<usize, i64> = initial
        .iter()
        .filter(|(&l, _)| l != pools.black)
        .map(|(&l, &w)| (l, graph.graph().degree(l) as i64 - 1 - w))
        .collect();
    let parking = Configuration::new(graph.graph(), pools.black, grains)
        .map_err(|e| BijectionError::NotGParking(e.to_string()))?;
    Ok(AlphaImage { graph, pools, initial, parking })
}

/// Reconstruct the unique polyomino with α-image `config`: canonical
/// alternating burning of the recurrent complement. Blues burned in a round
/// are placed left to right by (height, then decreasing label); reds bottom
/// to top by (column, then increasing label).
pub fn alpha_inverse(config: &Configuration, pools: &Pools) -> Result<Lpp, BijectionError> {
    if config.sink() != pools.black {
        return Err(BijectionError::WrongSink { got: config.sink(), want: pools.black });
    }
    let graph = g_u(pools)?;
    let gp = graph.graph();
    if config.grains().len() != pools.total() - 1 || !config.is_non_negative() {
        return Err(BijectionError::NotGParking("wrong support or negative entry".into()));
    }
    for (&v, &g) in config.grains() {
        if g >= gp.degree(v) as i64 {
            return Err(BijectionError::NotGParking(format!(
                "entry {g} at vertex {v} is not below its degree"
            )));
        }
    }
    // recurrent complement
    let crec: BTreeMap<usize, i64> = config
        .grains()
        .iter()
        .map(|(&v, &g)| (v, gp.degree(v) as i64 - 1 - g))
        .collect();

    let mut col_label = vec![pools.black];
    let mut row_label = vec![pools.black];
    let mut height: BTreeMap<usize, usize> = BTreeMap::new();
    let mut column: BTreeMap<usize, usize> = BTreeMap::new();
    let mut burned: Vec<bool> = vec![false; pools.total() + 1];
    burned[pools.black] = true;
    let mut blues_left: Vec<usize> = pools.blue.clone();
    let mut reds_left: Vec<usize> = pools.red.clone();

    while !blues_left.is_empty() || !reds_left.is_empty() {
        let mut progressed = false;

        // east run: every burnable blue joins, ordered by (height, -label)
        let mut ready: Vec<(usize, std::cmp::Reverse<usize>, usize)> = Vec::new();
        for &beta in &blues_left {
            let e_burnt = gp.neighbors(beta).iter().filter(|&&u| burned[u]).count() as i64;
            let threshold = gp.degree(beta) as i64 - e_burnt;
            if crec[&beta] >= threshold {
                let slack = (crec[&beta] - threshold) as usize;
                let h = place_in(&row_label, slack, |l| l > beta).ok_or_else(|| {
                    BijectionError::NotGParking(format!("no valid row for blue label {beta}"))
                })?;
                ready.push((h, std::cmp::Reverse(beta), beta));
            }
        }
        ready.sort_unstable();
        for (h, _, beta) in ready {
            col_label.push(beta);
            height.insert(beta, h);
            burned[beta] = true;
            blues_left.retain(|&b| b != beta);
            progressed = true;
        }

        // north run: every burnable red joins, ordered by (column, label)
        let mut ready: Vec<(usize, usize)> = Vec::new();
        for &rho in &reds_left {
            let e_burnt = gp.neighbors(rho).iter().filter(|&&u| burned[u]).count() as i64;
            let threshold = gp.degree(rho) as i64 - e_burnt;
            if crec[&rho] >= threshold {
                let slack = (crec[&rho] - threshold) as usize;
                let w = place_in(&col_label, slack, |l| l < rho).ok_or_else(|| {
                    BijectionError::NotGParking(format!("no valid column for red label {rho}"))
                })?;
                ready.push((w, rho));
            }
        }
        ready.sort_unstable();
        for (w, rho) in ready {
            row_label.push(rho);
            column.insert(rho, w);
            burned[rho] = true;
            reds_left.retain(|&r| r != rho);
            progressed = true;
        }

        if !progressed {
            return Err(BijectionError::NotGParking(
                "burning stalls: complement is not recurrent".into(),
            ));
        }
    }

    let m = col_label.len();
    let n = row_label.len();
    // lower path from column heights, upper path from row columns
    let heights: Vec<usize> = (1..=m)
        .map(|c| if c == 1 { 1 } else { height[&col_label[c - 1]] })
        .collect();
    let columns: Vec<usize> = (1..=n)
        .map(|r| if r == 1 { 1 } else { column[&row_label[r - 1]] })
        .collect();
    if heights.windows(2).any(|p| p[0] > p[1]) || columns.windows(2).any(|p| p[0] > p[1]) {
        return Err(BijectionError::NotGParking("reconstructed paths not monotone".into()));
    }
    let mut lower = Vec::new();
    let mut level = 1;
    for &h in &heights {
        lower.extend(std::iter::repeat_n(Step::N, h - level));
        lower.push(Step::E);
        level = h;
    }
    lower.extend(std::iter::repeat_n(Step::N, n + 1 - level));
    let mut upper = Vec::new();
    let mut pos = 1;
    for &w in &columns {
        upper.extend(std::iter::repeat_n(Step::E, w - pos));
        upper.push(Step::N);
        pos = w;
    }
    upper.extend(std::iter::repeat_n(Step::E, m + 1 - pos));

    let mut labels: BTreeMap<usize, (Cell, LabelColor)> =
        BTreeMap::from([(pools.black, ((1, 1), LabelColor::Black))]);
    for (c, &l) in col_label.iter().enumerate().skip(1) {
        labels.insert(l, ((c + 1, height[&l]), LabelColor::Blue));
    }
    for (r, &l) in row_label.iter().enumerate().skip(1) {
        labels.insert(l, ((column[&l], r + 1), LabelColor::Red));
    }
    let lpp = Lpp {
        upper: LatticePath::new(upper)?,
        lower: LatticePath::new(lower)?,
        labels,
    };
    let violations = lpp.validate();
    if !violations.is_empty() {
        return Err(BijectionError::NotGParking(format!(
            "reconstruction violates polyomino constraints: {}",
            violations[0]
        )));
    }
    Ok(lpp)
}

/// The unique slot in `placed` (scanning from the most recent end) such that
/// exactly `slack` later entries satisfy `counts` and the slot entry itself
/// satisfies `counts`.
fn place_in(placed: &[usize], slack: usize, counts: impl Fn(usize) -> bool) -> Option<usize> {
    let mut seen = 0;
    for idx in (0..placed.len()).rev() {
        if seen == slack && counts(placed[idx]) {
            return Some(idx + 1);
        }
        if counts(placed[idx]) {
            seen += 1;
            if seen > slack {
                return None;
            }
        }
    }
    None
}

/// All valid labelled parallelogram polyominoes over the given pools,
/// deterministic order: path pairs lexicographically, then label placements.
pub fn enumerate_lpp(pools: &Pools) -> Result<Vec<Lpp>, BijectionError> {
    let m = pools.blue.len() + 1;
    let n = pools.red.len() + 1;
    let uppers = monotone_paths(m, n);
    let mut out = Vec::new();
    for upper in &uppers {
        for lower in &uppers {
            let skeleton = Lpp {
                upper: upper.clone(),
                lower: lower.clone(),
                labels: BTreeMap::from([(pools.black, ((1, 1), LabelColor::Black))]),
            };
            if !polyomino_shape_ok(&skeleton) {
                continue;
            }
            let blue_slots: Vec<Cell> = (2..=m).map(|c| (c, skeleton.column_base(c))).collect();
            let red_slots: Vec<Cell> = (2..=n).map(|r| (skeleton.row_start(r), r)).collect();
            for blue_perm in permutations(&pools.blue) {
                for red_perm in permutations(&pools.red) {
                    let mut labels = skeleton.labels.clone();
                    for (slot, &l) in blue_slots.iter().zip(&blue_perm) {
                        labels.insert(l, (*slot, LabelColor::Blue));
                    }
                    for (slot, &l) in red_slots.iter().zip(&red_perm) {
                        labels.insert(l, (*slot, LabelColor::Red));
                    }
                    let candidate =
                        Lpp { upper: upper.clone(), lower: lower.clone(), labels };
                    if candidate.validate().is_empty() {
                        out.push(candidate);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn polyomino_shape_ok(lpp: &Lpp) -> bool {
    let (m, n) = (lpp.width(), lpp.height());
    if lpp.upper.width() != m || lpp.upper.height() != n {
        return false;
    }
    let upts: std::collections::BTreeSet<_> = {
        let p = lpp.upper.points();
        p[1..p.len() - 1].iter().copied().collect()
    };
    let lpts = lpp.lower.points();
    if lpts[1..lpts.len() - 1].iter().any(|p| upts.contains(p)) {
        return false;
    }
    (1..=m).all(|c| lpp.column_top(c) >= lpp.column_base(c))
}

fn monotone_paths(m: usize, n: usize) -> Vec<LatticePath> {
    let total = m + n;
    let mut out = Vec::new();
    // choose positions of the N steps
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let mut steps = vec![Step::E; total];
        for &i in &idx {
            steps[i] = Step::N;
        }
        out.push(LatticePath::new(steps).expect("nonempty path"));
        // next combination
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + total - n {
                idx[i] += 1;
                for j in i + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Degree decomposition check for the first toppled label: the cell-counted
/// degree equals the graph degree, and it splits as edges-to-sink plus edges
/// into the non-sink set.
pub fn degree_decomposition_check(lpp: &Lpp) -> Result<bool, BijectionError> {
    let image = alpha(lpp)?;
    let order = lpp.toppling_order()?;
    let Some(&first) = order.first() else {
        return Ok(true);
    };
    let gp = image.graph.graph();
    let (m, n) = (lpp.width(), lpp.height());
    let ((c, r), color) = lpp.labels[&first];
    // whites along the label's full column/row, i.e. the cell-counted degree
    let deg_cells = match color {
        LabelColor::Blue => (1..=n).filter(|&rr| lpp.row_label(rr) > first).count(),
        LabelColor::Red => (1..=m).filter(|&cc| lpp.column_label(cc) < first).count(),
        LabelColor::Black => unreachable!("toppling order excludes the black label"),
    };
    let sink_cells = match color {
        LabelColor::Blue => usize::from(lpp.row_label(1) > first),
        LabelColor::Red => usize::from(lpp.column_label(1) < first),
        LabelColor::Black => unreachable!(),
    };
    let _ = (c, r);
    let deg_graph = gp.degree(first);
    let to_sink = usize::from(gp.has_edge(first, image.pools.black));
    let into_rest = deg_graph - to_sink;
    Ok(deg_cells == deg_graph && sink_cells == to_sink && deg_cells == sink_cells + into_rest)
}

/// Replay TOP(P) on the recurrent side: fire the sink from the initial
/// configuration, then repeatedly sweep the TOP list toppling whichever
/// vertices are unstable, each exactly once. A valid run stays non-negative
/// throughout, topples every label, and returns to the initial configuration.
///
/// TOP is a priority order, not a literal sequence: a label early in the list
/// may only become unstable after later labels feed it grains.
pub fn replay_toppling_order(lpp: &Lpp) -> Result<bool, BijectionError> {
    let image = alpha(lpp)?;
    let order = lpp.toppling_order()?;
    let gp = image.graph.graph();
    let sink = image.pools.black;
    let mut state: BTreeMap<usize, i64> = image
        .initial
        .iter()
        .filter(|(&l, _)| l != sink)
        .map(|(&l, &w)| (l, w))
        .collect();
    for u in gp.neighbors(sink) {
        *state.get_mut(&u).expect("sink neighbours are labels") += 1;
    }
    let mut toppled: BTreeSet<usize> = BTreeSet::new();
    loop {
        let mut progressed = false;
        for &v in &order {
            if toppled.contains(&v) {
                continue;
            }
            let deg = gp.degree(v) as i64;
            if state[&v] < deg {
                continue;
            }
            *state.get_mut(&v).expect("label") -= deg;
            for u in gp.neighbors(v) {
                if u != sink {
                    *state.get_mut(&u).expect("label") += 1;
                }
            }
            if state.values().any(|&g| g < 0) {
                return Ok(false);
            }
            toppled.insert(v);
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    Ok(toppled.len() == order.len()
        && order.len() == image.pools.total() - 1
        && state.iter().all(|(&l, &g)| g == image.initial[&l]))
}
