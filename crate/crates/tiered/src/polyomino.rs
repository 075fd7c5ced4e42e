//! Lattice paths and labelled parallelogram polyominoes: geometry, validity,
//! area, the bounce path and the toppling order it induces.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyominoError {
    #[error("path step must be N or E, got {0:?}")]
    BadCharacter(char),
    #[error("empty path")]
    EmptyPath,
    #[error("invalid labelled parallelogram polyomino ({0} violations)")]
    InvalidLpp(usize),
    #[error("configuration is not G-parking on G_U")]
    NotGParking,
    #[error("configuration sink {got} does not match the black label {want}")]
    WrongSink { got: usize, want: usize },
    #[error("U2 must be a single black label, got {0} labels")]
    BadPartition(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    N,
    E,
}

/// Monotone NE path from (0,0) to (width, height).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Result<Self, PolyominoError> {
        if steps.is_empty() {
            return Err(PolyominoError::EmptyPath);
        }
        Ok(LatticePath { steps })
    }

    pub fn parse(text: &str) -> Result<Self, PolyominoError> {
        let mut steps = Vec::with_capacity(text.len());
        for ch in text.chars() {
            match ch {
                'N' => steps.push(Step::N),
                'E' => steps.push(Step::E),
                other => return Err(PolyominoError::BadCharacter(other)),
            }
        }
        LatticePath::new(steps)
    }

    pub fn render(&self) -> String {
        self.steps
            .iter()
            .map(|s| match s {
                Step::N => 'N',
                Step::E => 'E',
            })
            .collect()
    }

    pub fn width(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::E).count()
    }

    pub fn height(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::N).count()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Lattice points visited, from (0,0) to (width,height).
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut pts = vec![(0, 0)];
        let (mut x, mut y) = (0, 0);
        for s in &self.steps {
            match s {
                Step::N => y += 1,
                Step::E => x += 1,
            }
            pts.push((x, y));
        }
        pts
    }

    /// Height of the path before its c-th E step (1-based c).
    fn e_step_height(&self, c: usize) -> usize {
        let mut seen_e = 0;
        let mut y = 0;
        for s in &self.steps {
            match s {
                Step::E => {
                    seen_e += 1;
                    if seen_e == c {
                        return y;
                    }
                }
                Step::N => y += 1,
            }
        }
        panic!("path has fewer than {c} east steps");
    }

    /// X position of the path before its r-th N step (1-based r).
    fn n_step_x(&self, r: usize) -> usize {
        let mut seen_n = 0;
        let mut x = 0;
        for s in &self.steps {
            match s {
                Step::N => {
                    seen_n += 1;
                    if seen_n == r {
                        return x;
                    }
                }
                Step::E => x += 1,
            }
        }
        panic!("path has fewer than {r} north steps");
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelColor {
    Red,
    Blue,
    Black,
}

/// Cell address (column, row), 1-based, origin bottom-left.
pub type Cell = (usize, usize);

/// Labelled parallelogram polyomino: upper (red) and lower (blue) paths plus
/// a label in 1..=m+n-1 for every column (blue), every row (red) and the
/// bottom-left cell (black).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lpp {
    pub upper: LatticePath,
    pub lower: LatticePath,
    /// label -> (cell, color)
    pub labels: BTreeMap<usize, (Cell, LabelColor)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LppViolation {
    PathEndpointsDiffer,
    PathsTouchInside(usize, usize),
    EmptyColumn(usize),
    LabelSetNotStandard,
    MissingBlackCell,
    LabelCellMismatch { label: usize, expected: Cell, got: Cell },
    ColumnNotIncreasing { column: usize, lower: usize, upper: usize },
    RowNotDecreasing { row: usize, left: usize, right: usize },
}

impl fmt::Display for LppViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LppViolation::PathEndpointsDiffer => write!(f, "paths have different endpoints"),
            LppViolation::PathsTouchInside(x, y) => {
                write!(f, "paths cross or touch at interior point ({x},{y})")
            }
            LppViolation::EmptyColumn(c) => write!(f, "column {c} is empty (paths cross)"),
            LppViolation::LabelSetNotStandard => {
                write!(f, "labels are not exactly 1..=m+n-1 with the required colors")
            }
            LppViolation::MissingBlackCell => {
                write!(f, "black label must occupy the bottom-left cell (1,1)")
            }
            LppViolation::LabelCellMismatch { label, expected, got } => write!(
                f,
                "label {label} sits at ({},{}) but its path step dictates ({},{})",
                got.0, got.1, expected.0, expected.1
            ),
            LppViolation::ColumnNotIncreasing { column, lower, upper } => write!(
                f,
                "column {column} not increasing bottom-to-top: {lower} below {upper}"
            ),
            LppViolation::RowNotDecreasing { row, left, right } => {
                write!(f, "row {row} not decreasing left-to-right: {left} left of {right}")
            }
        }
    }
}

impl Lpp {
    pub fn width(&self) -> usize {
        self.lower.width()
    }

    pub fn height(&self) -> usize {
        self.lower.height()
    }

    /// Bottom row of column c (the cell holding its blue/black label).
    pub fn column_base(&self, c: usize) -> usize {
        self.lower.e_step_height(c) + 1
    }

    /// Top row of column c.
    pub fn column_top(&self, c: usize) -> usize {
        self.upper.e_step_height(c)
    }

    /// Leftmost column of row r (the cell holding its red/black label).
    pub fn row_start(&self, r: usize) -> usize {
        self.upper.n_step_x(r) + 1
    }

    /// All cells of the polyomino, column by column.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for c in 1..=self.width() {
            for r in self.column_base(c)..=self.column_top(c) {
                out.push((c, r));
            }
        }
        out
    }

    pub fn label_at(&self, cell: Cell) -> Option<(usize, LabelColor)> {
        self.labels
            .iter()
            .find(|(_, &(pos, _))| pos == cell)
            .map(|(&l, &(_, color))| (l, color))
    }

    /// Blue or black label of column c.
    pub fn column_label(&self, c: usize) -> usize {
        self.label_at((c, self.column_base(c)))
            .expect("validated lpp has a label per column")
            .0
    }

    /// Red or black label of row r.
    pub fn row_label(&self, r: usize) -> usize {
        self.label_at((self.row_start(r), r))
            .expect("validated lpp has a label per row")
            .0
    }

    /// Ordered set partition (blue pool, black label, red pool).
    pub fn pools(&self) -> (Vec<usize>, usize, Vec<usize>) {
        let mut blue = Vec::new();
        let mut red = Vec::new();
        let mut black = 0;
        for (&l, &(_, color)) in &self.labels {
            match color {
                LabelColor::Blue => blue.push(l),
                LabelColor::Red => red.push(l),
                LabelColor::Black => black = l,
            }
        }
        (blue, black, red)
    }

    /// Diagnostics, not failures: empty iff every invariant holds.
    pub fn validate(&self) -> Vec<LppViolation> {
        let mut out = Vec::new();
        let (m, n) = (self.width(), self.height());
        if self.upper.width() != m || self.upper.height() != n || m == 0 || n == 0 {
            out.push(LppViolation::PathEndpointsDiffer);
            return out;
        }
        // interior disjointness
        let upts: std::collections::BTreeSet<_> = {
            let p = self.upper.points();
            p[1..p.len() - 1].iter().copied().collect()
        };
        let lpts = self.lower.points();
        for &(x, y) in &lpts[1..lpts.len() - 1] {
            if upts.contains(&(x, y)) {
                out.push(LppViolation::PathsTouchInside(x, y));
            }
        }
        for c in 1..=m {
            if self.column_top(c) < self.column_base(c) {
                out.push(LppViolation::EmptyColumn(c));
            }
        }
        if !out.is_empty() {
            return out;
        }
        // label pools: exactly one black, m-1 blues, n-1 reds covering 1..=m+n-1
        let total = m + n - 1;
        let mut colors: BTreeMap<LabelColor, usize> = BTreeMap::new();
        for &(_, color) in self.labels.values() {
            *colors.entry(color).or_insert(0) += 1;
        }
        let standard = self.labels.len() == total
            && self.labels.keys().copied().eq(1..=total)
            && colors.get(&LabelColor::Black).copied().unwrap_or(0) == 1
            && colors.get(&LabelColor::Blue).copied().unwrap_or(0) == m - 1
            && colors.get(&LabelColor::Red).copied().unwrap_or(0) == n - 1;
        if !standard {
            out.push(LppViolation::LabelSetNotStandard);
            return out;
        }
        // placement: black at (1,1); blue of column c at (c, base); red of row r
        // at (row_start, r)
        let mut by_cell: BTreeMap<Cell, usize> = BTreeMap::new();
        for (&l, &(cell, _)) in &self.labels {
            by_cell.insert(cell, l);
        }
        for (&l, &(cell, color)) in &self.labels {
            let expected = match color {
                LabelColor::Black => (1, 1),
                LabelColor::Blue => {
                    let c = cell.0;
                    if c < 2 || c > m {
                        out.push(LppViolation::MissingBlackCell);
                        continue;
                    }
                    (c, self.column_base(c))
                }
                LabelColor::Red => {
                    let r = cell.1;
                    if r < 2 || r > n {
                        out.push(LppViolation::MissingBlackCell);
                        continue;
                    }
                    (self.row_start(r), r)
                }
            };
            if cell != expected {
                out.push(LppViolation::LabelCellMismatch { label: l, expected, got: cell });
            }
        }
        // every column/row carries exactly one base label
        for c in 1..=m {
            if !by_cell.contains_key(&(c, self.column_base(c))) {
                out.push(LppViolation::EmptyColumn(c));
            }
        }
        if !out.is_empty() {
            return out;
        }
        // monotonicity across all labels sharing a column or a row
        for c in 1..=m {
            let mut in_col: Vec<(usize, usize)> = self
                .labels
                .iter()
                .filter(|(_, &((cc, _), _))| cc == c)
                .map(|(&l, &((_, r), _))| (r, l))
                .collect();
            in_col.sort_unstable();
            for pair in in_col.windows(2) {
                if pair[0].1 >= pair[1].1 {
                    out.push(LppViolation::ColumnNotIncreasing {
                        column: c,
                        lower: pair[0].1,
                        upper: pair[1].1,
                    });
                }
            }
        }
        for r in 1..=n {
            let mut in_row: Vec<(usize, usize)> = self
                .labels
                .iter()
                .filter(|(_, &((_, rr), _))| rr == r)
                .map(|(&l, &((c, _), _))| (c, l))
                .collect();
            in_row.sort_unstable();
            for pair in in_row.windows(2) {
                if pair[0].1 <= pair[1].1 {
                    out.push(LppViolation::RowNotDecreasing {
                        row: r,
                        left: pair[0].1,
                        right: pair[1].1,
                    });
                }
            }
        }
        out
    }

    fn require_valid(&self) -> Result<(), PolyominoError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(PolyominoError::InvalidLpp(v.len()))
        }
    }

    /// Unlabelled cells whose nearest label to the left exceeds the nearest
    /// label below (the area statistic).
    pub fn area(&self) -> Result<usize, PolyominoError> {
        self.require_valid()?;
        let mut count = 0;
        for &(c, r) in &self.cells() {
            if self.label_at((c, r)).is_some() {
                continue;
            }
            let left = (1..c)
                .rev()
                .find_map(|cc| self.label_at((cc, r)))
                .map(|(l, _)| l);
            let below = (1..r)
                .rev()
                .find_map(|rr| self.label_at((c, rr)))
                .map(|(l, _)| l);
            if let (Some(l), Some(b)) = (left, below) {
                if l > b {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Bounce path: east from (0,0), turning north at vertical steps of the
    /// lower path and east at horizontal steps of the upper path, ending at
    /// (m,n). Also returns the columns of each east run and the rows of each
    /// north run.
    pub fn bounce_path(&self) -> Result<BouncePath, PolyominoError> {
        self.require_valid()?;
        let (m, n) = (self.width(), self.height());
        // lower-path vertical walls: x -> (y_start, y_end) segments
        let mut lo_vert: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        let lpts = self.lower.points();
        for pair in lpts.windows(2) {
            if pair[0].0 == pair[1].0 {
                lo_vert.entry(pair[0].0).or_default().push((pair[0].1, pair[1].1));
            }
        }
        // upper-path horizontal ceilings: y -> (x_start, x_end)
        let mut up_horiz: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        let upts = self.upper.points();
        for pair in upts.windows(2) {
            if pair[0].1 == pair[1].1 {
                up_horiz.entry(pair[0].1).or_default().push((pair[0].0, pair[1].0));
            }
        }
        let (mut x, mut y) = (0usize, 0usize);
        let mut steps = Vec::new();
        let mut col_runs = Vec::new();
        let mut row_runs = Vec::new();
        while (x, y) != (m, n) {
            let x0 = x;
            while x < m {
                x += 1;
                steps.push(Step::E);
                let hit = lo_vert
                    .get(&x)
                    .is_some_and(|segs| segs.iter().any(|&(y1, y2)| y1 <= y && y < y2));
                if hit {
                    break;
                }
            }
            col_runs.push((x0 + 1..=x).collect());
            if (x, y) == (m, n) {
                break;
            }
            let y0 = y;
            while y < n {
                y += 1;
                steps.push(Step::N);
                let hit = up_horiz
                    .get(&y)
                    .is_some_and(|segs| segs.iter().any(|&(x1, x2)| x1 <= x && x < x2));
                if hit {
                    break;
                }
            }
            row_runs.push((y0 + 1..=y).collect());
        }
        Ok(BouncePath { path: LatticePath::new(steps)?, col_runs, row_runs })
    }

    /// TOP(P): blue labels of each east run then red labels of each north run,
    /// in bounce traversal order, black label excluded.
    pub fn toppling_order(&self) -> Result<Vec<usize>, PolyominoError> {
        let bounce = self.bounce_path()?;
        let (blue, black, red) = self.pools();
        let _ = (blue, red);
        let mut order = Vec::new();
        let runs = bounce.col_runs.len().max(bounce.row_runs.len());
        for k in 0..runs {
            if let Some(cols) = bounce.col_runs.get(k) {
                for &c in cols {
                    let l = self.column_label(c);
                    if l != black {
                        order.push(l);
                    }
                }
            }
            if let Some(rows) = bounce.row_runs.get(k) {
                for &r in rows {
                    let l = self.row_label(r);
                    if l != black {
                        order.push(l);
                    }
                }
            }
        }
        Ok(order)
    }

    /// Plain-text picture, rows top to bottom; labels prefixed by color.
    pub fn render_ascii(&self) -> String {
        let (m, n) = (self.width(), self.height());
        let mut s = String::new();
        for r in (1..=n).rev() {
            for c in 1..=m {
                let inside = (self.column_base(c)..=self.column_top(c)).contains(&r);
                let cell = if !inside {
                    "    ".to_string()
                } else {
                    match self.label_at((c, r)) {
                        Some((l, LabelColor::Blue)) => format!("b{l:<3}"),
                        Some((l, LabelColor::Red)) => format!("r{l:<3}"),
                        Some((l, LabelColor::Black)) => format!("k{l:<3}"),
                        None => ".   ".to_string(),
                    }
                };
                s.push_str(&cell);
            }
            s.push('\n');
        }
        s
    }
}

/// Bounce path plus its run decomposition.
#[derive(Debug, Clone)]
pub struct BouncePath {
    pub path: LatticePath,
    pub col_runs: Vec<Vec<usize>>,
    pub row_runs: Vec<Vec<usize>>,
}

/// JSON form: {"upper", "lower", "labels": [{"cell", "label", "color"}], "U"}.
#[derive(Debug, Serialize, Deserialize)]
pub struct LppDoc {
    pub upper: String,
    pub lower: String,
    pub labels: Vec<LabelDoc>,
    #[serde(rename = "U")]
    pub pools: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LabelDoc {
    pub cell: (usize, usize),
    pub label: usize,
    pub color: LabelColor,
}

impl From<&Lpp> for LppDoc {
    fn from(lpp: &Lpp) -> Self {
        let (blue, black, red) = lpp.pools();
        LppDoc {
            upper: lpp.upper.render(),
            lower: lpp.lower.render(),
            labels: lpp
                .labels
                .iter()
                .map(|(&label, &(cell, color))| LabelDoc { cell, label, color })
                .collect(),
            pools: vec![blue, vec![black], red],
        }
    }
}

impl TryFrom<&LppDoc> for Lpp {
    type Error = PolyominoError;
    fn try_from(doc: &LppDoc) -> Result<Self, PolyominoError> {
        let upper = LatticePath::parse(&doc.upper)?;
        let lower = LatticePath::parse(&doc.lower)?;
        let labels = doc
            .labels
            .iter()
            .map(|l| (l.label, (l.cell, l.color)))
            .collect();
        Ok(Lpp { upper, lower, labels })
    }
}

/// The worked-example labelled parallelogram polyomino (8 x 5 grid).
pub fn worked_example_polyomino() -> Lpp {
    let upper = LatticePath::parse("NNENNEENEEEEE").expect("static path");
    let lower = LatticePath::parse("EENEEENENEENN").expect("static path");
    let labels = BTreeMap::from([
        (8, ((1, 1), LabelColor::Black)),
        (3, ((2, 1), LabelColor::Blue)),
        (6, ((3, 2), LabelColor::Blue)),
        (5, ((4, 2), LabelColor::Blue)),
        (4, ((5, 2), LabelColor::Blue)),
        (1, ((6, 3), LabelColor::Blue)),
        (9, ((7, 4), LabelColor::Blue)),
        (2, ((8, 4), LabelColor::Blue)),
        (11, ((1, 2), LabelColor::Red)),
        (7, ((2, 3), LabelColor::Red)),
        (10, ((2, 4), LabelColor::Red)),
        (12, ((4, 5), LabelColor::Red)),
    ]);
    Lpp { upper, lower, labels }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_long_path() {
        let p = LatticePath::parse("NNNEEENNENEENNE").unwrap();
        assert_eq!((p.width(), p.height()), (7, 8));
        assert_eq!(p.render(), "NNNEEENNENEENNE");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(LatticePath::parse("NXE"), Err(PolyominoError::BadCharacter('X'))));
        assert!(matches!(LatticePath::parse(""), Err(PolyominoError::EmptyPath)));
    }

    #[test]
    fn worked_example_is_valid() {
        let lpp = worked_example_polyomino();
        assert_eq!(lpp.validate(), Vec::new());
        assert_eq!(lpp.cells().len(), 24);
        let (blue, black, red) = lpp.pools();
        assert_eq!(blue, vec![1, 2, 3, 4, 5, 6, 9]);
        assert_eq!(black, 8);
        assert_eq!(red, vec![7, 10, 11, 12]);
    }

    #[test]
    fn worked_example_column_swap_breaks_monotonicity() {
        let mut lpp = worked_example_polyomino();
        // swap labels 7 and 10 within column 2
        lpp.labels.insert(7, ((2, 4), LabelColor::Red));
        lpp.labels.insert(10, ((2, 3), LabelColor::Red));
        assert!(lpp
            .validate()
            .iter()
            .any(|v| matches!(v, LppViolation::ColumnNotIncreasing { column: 2, .. })));
    }

    #[test]
    fn crossing_paths_are_reported() {
        let upper = LatticePath::parse("NENE").unwrap();
        let lower = LatticePath::parse("ENEN").unwrap();
        let labels = BTreeMap::from([
            (2, ((1, 1), LabelColor::Black)),
            (1, ((2, 2), LabelColor::Blue)),
            (3, ((1, 2), LabelColor::Red)),
        ]);
        let lpp = Lpp { upper, lower, labels };
        assert!(lpp
            .validate()
            .iter()
            .any(|v| matches!(v, LppViolation::PathsTouchInside(1, 1))));
    }

    #[test]
    fn worked_example_area() {
        // 12 unlabelled interior cells, all satisfying the left/below rule
        assert_eq!(worked_example_polyomino().area().unwrap(), 12);
    }

    #[test]
    fn minimal_polyomino_has_zero_area() {
        let lpp = Lpp {
            upper: LatticePath::parse("NE").unwrap(),
            lower: LatticePath::parse("EN").unwrap(),
            labels: BTreeMap::from([(1, ((1, 1), LabelColor::Black))]),
        };
        assert_eq!(lpp.validate(), Vec::new());
        assert_eq!(lpp.area().unwrap(), 0);
    }

    #[test]
    fn worked_example_bounce_path() {
        let bounce = worked_example_polyomino().bounce_path().unwrap();
        assert_eq!(bounce.path.render(), "EENNNNEEEEEEN");
        assert_eq!(bounce.col_runs, vec![vec![1, 2], vec![3, 4, 5, 6, 7, 8]]);
        assert_eq!(bounce.row_runs, vec![vec![1, 2, 3, 4], vec![5]]);
    }

    #[test]
    fn worked_example_toppling_order() {
        assert_eq!(
            worked_example_polyomino().toppling_order().unwrap(),
            vec![3, 11, 7, 10, 6, 5, 4, 1, 9, 2, 12]
        );
    }

    #[test]
    fn bounce_stays_between_the_paths() {
        // containment on the worked example: for every column the bounce's
        // height through that column lies between the two paths
        let lpp = worked_example_polyomino();
        let bounce = lpp.bounce_path().unwrap();
        let mut x = 0usize;
        let mut y = 0usize;
        for s in bounce.path.steps() {
            match s {
                Step::E => {
                    x += 1;
                    assert!(y >= lpp.column_base(x) - 1, "bounce below lower path");
                    assert!(y <= lpp.column_top(x), "bounce above upper path");
                }
                Step::N => y += 1,
            }
        }
        assert_eq!((x, y), (lpp.width(), lpp.height()));
    }

    #[test]
    fn doc_roundtrip() {
        let lpp = worked_example_polyomino();
        let doc = LppDoc::from(&lpp);
        let back = Lpp::try_from(&doc).unwrap();
        assert_eq!(lpp, back);
    }
}
