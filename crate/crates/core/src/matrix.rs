//! The dense (0,1)-matrix value type and its elementary queries: margins,
//! line convexity, rookwise connectivity, directional sources, quarter-turn
//! rotation and the entrywise partial order.

use std::fmt;

use crate::error::{Error, Result};

/// A cell position, 1-based as in all external input and output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub row: usize,
    pub col: usize,
}

impl Position {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// Builds a position from 0-based indices.
    pub const fn from_zero(row: usize, col: usize) -> Self {
        Self {
            row: row + 1,
            col: col + 1,
        }
    }

    /// 0-based (row, col).
    pub const fn zero_based(self) -> (usize, usize) {
        (self.row - 1, self.col - 1)
    }

    /// Entrywise partial order on positions: `(i,j) <= (k,l)` iff `i <= k` and `j <= l`.
    pub fn precedes(self, other: Position) -> bool {
        self.row <= other.row && self.col <= other.col
    }

    /// Where this position of an `rows x cols` matrix lands after
    /// `quarter_turns` counter-clockwise rotations.
    pub fn rotated(self, rows: usize, cols: usize, quarter_turns: i32) -> Position {
        let (mut r, mut c) = self.zero_based();
        let (mut m, mut n) = (rows, cols);
        for _ in 0..quarter_turns.rem_euclid(4) {
            let (nr, nc) = (n - 1 - c, r);
            r = nr;
            c = nc;
            std::mem::swap(&mut m, &mut n);
        }
        Position::from_zero(r, c)
    }

    pub(crate) fn in_shape(self, rows: usize, cols: usize) -> bool {
        self.row >= 1 && self.col >= 1 && self.row <= rows && self.col <= cols
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Compass direction naming a source type or a directional essential set.
///
/// A SE-source reaches every other 1 by steps moving east or south; the
/// SE-essential set is built from shading east and south of every 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    SE,
    NE,
    NW,
    SW,
}

impl Direction {
    /// All four directions, each one counter-clockwise quarter turn from the previous.
    pub const ALL: [Direction; 4] = [Direction::SE, Direction::NE, Direction::NW, Direction::SW];

    fn index(self) -> usize {
        match self {
            Direction::SE => 0,
            Direction::NE => 1,
            Direction::NW => 2,
            Direction::SW => 3,
        }
    }

    /// The direction this one becomes under `quarter_turns` counter-clockwise rotations.
    pub fn rotated(self, quarter_turns: i32) -> Direction {
        let idx = (self.index() as i32 + quarter_turns).rem_euclid(4) as usize;
        Direction::ALL[idx]
    }

    /// Number of counter-clockwise quarter turns taking this direction to SE.
    pub fn turns_to_se(self) -> i32 {
        (4 - self.index() as i32) % 4
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::SE => "SE",
            Direction::NE => "NE",
            Direction::NW => "NW",
            Direction::SW => "SW",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "SE" => Ok(Direction::SE),
            "NE" => Ok(Direction::NE),
            "NW" => Ok(Direction::NW),
            "SW" => Ok(Direction::SW),
            _ => Err(Error::BadInput(format!("unknown direction `{s}`"))),
        }
    }
}

/// Nonempty inclusive range of 1-based line indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    start: usize,
    end: usize,
}

impl Interval {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if start == 0 || start > end {
            return Err(Error::InvalidInterval { start, end });
        }
        Ok(Self { start, end })
    }

    pub fn start(self) -> usize {
        self.start
    }

    pub fn end(self) -> usize {
        self.end
    }

    pub fn len(self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, idx: usize) -> bool {
        self.start <= idx && idx <= self.end
    }

    pub fn is_subset_of(self, other: Interval) -> bool {
        other.start <= self.start && self.end <= other.end
    }

    /// Returns the interval moved by `delta` positions, if it stays 1-based.
    pub fn shifted(self, delta: isize) -> Option<Interval> {
        let start = self.start as isize + delta;
        let end = self.end as isize + delta;
        (start >= 1).then_some(Interval {
            start: start as usize,
            end: end as usize,
        })
    }

    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Which lines a convexity check looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvexityMode {
    Row,
    Column,
    Both,
}

/// Outcome of comparing two equal-shape matrices entrywise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntrywiseOrder {
    LessEqual,
    GreaterEqual,
    Equal,
    Incomparable,
}

/// Row sum vector `R` and column sum vector `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarginPair {
    pub row_sums: Vec<usize>,
    pub col_sums: Vec<usize>,
}

impl MarginPair {
    pub fn new(row_sums: Vec<usize>, col_sums: Vec<usize>) -> Self {
        Self { row_sums, col_sums }
    }

    pub fn rows(&self) -> usize {
        self.row_sums.len()
    }

    pub fn cols(&self) -> usize {
        self.col_sums.len()
    }

    pub fn total(&self) -> usize {
        self.row_sums.iter().sum()
    }

    pub fn has_zero_line(&self) -> bool {
        self.row_sums.contains(&0) || self.col_sums.contains(&0)
    }

    /// Checks the conditions every class query relies on: a nonempty shape,
    /// equal totals and `r_i <= n`, `s_j <= m`.
    pub fn validate(&self) -> Result<()> {
        let (m, n) = (self.rows(), self.cols());
        if m == 0 || n == 0 {
            return Err(Error::BadInput("margin vectors must be nonempty".into()));
        }
        let (rs, cs): (usize, usize) = (self.row_sums.iter().sum(), self.col_sums.iter().sum());
        if rs != cs {
            return Err(Error::BadInput(format!(
                "row sums total {rs} but column sums total {cs}"
            )));
        }
        if let Some(r) = self.row_sums.iter().find(|&&r| r > n) {
            return Err(Error::BadInput(format!("row sum {r} exceeds {n} columns")));
        }
        if let Some(s) = self.col_sums.iter().find(|&&s| s > m) {
            return Err(Error::BadInput(format!("column sum {s} exceeds {m} rows")));
        }
        Ok(())
    }

    /// Margins of `rotate(A, quarter_turns)` given the margins of `A`.
    pub fn rotated(&self, quarter_turns: i32) -> MarginPair {
        let mut rows = self.row_sums.clone();
        let mut cols = self.col_sums.clone();
        for _ in 0..quarter_turns.rem_euclid(4) {
            // counter-clockwise: new rows are old columns read right to left,
            // new columns are old rows read top to bottom
            let new_rows: Vec<usize> = cols.iter().rev().copied().collect();
            cols = rows;
            rows = new_rows;
        }
        MarginPair::new(rows, cols)
    }
}

impl fmt::Display for MarginPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "R=({}) S=({})",
            join(&self.row_sums),
            join(&self.col_sums)
        )
    }
}

/// The sources of a matrix, one optional position per direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Sources([Option<Position>; 4]);

impl Sources {
    pub fn get(&self, dir: Direction) -> Option<Position> {
        self.0[dir.index()]
    }

    pub fn is_directed(&self) -> bool {
        self.0.iter().any(Option::is_some)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Direction, Position)> + '_ {
        Direction::ALL
            .iter()
            .filter_map(move |&d| self.get(d).map(|p| (d, p)))
    }
}

/// Dense rectangular (0,1)-matrix with at least one row and one column.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<bool>,
}

impl BinaryMatrix {
    /// Builds a matrix from row-major cells.
    pub fn new(rows: usize, cols: usize, cells: Vec<bool>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if cells.len() != rows * cols {
            return Err(Error::CellCount {
                rows,
                cols,
                got: cells.len(),
            });
        }
        Ok(Self { rows, cols, cells })
    }

    /// Builds a matrix from a cell function over 0-based indices.
    ///
    /// # Panics
    ///
    /// Panics if either dimension is zero.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let mut cells = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                cells.push(f(i, j));
            }
        }
        Self { rows, cols, cells }
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let mut cells = Vec::with_capacity(m * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::RaggedRows {
                    line: i + 1,
                    expected: n,
                    got: row.len(),
                });
            }
            cells.extend_from_slice(row);
        }
        Self::new(m, n, cells)
    }

    /// `O_{m,n}`.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| false)
    }

    /// `J_{m,n}`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| true)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i == j)
    }

    /// Permutation matrix with its 1 in row `i` at column `perm[i-1]` (both 1-based).
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::BadInput(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(Self::from_fn(n, n, |i, j| perm[i] == j + 1))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Entry at 0-based `(row, col)`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[row * self.cols + col]
    }

    /// Entry at a 1-based position.
    pub fn at(&self, pos: Position) -> bool {
        let (r, c) = pos.zero_based();
        self.get(r, c)
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: bool) {
        self.cells[row * self.cols + col] = value;
    }

    /// Copy with the entry at `pos` replaced.
    pub fn with_entry(&self, pos: Position, value: bool) -> Self {
        let mut out = self.clone();
        let (r, c) = pos.zero_based();
        out.set(r, c, value);
        out
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn row(&self, row: usize) -> &[bool] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = bool> + '_ {
        (0..self.rows).map(move |i| self.get(i, col))
    }

    pub fn count_ones(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    /// Positions of the 1s in row-major order.
    pub fn ones_positions(&self) -> impl Iterator<Item = Position> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(k, _)| Position::from_zero(k / self.cols, k % self.cols))
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|i| self.row(i).iter().filter(|&&b| b).count())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.cols];
        for i in 0..self.rows {
            for (j, &b) in self.row(i).iter().enumerate() {
                sums[j] += usize::from(b);
            }
        }
        sums
    }

    pub fn margins(&self) -> MarginPair {
        MarginPair::new(self.row_sums(), self.col_sums())
    }

    pub fn has_zero_line(&self) -> bool {
        self.margins().has_zero_line()
    }

    /// Support of row `row` (0-based) as an interval, when it is one.
    pub fn row_interval(&self, row: usize) -> Option<Interval> {
        run_of(self.row(row).iter().copied())
    }

    /// Support of column `col` (0-based) as an interval, when it is one.
    pub fn col_interval(&self, col: usize) -> Option<Interval> {
        run_of(self.column(col))
    }

    /// 1-based indices of the 1s in row `row` (0-based).
    pub fn row_support(&self, row: usize) -> Vec<usize> {
        support(self.row(row).iter().copied())
    }

    /// 1-based indices of the 1s in column `col` (0-based).
    pub fn col_support(&self, col: usize) -> Vec<usize> {
        support(self.column(col))
    }

    pub fn is_row_convex(&self) -> bool {
        (0..self.rows).all(|i| is_consecutive(self.row(i).iter().copied()))
    }

    pub fn is_col_convex(&self) -> bool {
        (0..self.cols).all(|j| is_consecutive(self.column(j)))
    }

    pub fn is_convex_in(&self, mode: ConvexityMode) -> bool {
        match mode {
            ConvexityMode::Row => self.is_row_convex(),
            ConvexityMode::Column => self.is_col_convex(),
            ConvexityMode::Both => self.is_row_convex() && self.is_col_convex(),
        }
    }

    pub fn is_convex(&self) -> bool {
        self.is_convex_in(ConvexityMode::Both)
    }

    /// No zero line and all 1s in a single rookwise-connected component.
    pub fn is_connected(&self) -> bool {
        if self.has_zero_line() {
            return false;
        }
        let Some(start) = self.cells.iter().position(|&b| b) else {
            return false;
        };
        let (m, n) = self.shape();
        let mut seen = vec![false; m * n];
        let mut stack = vec![start];
        seen[start] = true;
        let mut reached = 0;
        while let Some(k) = stack.pop() {
            reached += 1;
            let (i, j) = (k / n, k % n);
            let mut visit = |ni: usize, nj: usize| {
                let nk = ni * n + nj;
                if self.cells[nk] && !seen[nk] {
                    seen[nk] = true;
                    stack.push(nk);
                }
            };
            if i > 0 {
                visit(i - 1, j);
            }
            if i + 1 < m {
                visit(i + 1, j);
            }
            if j > 0 {
                visit(i, j - 1);
            }
            if j + 1 < n {
                visit(i, j + 1);
            }
        }
        reached == self.count_ones()
    }

    /// The SE-source: a 1 from which every other 1 is reachable by steps to
    /// adjacent 1s moving only east or south.
    fn se_source(&self) -> Option<Position> {
        let (m, n) = self.shape();
        // the source must precede every 1, so it is the first 1 in row-major order
        let first = self.cells.iter().position(|&b| b)?;
        let mut reach = vec![false; m * n];
        reach[first] = true;
        for i in first / n..m {
            for j in 0..n {
                let k = i * n + j;
                if !self.cells[k] || reach[k] {
                    continue;
                }
                let from_north = i > 0 && reach[k - n];
                let from_west = j > 0 && reach[k - 1];
                reach[k] = from_north || from_west;
            }
        }
        self.cells
            .iter()
            .zip(&reach)
            .all(|(&one, &r)| !one || r)
            .then(|| Position::from_zero(first / n, first % n))
    }

    /// The source of each type, found by rotating the matrix so the requested
    /// type becomes SE.
    pub fn sources(&self) -> Sources {
        let mut out = Sources::default();
        for dir in Direction::ALL {
            let turns = dir.turns_to_se();
            let rotated = self.rotate(turns);
            out.0[dir.index()] = rotated
                .se_source()
                .map(|p| p.rotated(rotated.rows, rotated.cols, -turns));
        }
        out
    }

    pub fn is_directed(&self) -> bool {
        self.sources().is_directed()
    }

    /// Counter-clockwise rotation by `90 * quarter_turns` degrees.
    pub fn rotate(&self, quarter_turns: i32) -> BinaryMatrix {
        match quarter_turns.rem_euclid(4) {
            0 => self.clone(),
            1 => Self::from_fn(self.cols, self.rows, |i, j| self.get(j, self.cols - 1 - i)),
            2 => Self::from_fn(self.rows, self.cols, |i, j| {
                self.get(self.rows - 1 - i, self.cols - 1 - j)
            }),
            _ => Self::from_fn(self.cols, self.rows, |i, j| self.get(self.rows - 1 - j, i)),
        }
    }

    pub fn transpose(&self) -> BinaryMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn check_same_shape(&self, other: &BinaryMatrix) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    /// Entrywise comparison.
    pub fn compare(&self, other: &BinaryMatrix) -> Result<EntrywiseOrder> {
        self.check_same_shape(other)?;
        let mut le = true;
        let mut ge = true;
        for (&a, &b) in self.cells.iter().zip(&other.cells) {
            le &= !a || b;
            ge &= a || !b;
        }
        Ok(match (le, ge) {
            (true, true) => EntrywiseOrder::Equal,
            (true, false) => EntrywiseOrder::LessEqual,
            (false, true) => EntrywiseOrder::GreaterEqual,
            (false, false) => EntrywiseOrder::Incomparable,
        })
    }

    /// `self <= other` entrywise; false for different shapes.
    pub fn le(&self, other: &BinaryMatrix) -> bool {
        self.shape() == other.shape() && self.cells.iter().zip(&other.cells).all(|(&a, &b)| !a || b)
    }

    fn zip_with(&self, other: &BinaryMatrix, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        self.check_same_shape(other)?;
        let cells = self
            .cells
            .iter()
            .zip(&other.cells)
            .map(|(&a, &b)| op(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            cells,
        })
    }

    pub fn and(&self, other: &BinaryMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn or(&self, other: &BinaryMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a || b)
    }

    /// Copy of the `rows x cols` block whose top-left cell is `(row0, col0)` (0-based).
    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 || row0 + rows > self.rows || col0 + cols > self.cols {
            return Err(Error::ShapeMismatch(format!(
                "block {rows}x{cols} at ({},{}) does not fit in {}x{}",
                row0 + 1,
                col0 + 1,
                self.rows,
                self.cols
            )));
        }
        Ok(Self::from_fn(rows, cols, |i, j| {
            self.get(row0 + i, col0 + j)
        }))
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// Canonical text: one space-free line of `0`/`1` per row.
impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for &b in self.row(i) {
                f.write_str(if b { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn is_consecutive(line: impl Iterator<Item = bool>) -> bool {
    // 0 = before the run, 1 = inside, 2 = after
    let mut state = 0u8;
    for b in line {
        state = match (state, b) {
            (0, false) => 0,
            (0, true) | (1, true) => 1,
            (1, false) | (2, false) => 2,
            _ => return false,
        };
    }
    true
}

fn run_of(line: impl Iterator<Item = bool>) -> Option<Interval> {
    let idx = support(line);
    let (&first, &last) = (idx.first()?, idx.last()?);
    (last - first + 1 == idx.len()).then_some(Interval {
        start: first,
        end: last,
    })
}

fn support(line: impl Iterator<Item = bool>) -> Vec<usize> {
    line.enumerate()
        .filter(|(_, b)| *b)
        .map(|(k, _)| k + 1)
        .collect()
}
