//! Interchanges (2x2 switches), the ones that keep a matrix convex, the
//! pairwise line relations found in convex classes, and the construction of
//! convex classes from nested 1-shift pairs.

use std::fmt;
use std::str::FromStr;

use crate::classes::enumerate_class;
use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, Interval, MarginPair};

/// Which diagonal of the 2x2 submatrix holds the 1s before the move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// 1s at `(row_a, col_a)` and `(row_b, col_b)`.
    Main,
    /// 1s at `(row_a, col_b)` and `(row_b, col_a)`.
    Anti,
}

/// A 2x2 switch on rows `row_a < row_b` and columns `col_a < col_b` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InterchangeMove {
    pub row_a: usize,
    pub row_b: usize,
    pub col_a: usize,
    pub col_b: usize,
    pub orientation: Orientation,
}

impl fmt::Display for InterchangeMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let diag = match self.orientation {
            Orientation::Main => "main",
            Orientation::Anti => "anti",
        };
        write!(
            f,
            "rows {},{} cols {},{} ({diag})",
            self.row_a, self.row_b, self.col_a, self.col_b
        )
    }
}

fn corners(a: &BinaryMatrix, mv: &InterchangeMove) -> [bool; 4] {
    let (r1, r2, c1, c2) = (mv.row_a - 1, mv.row_b - 1, mv.col_a - 1, mv.col_b - 1);
    [a.get(r1, c1), a.get(r1, c2), a.get(r2, c1), a.get(r2, c2)]
}

fn orientation_of(cells: [bool; 4]) -> Option<Orientation> {
    match cells {
        [true, false, false, true] => Some(Orientation::Main),
        [false, true, true, false] => Some(Orientation::Anti),
        _ => None,
    }
}

/// Every available switch, sorted by rows then columns.
pub fn enumerate_interchanges(a: &BinaryMatrix) -> Vec<InterchangeMove> {
    let (m, n) = a.shape();
    let mut out = Vec::new();
    for r1 in 0..m {
        for r2 in r1 + 1..m {
            for c1 in 0..n {
                for c2 in c1 + 1..n {
                    let cells = [a.get(r1, c1), a.get(r1, c2), a.get(r2, c1), a.get(r2, c2)];
                    if let Some(orientation) = orientation_of(cells) {
                        out.push(InterchangeMove {
                            row_a: r1 + 1,
                            row_b: r2 + 1,
                            col_a: c1 + 1,
                            col_b: c2 + 1,
                            orientation,
                        });
                    }
                }
            }
        }
    }
    out
}

pub fn apply_interchange(a: &BinaryMatrix, mv: &InterchangeMove) -> Result<BinaryMatrix> {
    let (m, n) = a.shape();
    let in_range = mv.row_a >= 1
        && mv.row_a < mv.row_b
        && mv.row_b <= m
        && mv.col_a >= 1
        && mv.col_a < mv.col_b
        && mv.col_b <= n;
    if !in_range {
        return Err(Error::InvalidMove(format!(
            "{mv} does not fit a {m}x{n} matrix"
        )));
    }
    if orientation_of(corners(a, mv)) != Some(mv.orientation) {
        return Err(Error::InvalidMove(format!(
            "{mv} does not match the matrix"
        )));
    }
    let mut b = a.clone();
    for (r, c) in [
        (mv.row_a, mv.col_a),
        (mv.row_a, mv.col_b),
        (mv.row_b, mv.col_a),
        (mv.row_b, mv.col_b),
    ] {
        b.set(r - 1, c - 1, !a.get(r - 1, c - 1));
    }
    Ok(b)
}

/// The block conditions under which a switch keeps a convex matrix with all
/// line sums at least 2 convex: the block spanned by the move is all 1s
/// except the two corners holding 0s, its first and last rows are 0 outside
/// the block, and so are its first and last columns.
pub fn passes_block_structure(a: &BinaryMatrix, mv: &InterchangeMove) -> bool {
    let (r1, r2, c1, c2) = (mv.row_a - 1, mv.row_b - 1, mv.col_a - 1, mv.col_b - 1);
    let zero_corner = |i: usize, j: usize| match mv.orientation {
        Orientation::Main => (i, j) == (r1, c2) || (i, j) == (r2, c1),
        Orientation::Anti => (i, j) == (r1, c1) || (i, j) == (r2, c2),
    };
    let block_ok = (r1..=r2).all(|i| (c1..=c2).all(|j| a.get(i, j) != zero_corner(i, j)));
    let rows_ok = [r1, r2]
        .iter()
        .all(|&i| (0..a.cols()).all(|j| (c1..=c2).contains(&j) || !a.get(i, j)));
    let cols_ok = [c1, c2]
        .iter()
        .all(|&j| (0..a.rows()).all(|i| (r1..=r2).contains(&i) || !a.get(i, j)));
    block_ok && rows_ok && cols_ok
}

/// Switches that turn the convex matrix `a` into another convex matrix.
pub fn convex_preserving_moves(a: &BinaryMatrix) -> Result<Vec<InterchangeMove>> {
    if !a.is_convex() {
        return Err(Error::PreconditionViolated("matrix is not convex".into()));
    }
    let all_lines_wide = a.row_sums().iter().chain(&a.col_sums()).all(|&s| s >= 2);
    let moves = enumerate_interchanges(a).into_iter();
    Ok(if all_lines_wide {
        moves.filter(|mv| passes_block_structure(a, mv)).collect()
    } else {
        moves
            .filter(|mv| apply_interchange(a, mv).is_ok_and(|b| b.is_convex()))
            .collect()
    })
}

/// Whether every matrix with these margins is convex.
pub fn is_convex_class(margins: &MarginPair, cap: usize) -> Result<bool> {
    Ok(enumerate_class(margins, false, cap)?
        .iter()
        .all(BinaryMatrix::is_convex))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineRelation {
    /// Both lines hold a single 1.
    Singletons,
    /// One support contains the other.
    Nested,
    /// Equal-length intervals of length at least 2, offset by one.
    OneShift,
    Violation,
}

impl fmt::Display for LineRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineRelation::Singletons => "SINGLETONS",
            LineRelation::Nested => "NESTED",
            LineRelation::OneShift => "ONE_SHIFT",
            LineRelation::Violation => "VIOLATION",
        })
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

fn as_interval(support: &[usize]) -> Option<Interval> {
    let (&first, &last) = (support.first()?, support.last()?);
    (last - first + 1 == support.len())
        .then(|| Interval::new(first, last).ok())
        .flatten()
}

/// Classifies two sorted line supports.
pub fn line_relation(p: &[usize], q: &[usize]) -> LineRelation {
    if p.len() == 1 && q.len() == 1 {
        return LineRelation::Singletons;
    }
    if is_subset(p, q) || is_subset(q, p) {
        return LineRelation::Nested;
    }
    match (as_interval(p), as_interval(q)) {
        (Some(i), Some(j)) if is_one_shift(i, j) => LineRelation::OneShift,
        _ => LineRelation::Violation,
    }
}

pub fn interval_relation(i: Interval, j: Interval) -> LineRelation {
    let p: Vec<usize> = i.iter().collect();
    let q: Vec<usize> = j.iter().collect();
    line_relation(&p, &q)
}

fn is_one_shift(i: Interval, j: Interval) -> bool {
    i.len() == j.len() && i.len() >= 2 && i.start().abs_diff(j.start()) == 1
}

fn line_pairs(supports: &[Vec<usize>]) -> impl Iterator<Item = (usize, usize, LineRelation)> + '_ {
    (0..supports.len()).flat_map(move |x| {
        (x + 1..supports.len())
            .map(move |y| (x + 1, y + 1, line_relation(&supports[x], &supports[y])))
    })
}

/// Row pairs and column pairs (1-based) whose supports fall outside the trichotomy.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TrichotomyReport {
    pub row_violations: Vec<(usize, usize)>,
    pub col_violations: Vec<(usize, usize)>,
}

impl TrichotomyReport {
    pub fn holds(&self) -> bool {
        self.row_violations.is_empty() && self.col_violations.is_empty()
    }
}

pub fn trichotomy_report(a: &BinaryMatrix) -> TrichotomyReport {
    let rows: Vec<_> = (0..a.rows()).map(|i| a.row_support(i)).collect();
    let cols: Vec<_> = (0..a.cols()).map(|j| a.col_support(j)).collect();
    let bad = |supports: &[Vec<usize>]| {
        line_pairs(supports)
            .filter(|&(_, _, rel)| rel == LineRelation::Violation)
            .map(|(x, y, _)| (x, y))
            .collect()
    };
    TrichotomyReport {
        row_violations: bad(&rows),
        col_violations: bad(&cols),
    }
}

/// Whether both the rows and the columns of a switch are singleton lines or
/// a 1-shift pair.
pub fn move_acts_on_shift_or_singletons(a: &BinaryMatrix, mv: &InterchangeMove) -> bool {
    let ok = |rel| matches!(rel, LineRelation::Singletons | LineRelation::OneShift);
    ok(line_relation(
        &a.row_support(mv.row_a - 1),
        &a.row_support(mv.row_b - 1),
    )) && ok(line_relation(
        &a.col_support(mv.col_a - 1),
        &a.col_support(mv.col_b - 1),
    ))
}

/// Two intervals of equal length whose starts differ by one. The order of
/// the two is the top/bottom placement of the base matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OneShiftPair {
    first: Interval,
    second: Interval,
}

impl OneShiftPair {
    /// Single-column pairs `{k}, {k+1}` are accepted as well.
    pub fn new(first: Interval, second: Interval) -> Result<Self> {
        if first.len() != second.len() || first.start().abs_diff(second.start()) != 1 {
            return Err(Error::SpecInvalid(format!(
                "{first} and {second} are not a 1-shift pair"
            )));
        }
        Ok(Self { first, second })
    }

    pub fn first(&self) -> Interval {
        self.first
    }

    pub fn second(&self) -> Interval {
        self.second
    }

    fn start(&self) -> usize {
        self.first.start().min(self.second.start())
    }

    fn end(&self) -> usize {
        self.first.end().max(self.second.end())
    }

    /// Columns shared by both intervals, if any.
    fn common(&self) -> Option<(usize, usize)> {
        let lo = self.first.start().max(self.second.start());
        let hi = self.first.end().min(self.second.end());
        (lo <= hi).then_some((lo, hi))
    }
}

/// Pairs `I_1, I'_1, ..., I_k, I'_k`, innermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexClassSpec {
    pub pairs: Vec<OneShiftPair>,
}

impl ConvexClassSpec {
    pub fn new(pairs: Vec<OneShiftPair>) -> Self {
        Self { pairs }
    }

    /// Number of columns: the right end of the widest pair.
    pub fn cols(&self) -> usize {
        self.pairs.iter().map(OneShiftPair::end).max().unwrap_or(0)
    }

    /// Checks that each pair's common part contains the union of the
    /// previous pair, and, unless full rows are added, that no column is empty.
    pub fn validate(&self, full_rows: usize) -> Result<()> {
        if self.pairs.is_empty() {
            return Err(Error::SpecInvalid("at least one pair is required".into()));
        }
        for (i, w) in self.pairs.windows(2).enumerate() {
            let inside = w[1]
                .common()
                .is_some_and(|(lo, hi)| lo <= w[0].start() && w[0].end() <= hi);
            if !inside {
                return Err(Error::SpecInvalid(format!(
                    "pair {} does not contain pair {} in its common columns",
                    i + 2,
                    i + 1
                )));
            }
        }
        for (i, pair) in self.pairs.iter().enumerate().skip(1) {
            if pair.first.len() < 2 {
                return Err(Error::SpecInvalid(format!(
                    "pair {} needs intervals of length at least 2",
                    i + 1
                )));
            }
        }
        let min_start = self
            .pairs
            .iter()
            .map(OneShiftPair::start)
            .min()
            .unwrap_or(1);
        if full_rows == 0 && min_start != 1 {
            return Err(Error::SpecInvalid(format!(
                "columns 1..{} are empty",
                min_start - 1
            )));
        }
        Ok(())
    }
}

impl FromStr for ConvexClassSpec {
    type Err = Error;

    /// One pair per line, `a..b c..d`; `#` comments and blank lines are skipped.
    fn from_str(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (k, raw) in s.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: k + 1,
                message,
            };
            let ranges: Vec<&str> = line.split_whitespace().collect();
            let [p, q] = ranges[..] else {
                return Err(err("expected two ranges `a..b c..d`".into()));
            };
            let range = |t: &str| -> Result<Interval> {
                let (a, b) = t
                    .split_once("..")
                    .ok_or_else(|| err(format!("`{t}` is not a range `a..b`")))?;
                let parse = |x: &str| {
                    x.parse::<usize>()
                        .map_err(|_| err(format!("`{x}` is not a positive integer")))
                };
                Interval::new(parse(a)?, parse(b)?).map_err(|e| err(e.to_string()))
            };
            pairs.push(OneShiftPair::new(range(p)?, range(q)?).map_err(|e| err(e.to_string()))?);
        }
        Ok(Self { pairs })
    }
}

impl fmt::Display for ConvexClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pairs {
            writeln!(
                f,
                "{}..{} {}..{}",
                p.first.start(),
                p.first.end(),
                p.second.start(),
                p.second.end()
            )?;
        }
        Ok(())
    }
}

/// The margins and all `2^k` members of the convex class described by `spec`,
/// with `full_rows` all-ones rows between the upper and lower halves.
pub fn build_convex_class(
    spec: &ConvexClassSpec,
    full_rows: usize,
) -> Result<(MarginPair, Vec<BinaryMatrix>)> {
    spec.validate(full_rows)?;
    let k = spec.pairs.len();
    if k >= usize::BITS as usize {
        return Err(Error::SpecInvalid(format!("{k} pairs are too many")));
    }
    let m = 2 * k + full_rows;
    let n = spec.cols();
    let build = |mask: usize| {
        let mut rows: Vec<Option<Interval>> = vec![None; m];
        for (i, pair) in spec.pairs.iter().enumerate() {
            let (top, bottom) = if mask >> i & 1 == 0 {
                (pair.first, pair.second)
            } else {
                (pair.second, pair.first)
            };
            rows[i] = Some(top);
            rows[m - 1 - i] = Some(bottom);
        }
        BinaryMatrix::from_fn(m, n, |i, j| rows[i].is_none_or(|iv| iv.contains(j + 1)))
    };
    let mut members: Vec<BinaryMatrix> = (0..1usize << k).map(build).collect();
    members.sort_unstable();
    Ok((members[0].margins(), members))
}
