//! Diagrams and essential sets.
//!
//! Every 1 of a matrix shades its own cell, the rest of its row to the east and
//! the rest of its column to the south. The unshaded cells form the diagram.
//! A diagram cell whose south and east neighbours are both shaded (or off the
//! matrix) is an SE-essential position, and labelling each one with the number
//! of 1s in the leading submatrix it closes gives the ranked essential set.
//! The NE, NW and SW variants are the same construction applied after rotating
//! the requested corner into the SE.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, Direction, Position};

/// The unshaded cells of a matrix, kept as a mask over its full shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    rows: usize,
    cols: usize,
    unshaded: Vec<bool>,
}

impl Diagram {
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Whether 0-based `(row, col)` is unshaded.
    pub fn is_unshaded(&self, row: usize, col: usize) -> bool {
        self.unshaded[row * self.cols + col]
    }

    pub fn contains(&self, pos: Position) -> bool {
        pos.in_shape(self.rows, self.cols) && {
            let (r, c) = pos.zero_based();
            self.is_unshaded(r, c)
        }
    }

    /// Unshaded positions in row-major order.
    pub fn positions(&self) -> Vec<Position> {
        self.unshaded
            .iter()
            .enumerate()
            .filter(|(_, &u)| u)
            .map(|(k, _)| Position::from_zero(k / self.cols, k % self.cols))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.unshaded.iter().filter(|&&u| u).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Diagram cells with both the south and east neighbour outside the diagram.
    fn se_corners(&self) -> Vec<Position> {
        let (m, n) = self.shape();
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..n {
                if !self.is_unshaded(i, j) {
                    continue;
                }
                let south_open = i + 1 < m && self.is_unshaded(i + 1, j);
                let east_open = j + 1 < n && self.is_unshaded(i, j + 1);
                if !south_open && !east_open {
                    out.push(Position::from_zero(i, j));
                }
            }
        }
        out
    }
}

/// Left-justified array with nonincreasing row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FerrersShape {
    row_lengths: Vec<usize>,
}

impl FerrersShape {
    pub fn new(row_lengths: Vec<usize>) -> Result<Self> {
        if row_lengths.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadInput(format!(
                "Ferrers row lengths must be nonincreasing: {row_lengths:?}"
            )));
        }
        Ok(Self { row_lengths })
    }

    pub fn row_lengths(&self) -> &[usize] {
        &self.row_lengths
    }

    pub fn cells(&self) -> usize {
        self.row_lengths.iter().sum()
    }
}

/// One `(row, col; rank)` triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankedEntry {
    pub position: Position,
    pub rank: usize,
}

/// A set of ranked positions with pairwise distinct positions, ordered by `(row, col)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RankedEssentialSet {
    entries: BTreeMap<Position, usize>,
}

impl RankedEssentialSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a set from triples, rejecting repeated positions.
    pub fn from_entries(entries: impl IntoIterator<Item = RankedEntry>) -> Result<Self> {
        let mut out = Self::new();
        for e in entries {
            out.insert(e)?;
        }
        Ok(out)
    }

    /// Convenience constructor from `(row, col, rank)` triples.
    pub fn from_triples(triples: &[(usize, usize, usize)]) -> Result<Self> {
        Self::from_entries(triples.iter().map(|&(row, col, rank)| RankedEntry {
            position: Position::new(row, col),
            rank,
        }))
    }

    pub fn insert(&mut self, entry: RankedEntry) -> Result<()> {
        if entry.position.row == 0 || entry.position.col == 0 {
            return Err(Error::BadInput(format!(
                "positions are 1-based, got {}",
                entry.position
            )));
        }
        if self.entries.insert(entry.position, entry.rank).is_some() {
            return Err(Error::BadInput(format!(
                "position {} listed twice",
                entry.position
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rank_at(&self, pos: Position) -> Option<usize> {
        self.entries.get(&pos).copied()
    }

    /// Entries sorted by `(row, col)`.
    pub fn iter(&self) -> impl Iterator<Item = RankedEntry> + '_ {
        self.entries
            .iter()
            .map(|(&position, &rank)| RankedEntry { position, rank })
    }

    pub fn positions(&self) -> Vec<Position> {
        self.entries.keys().copied().collect()
    }

    /// Checks every position lies inside an `rows x cols` matrix.
    pub fn check_shape(&self, rows: usize, cols: usize) -> Result<()> {
        match self.entries.keys().find(|p| !p.in_shape(rows, cols)) {
            Some(p) => Err(Error::BadInput(format!(
                "position {p} lies outside {rows}x{cols}"
            ))),
            None => Ok(()),
        }
    }
}

impl std::fmt::Display for RankedEssentialSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|e| format!("({},{};{})", e.position.row, e.position.col, e.rank))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A position of the combined essential set together with every direction
/// whose essential set contains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedPosition {
    pub position: Position,
    pub directions: Vec<Direction>,
}

/// Computes the diagram of `a`.
pub fn diagram(a: &BinaryMatrix) -> Diagram {
    let (m, n) = a.shape();
    let mut unshaded = vec![false; m * n];
    // col_hit[j]: some 1 at or above the current row in column j
    let mut col_hit = vec![false; n];
    for i in 0..m {
        let mut row_hit = false;
        for j in 0..n {
            let one = a.get(i, j);
            row_hit |= one;
            col_hit[j] |= one;
            unshaded[i * n + j] = !row_hit && !col_hit[j];
        }
    }
    Diagram {
        rows: m,
        cols: n,
        unshaded,
    }
}

/// The essential set of `a` in direction `dir`, sorted by position.
pub fn essential_set(a: &BinaryMatrix, dir: Direction) -> Vec<Position> {
    let turns = dir.turns_to_se();
    if turns == 0 {
        return diagram(a).se_corners();
    }
    let rotated = a.rotate(turns);
    let (rm, rn) = rotated.shape();
    let mut out: Vec<Position> = diagram(&rotated)
        .se_corners()
        .into_iter()
        .map(|p| p.rotated(rm, rn, -turns))
        .collect();
    out.sort_unstable();
    out
}

/// Number of 1s in the leading submatrix for every cell: `counts[i][j]` covers
/// rows `0..=i` and columns `0..=j`.
pub(crate) fn leading_counts(a: &BinaryMatrix) -> Vec<usize> {
    let (m, n) = a.shape();
    let mut counts = vec![0usize; m * n];
    for i in 0..m {
        let mut row_acc = 0;
        for j in 0..n {
            row_acc += usize::from(a.get(i, j));
            let above = if i > 0 { counts[(i - 1) * n + j] } else { 0 };
            counts[i * n + j] = above + row_acc;
        }
    }
    counts
}

/// The SE-essential set of `a`, each position ranked by the number of 1s
/// in rows `1..=i` and columns `1..=j`.
pub fn ranked_essential_set(a: &BinaryMatrix) -> RankedEssentialSet {
    let n = a.cols();
    let counts = leading_counts(a);
    let mut out = RankedEssentialSet::new();
    for p in diagram(a).se_corners() {
        let (r, c) = p.zero_based();
        out.entries.insert(p, counts[r * n + c]);
    }
    out
}

/// Union of the four directional essential sets, each position tagged with
/// the directions that produced it.
pub fn full_essential_set(a: &BinaryMatrix) -> Vec<TaggedPosition> {
    let mut merged: BTreeMap<Position, Vec<Direction>> = BTreeMap::new();
    for dir in Direction::ALL {
        for p in essential_set(a, dir) {
            merged.entry(p).or_default().push(dir);
        }
    }
    merged
        .into_iter()
        .map(|(position, directions)| TaggedPosition {
            position,
            directions,
        })
        .collect()
}

/// Returns the row lengths when the diagram is a Ferrers array (left-justified,
/// nonincreasing row lengths).
pub fn is_ferrers_diagram(d: &Diagram) -> Option<FerrersShape> {
    let (m, n) = d.shape();
    let mut lengths = Vec::with_capacity(m);
    for i in 0..m {
        let len = (0..n).take_while(|&j| d.is_unshaded(i, j)).count();
        if (len..n).any(|j| d.is_unshaded(i, j)) {
            return None;
        }
        lengths.push(len);
    }
    FerrersShape::new(lengths).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(s: &str) -> BinaryMatrix {
        s.parse().unwrap()
    }

    fn pos(list: &[(usize, usize)]) -> Vec<Position> {
        list.iter().map(|&(r, c)| Position::new(r, c)).collect()
    }

    const A2: &str = "0011111\n0011000\n0011000\n0111000\n1110000\n1000000\n";
    const A1: &str = "0111100\n0010000\n0010000\n0000011\n1000000\n1000000\n";

    /// Shades by brute force straight from the definition.
    fn brute_diagram(a: &BinaryMatrix) -> Vec<Position> {
        let (m, n) = a.shape();
        let mut shaded = vec![vec![false; n]; m];
        for p in a.ones_positions() {
            let (r, c) = p.zero_based();
            shaded[r][c..].fill(true);
            for row in shaded.iter_mut().skip(r) {
                row[c] = true;
            }
        }
        let mut out = Vec::new();
        for (i, row) in shaded.iter().enumerate() {
            for (j, &s) in row.iter().enumerate() {
                if !s {
                    out.push(Position::from_zero(i, j));
                }
            }
        }
        out
    }

    #[test]
    fn diagram_of_polyomino_is_ferrers() {
        let d = diagram(&mat(A2));
        assert_eq!(
            d.positions(),
            pos(&[(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1)])
        );
        let shape = is_ferrers_diagram(&d).unwrap();
        assert_eq!(shape.row_lengths(), &[2, 2, 2, 1, 0, 0]);
    }

    #[test]
    fn diagram_matches_shading_definition() {
        for s in [A1, A2, "101\n110\n010\n", "000\n000\n"] {
            let a = mat(s);
            assert_eq!(diagram(&a).positions(), brute_diagram(&a));
        }
        for n in 1..=5 {
            let id = BinaryMatrix::identity(n);
            assert!(brute_diagram(&id).is_empty());
            assert!(diagram(&id).is_empty());
        }
        assert!(diagram(&BinaryMatrix::ones(3, 4)).is_empty());
    }

    #[test]
    fn disconnected_diagram_shape() {
        // A1 is disconnected, but the 1s in row 1 shade columns 2..5 from the
        // top, so only the first column survives down to the 1 at (5,1).
        let d = diagram(&mat(A1));
        assert_eq!(d.positions(), brute_diagram(&mat(A1)));
        assert_eq!(d.positions(), pos(&[(1, 1), (2, 1), (3, 1), (4, 1)]));
        assert_eq!(
            is_ferrers_diagram(&d).unwrap().row_lengths(),
            &[1, 1, 1, 1, 0, 0]
        );
        // a genuinely non-Ferrers diagram: unshaded cell right of a shaded one
        let gap = diagram(&mat("010\n000\n"));
        assert_eq!(gap.positions(), pos(&[(1, 1), (2, 1), (2, 3)]));
        assert_eq!(is_ferrers_diagram(&gap), None);
        let empty = diagram(&BinaryMatrix::ones(2, 2));
        assert_eq!(is_ferrers_diagram(&empty).unwrap().row_lengths(), &[0, 0]);
    }

    #[test]
    fn permutation_ranked_essential_sets() {
        let p = BinaryMatrix::permutation(&[2, 5, 1, 4, 6, 3]).unwrap();
        assert_eq!(
            essential_set(&p, Direction::SE),
            pos(&[(2, 1), (2, 4), (5, 3)])
        );
        assert_eq!(
            ranked_essential_set(&p),
            RankedEssentialSet::from_triples(&[(2, 1, 0), (2, 4, 1), (5, 3, 2)]).unwrap()
        );
        let g = BinaryMatrix::permutation(&[2, 5, 7, 1, 3, 4, 6, 8]).unwrap();
        assert_eq!(
            ranked_essential_set(&g),
            RankedEssentialSet::from_triples(&[(3, 1, 0), (3, 4, 1), (3, 6, 2)]).unwrap()
        );
        for n in 1..=6 {
            assert!(essential_set(&BinaryMatrix::identity(n), Direction::SE).is_empty());
        }
    }

    #[test]
    fn polyomino_ranked_essential_set() {
        assert_eq!(
            ranked_essential_set(&mat(A2)),
            RankedEssentialSet::from_triples(&[(3, 2, 0), (4, 1, 0)]).unwrap()
        );
    }

    #[test]
    fn generalized_polyomino_ranked_essential_set() {
        let a = mat(concat!(
            "00110000\n",
            "00010000\n",
            "00010000\n",
            "00000100\n",
            "00001100\n",
            "00000111\n",
            "01000000\n",
            "11000000\n",
        ));
        assert_eq!(
            ranked_essential_set(&a),
            RankedEssentialSet::from_triples(&[(4, 5, 4), (6, 2, 0), (7, 1, 0)]).unwrap()
        );
    }

    #[test]
    fn combined_essential_set_with_letters() {
        let c = mat("000111\n001110\n001100\n011100\n111000\n001000\n");
        let e = full_essential_set(&c);
        let with = |d: Direction| -> Vec<Position> {
            e.iter()
                .filter(|t| t.directions.contains(&d))
                .map(|t| t.position)
                .collect()
        };
        assert_eq!(e.len(), 7);
        assert_eq!(with(Direction::SE), pos(&[(1, 3), (3, 2), (4, 1)]));
        assert_eq!(with(Direction::NE), pos(&[(6, 2)]));
        assert_eq!(with(Direction::NW), pos(&[(2, 6), (3, 5), (5, 4)]));
        assert!(with(Direction::SW).is_empty());
    }

    #[test]
    fn combined_essential_set_extremes() {
        assert!(full_essential_set(&BinaryMatrix::ones(3, 4)).is_empty());
        // the zero matrix leaves the whole grid unshaded in every direction,
        // so each direction contributes exactly its own corner
        let e = full_essential_set(&BinaryMatrix::zeros(3, 3));
        let expect = vec![
            TaggedPosition {
                position: Position::new(1, 1),
                directions: vec![Direction::NW],
            },
            TaggedPosition {
                position: Position::new(1, 3),
                directions: vec![Direction::NE],
            },
            TaggedPosition {
                position: Position::new(3, 1),
                directions: vec![Direction::SW],
            },
            TaggedPosition {
                position: Position::new(3, 3),
                directions: vec![Direction::SE],
            },
        ];
        assert_eq!(e, expect);
        let single = full_essential_set(&BinaryMatrix::zeros(1, 1));
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].directions, Direction::ALL.to_vec());
    }

    #[test]
    fn ranked_set_rejects_duplicates() {
        assert!(RankedEssentialSet::from_triples(&[(1, 1, 0), (1, 1, 2)]).is_err());
        assert!(RankedEssentialSet::from_triples(&[(0, 1, 0)]).is_err());
        let s = RankedEssentialSet::from_triples(&[(4, 1, 0), (3, 2, 0)]).unwrap();
        assert_eq!(s.to_string(), "{(3,2;0),(4,1;0)}");
        assert!(s.check_shape(4, 2).is_ok());
        assert!(s.check_shape(3, 2).is_err());
    }
}
