//! Reconstruction of convex matrices from their margins plus either the
//! ranked essential set or the type of a source.
//!
//! The ranked reconstruction repeatedly fills the first unset cell in
//! row-major order, which is always a minimal unset position. A cell is
//! forced to 0 when it lies in the leading rectangle of an essential entry
//! whose residual rank is 0, or when its row or column already holds its
//! full margin. Every remaining candidate receives a 1.

use crate::diagram::{ranked_essential_set, RankedEssentialSet};
use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, Direction, MarginPair, Position};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    Unset,
    Zero,
    One,
}

/// The partially filled matrix together with the residual ranks of the
/// essential entries not yet exhausted and the residual line sums.
#[derive(Debug, Clone)]
pub struct ReconstructionState {
    rows: usize,
    cols: usize,
    cells: Vec<Cell>,
    pending: Vec<(Position, usize)>,
    row_need: Vec<usize>,
    col_need: Vec<usize>,
    /// `settled[i]`: every cell of row `i` left of this column is set.
    settled: Vec<usize>,
    writes: usize,
}

impl ReconstructionState {
    fn new(margins: &MarginPair, res: &RankedEssentialSet) -> Self {
        let (m, n) = (margins.rows(), margins.cols());
        Self {
            rows: m,
            cols: n,
            cells: vec![Cell::Unset; m * n],
            pending: res.iter().map(|e| (e.position, e.rank)).collect(),
            row_need: margins.row_sums.clone(),
            col_need: margins.col_sums.clone(),
            settled: vec![0; m],
            writes: 0,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Cell at 0-based `(row, col)`.
    pub fn cell(&self, row: usize, col: usize) -> Cell {
        self.cells[row * self.cols + col]
    }

    /// Essential entries whose residual rank has not reached 0, with those ranks.
    pub fn pending(&self) -> &[(Position, usize)] {
        &self.pending
    }

    pub fn residual_row_sums(&self) -> &[usize] {
        &self.row_need
    }

    pub fn residual_col_sums(&self) -> &[usize] {
        &self.col_need
    }

    fn write(&mut self, row: usize, col: usize, value: Cell) {
        let k = row * self.cols + col;
        assert_eq!(self.cells[k], Cell::Unset, "cell written twice");
        self.cells[k] = value;
        self.writes += 1;
    }

    fn zero_if_unset(&mut self, row: usize, col: usize) {
        if self.cell(row, col) == Cell::Unset {
            self.write(row, col, Cell::Zero);
        }
    }

    /// Zeroes the unset cells of the leading rectangle ending at 0-based
    /// `(last_row, last_col)`.
    fn zero_rectangle(&mut self, first_row: usize, last_row: usize, last_col: usize) {
        for i in first_row..=last_row {
            for j in self.settled[i]..=last_col {
                self.zero_if_unset(i, j);
            }
            self.settled[i] = self.settled[i].max(last_col + 1);
        }
    }

    /// Handles every pending entry whose residual rank is 0.
    fn flush_exhausted(&mut self, cursor_row: usize) {
        let mut k = 0;
        while k < self.pending.len() {
            let (p, rank) = self.pending[k];
            if rank == 0 {
                self.pending.swap_remove(k);
                let (r, c) = p.zero_based();
                if r >= cursor_row {
                    self.zero_rectangle(cursor_row, r, c);
                }
            } else {
                k += 1;
            }
        }
    }

    fn place_one(&mut self, row: usize, col: usize) -> Result<()> {
        self.write(row, col, Cell::One);
        self.row_need[row] -= 1;
        self.col_need[col] -= 1;
        let here = Position::from_zero(row, col);
        for (p, rank) in &mut self.pending {
            if here.precedes(*p) {
                *rank = rank.checked_sub(1).ok_or(Error::InfeasibleNegativeRank {
                    row: p.row,
                    col: p.col,
                })?;
            }
        }
        self.flush_exhausted(row);
        if self.row_need[row] == 0 {
            for j in col + 1..self.cols {
                self.zero_if_unset(row, j);
            }
        }
        if self.col_need[col] == 0 {
            for i in row + 1..self.rows {
                self.zero_if_unset(i, col);
            }
        }
        Ok(())
    }

    fn to_matrix(&self) -> BinaryMatrix {
        BinaryMatrix::from_fn(self.rows, self.cols, |i, j| self.cell(i, j) == Cell::One)
    }
}

/// One step of a recorded reconstruction: the grid right after a 1 was placed.
#[derive(Debug, Clone)]
pub struct TraceFrame {
    pub placed: Position,
    pub state: ReconstructionState,
}

/// Result of [`reconstruct_detailed`].
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub matrix: BinaryMatrix,
    /// Number of cell assignments made; never exceeds `m * n`.
    pub cell_writes: usize,
    pub trace: Vec<TraceFrame>,
}

fn check_positive_margins(margins: &MarginPair) -> Result<()> {
    margins.validate()?;
    if margins.has_zero_line() {
        return Err(Error::BadInput(
            "margins contain a zero row or column".into(),
        ));
    }
    Ok(())
}

/// The unique convex matrix with the given margins and ranked essential set.
pub fn reconstruct(margins: &MarginPair, res: &RankedEssentialSet) -> Result<BinaryMatrix> {
    reconstruct_detailed(margins, res, false).map(|r| r.matrix)
}

/// Like [`reconstruct`], also reporting the write count and, when
/// `keep_trace` is set, a snapshot after every placed 1.
pub fn reconstruct_detailed(
    margins: &MarginPair,
    res: &RankedEssentialSet,
    keep_trace: bool,
) -> Result<Reconstruction> {
    check_positive_margins(margins)?;
    let (m, n) = (margins.rows(), margins.cols());
    res.check_shape(m, n)
        .map_err(|e| Error::BadInput(e.to_string()))?;

    let mut state = ReconstructionState::new(margins, res);
    let mut trace = Vec::new();
    state.flush_exhausted(0);
    for i in 0..m {
        for j in 0..n {
            if state.cell(i, j) != Cell::Unset {
                continue;
            }
            state.place_one(i, j)?;
            if keep_trace {
                trace.push(TraceFrame {
                    placed: Position::from_zero(i, j),
                    state: state.clone(),
                });
            }
        }
    }

    let matrix = state.to_matrix();
    if matrix.margins() != *margins {
        return Err(Error::InfeasibleInconsistent(
            "the filled matrix does not meet the margins".into(),
        ));
    }
    if !matrix.is_convex() {
        return Err(Error::InfeasibleInconsistent(
            "the filled matrix is not convex".into(),
        ));
    }
    if ranked_essential_set(&matrix) != *res {
        return Err(Error::InfeasibleInconsistent(
            "the filled matrix has a different ranked essential set".into(),
        ));
    }
    Ok(Reconstruction {
        matrix,
        cell_writes: state.writes,
        trace,
    })
}

/// The unique convex matrix with the given margins that has a source of
/// type `corner`.
pub fn reconstruct_directed(margins: &MarginPair, corner: Direction) -> Result<BinaryMatrix> {
    check_positive_margins(margins)?;
    let turns = corner.turns_to_se();
    let rotated = margins.rotated(turns);
    let infeasible = || {
        Error::Infeasible(format!(
            "no convex matrix with margins {margins} has a {corner}-source"
        ))
    };
    let a = greedy_se(&rotated).ok_or_else(infeasible)?.rotate(-turns);
    let ok = a.margins() == *margins && a.is_convex() && a.sources().get(corner).is_some();
    if ok {
        Ok(a)
    } else {
        Err(infeasible())
    }
}

/// Row-by-row placement for an SE-source at the top-left corner. Each row
/// must start at the leftmost column still short of its sum, must cover
/// every such column, and may not reuse a finished column.
fn greedy_se(margins: &MarginPair) -> Option<BinaryMatrix> {
    let (m, n) = (margins.rows(), margins.cols());
    let mut count = vec![0usize; n];
    let mut started = 0; // columns 0..started have received a 1
    let mut cells = vec![false; m * n];
    for (i, &r) in margins.row_sums.iter().enumerate() {
        let active = (0..started).filter(|&j| count[j] < margins.col_sums[j]);
        let (lo, hi) = match active.clone().min() {
            Some(lo) => (lo, active.max().unwrap_or(lo)),
            None if i == 0 => (0, 0),
            None => return None,
        };
        let end = lo + r;
        if end > n || hi >= end {
            return None;
        }
        if (lo..end.min(started)).any(|j| count[j] == margins.col_sums[j]) {
            return None;
        }
        for j in lo..end {
            count[j] += 1;
            cells[i * n + j] = true;
        }
        started = started.max(end);
    }
    BinaryMatrix::new(m, n, cells).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::RankedEssentialSet;

    fn mat(s: &str) -> BinaryMatrix {
        s.parse().unwrap()
    }

    fn margins(r: &[usize], s: &[usize]) -> MarginPair {
        MarginPair::new(r.to_vec(), s.to_vec())
    }

    fn res(t: &[(usize, usize, usize)]) -> RankedEssentialSet {
        RankedEssentialSet::from_triples(t).unwrap()
    }

    const A2: &str = "0011111\n0011000\n0011000\n0111000\n1110000\n1000000\n";

    #[test]
    fn polyomino_from_its_ranked_set() {
        let out = reconstruct(
            &margins(&[5, 2, 2, 3, 3, 1], &[2, 2, 5, 4, 1, 1, 1]),
            &res(&[(3, 2, 0), (4, 1, 0)]),
        )
        .unwrap();
        assert_eq!(out, mat(A2));
    }

    #[test]
    fn generalized_polyomino_fixture() {
        let expected =
            mat("00110000\n00010000\n00010000\n00000100\n00001100\n00000111\n01000000\n11000000\n");
        let out = reconstruct_detailed(
            &margins(&[2, 1, 1, 1, 2, 3, 1, 2], &[1, 2, 1, 3, 1, 3, 1, 1]),
            &res(&[(4, 5, 4), (6, 2, 0), (7, 1, 0)]),
            true,
        )
        .unwrap();
        assert_eq!(out.matrix, expected);
        assert!(out.cell_writes <= 64);
        assert_eq!(out.trace.len(), expected.count_ones());
    }

    #[test]
    fn identity_from_empty_set() {
        for n in 1..6 {
            let ones = vec![1; n];
            let out = reconstruct(&margins(&ones, &ones), &RankedEssentialSet::new()).unwrap();
            assert_eq!(out, BinaryMatrix::identity(n));
        }
    }

    #[test]
    fn impossible_rank_is_infeasible() {
        let err = reconstruct(&margins(&[2, 2], &[2, 2]), &res(&[(1, 1, 1)])).unwrap_err();
        assert!(err.is_infeasible(), "{err}");
    }

    #[test]
    fn bad_margins_rejected() {
        let empty = RankedEssentialSet::new();
        assert!(matches!(
            reconstruct(&margins(&[1, 0], &[1, 0]), &empty),
            Err(Error::BadInput(_))
        ));
        assert!(matches!(
            reconstruct(&margins(&[1, 1], &[1]), &empty),
            Err(Error::BadInput(_))
        ));
        assert!(matches!(
            reconstruct(&margins(&[1], &[1]), &res(&[(2, 1, 0)])),
            Err(Error::BadInput(_))
        ));
    }

    #[test]
    fn writes_each_cell_once() {
        let a = mat(A2);
        let out = reconstruct_detailed(&a.margins(), &ranked_essential_set(&a), false).unwrap();
        assert_eq!(out.cell_writes, 42);
    }

    #[test]
    fn directed_from_nw_source() {
        let expected = mat("00100\n01110\n11110\n00111\n00001\n");
        let mp = margins(&[1, 3, 4, 3, 1], &[1, 2, 4, 3, 2]);
        assert_eq!(expected.margins(), mp);
        assert_eq!(reconstruct_directed(&mp, Direction::NW).unwrap(), expected);
        assert!(matches!(
            reconstruct_directed(&mp, Direction::SE),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn single_row_any_corner() {
        let mp = margins(&[4], &[1, 1, 1, 1]);
        for dir in Direction::ALL {
            assert_eq!(
                reconstruct_directed(&mp, dir).unwrap(),
                BinaryMatrix::ones(1, 4)
            );
        }
    }

    #[test]
    fn directed_matches_every_rotation_of_a_staircase() {
        let a = mat("1100\n0110\n0011\n");
        for turns in 0..4 {
            let b = a.rotate(turns);
            for (d, _) in b.sources().iter() {
                assert_eq!(reconstruct_directed(&b.margins(), d).unwrap(), b);
            }
        }
    }
}
