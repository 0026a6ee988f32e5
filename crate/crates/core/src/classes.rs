//! Margin classes `A(R,S)` and their convex members `C(R,S)`: exhaustive
//! enumeration, nonemptiness tests for structured margins, and the Ferrers
//! and Ferrers-convex constructions.

use std::collections::HashMap;

use itertools::Itertools;

use crate::diagram::FerrersShape;
use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, MarginPair};

/// Default cell budget for [`enumerate_class`].
pub const DEFAULT_CLASS_CAP: usize = 25;

/// Candidate supports (0-based column lists) for a row with `r` ones.
fn row_candidates(r: usize, n: usize, convex_only: bool) -> Vec<Vec<usize>> {
    if r > n {
        return Vec::new();
    }
    if convex_only {
        if r == 0 {
            return vec![Vec::new()];
        }
        (0..=n - r).map(|a| (a..a + r).collect()).collect()
    } else {
        (0..n).combinations(r).collect()
    }
}

/// Whether some matrix has row sums `rows` and column sums `cols`.
pub fn gale_ryser(rows: &[usize], cols: &[usize]) -> bool {
    if rows.iter().sum::<usize>() != cols.iter().sum::<usize>() {
        return false;
    }
    let mut sorted = cols.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut prefix = 0;
    for (k, s) in sorted.iter().enumerate() {
        prefix += s;
        let capacity: usize = rows.iter().map(|&r| r.min(k + 1)).sum();
        if prefix > capacity {
            return false;
        }
    }
    true
}

struct ClassSearch<'a> {
    margins: &'a MarginPair,
    convex_only: bool,
    candidates: Vec<Vec<Vec<usize>>>,
}

impl<'a> ClassSearch<'a> {
    fn new(margins: &'a MarginPair, convex_only: bool) -> Self {
        let n = margins.cols();
        let candidates = margins
            .row_sums
            .iter()
            .map(|&r| row_candidates(r, n, convex_only))
            .collect();
        Self {
            margins,
            convex_only,
            candidates,
        }
    }

    /// Whether `support` may be row `row` given the residual column sums.
    fn admissible(&self, row: usize, need: &[usize], support: &[usize]) -> bool {
        let rows_left = self.margins.rows() - row - 1;
        let mut it = support.iter().peekable();
        for (j, (&nd, &s)) in need.iter().zip(&self.margins.col_sums).enumerate() {
            let used = it.next_if_eq(&&j).is_some();
            if used && nd == 0 {
                return false;
            }
            // a started, unfinished column must continue in this row
            if self.convex_only && !used && nd > 0 && nd < s {
                return false;
            }
            if nd - usize::from(used) > rows_left {
                return false;
            }
        }
        true
    }

    fn feasible_rest(&self, row: usize, need: &[usize]) -> bool {
        self.convex_only || gale_ryser(&self.margins.row_sums[row..], need)
    }

    fn enumerate(
        &self,
        row: usize,
        need: &mut Vec<usize>,
        acc: &mut Vec<bool>,
        out: &mut Vec<BinaryMatrix>,
    ) {
        let (m, n) = (self.margins.rows(), self.margins.cols());
        if row == m {
            if need.iter().all(|&x| x == 0) {
                out.extend(BinaryMatrix::new(m, n, acc.clone()));
            }
            return;
        }
        if !self.feasible_rest(row, need) {
            return;
        }
        for support in &self.candidates[row] {
            if !self.admissible(row, need, support) {
                continue;
            }
            let mut line = vec![false; n];
            for &j in support {
                line[j] = true;
                need[j] -= 1;
            }
            acc.extend_from_slice(&line);
            self.enumerate(row + 1, need, acc, out);
            acc.truncate(acc.len() - n);
            for &j in support {
                need[j] += 1;
            }
        }
    }

    fn exists(
        &self,
        row: usize,
        need: &mut Vec<usize>,
        memo: &mut HashMap<(usize, Vec<usize>), bool>,
    ) -> bool {
        if row == self.margins.rows() {
            return need.iter().all(|&x| x == 0);
        }
        if let Some(&known) = memo.get(&(row, need.clone())) {
            return known;
        }
        let mut found = self.feasible_rest(row, need);
        if found {
            found = false;
            for support in &self.candidates[row] {
                if !self.admissible(row, need, support) {
                    continue;
                }
                for &j in support {
                    need[j] -= 1;
                }
                found = self.exists(row + 1, need, memo);
                for &j in support {
                    need[j] += 1;
                }
                if found {
                    break;
                }
            }
        }
        memo.insert((row, need.clone()), found);
        found
    }
}

fn check_nonempty_shape(margins: &MarginPair) -> Result<()> {
    if margins.rows() == 0 || margins.cols() == 0 {
        return Err(Error::EmptyMatrix {
            rows: margins.rows(),
            cols: margins.cols(),
        });
    }
    Ok(())
}

/// Every matrix with the given margins (only the convex ones when
/// `convex_only`), in ascending order of the row-major bit string.
pub fn enumerate_class(
    margins: &MarginPair,
    convex_only: bool,
    cap: usize,
) -> Result<Vec<BinaryMatrix>> {
    check_nonempty_shape(margins)?;
    let cells = margins.rows() * margins.cols();
    if cells > cap {
        return Err(Error::SizeExceeded { cells, cap });
    }
    let search = ClassSearch::new(margins, convex_only);
    let mut out = Vec::new();
    search.enumerate(
        0,
        &mut margins.col_sums.clone(),
        &mut Vec::with_capacity(cells),
        &mut out,
    );
    out.sort_unstable();
    Ok(out)
}

/// Whether the class is nonempty, by memoized exhaustive search; usable well
/// beyond the enumeration cap when the row sums are small.
pub fn class_nonempty(margins: &MarginPair, convex_only: bool) -> Result<bool> {
    check_nonempty_shape(margins)?;
    let search = ClassSearch::new(margins, convex_only);
    Ok(search.exists(0, &mut margins.col_sums.clone(), &mut HashMap::new()))
}

/// Whether `m` rows with a single 1 each can realize column sums `col_sums`.
pub fn unit_rows_nonempty(m: usize, col_sums: &[usize]) -> bool {
    m > 0 && !col_sums.is_empty() && col_sums.iter().sum::<usize>() == m
}

/// The staircase member of `C(e, S)`: the first `s_1` rows use column 1,
/// the next `s_2` rows column 2, and so on.
pub fn unit_rows_witness(m: usize, col_sums: &[usize]) -> Option<BinaryMatrix> {
    if !unit_rows_nonempty(m, col_sums) {
        return None;
    }
    let cols: Vec<usize> = col_sums
        .iter()
        .enumerate()
        .flat_map(|(j, &s)| std::iter::repeat_n(j, s))
        .collect();
    Some(BinaryMatrix::from_fn(m, col_sums.len(), |i, j| {
        cols[i] == j
    }))
}

/// Counts `k_1..k_{n-1}` of rows whose two consecutive 1s start in column `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseProfile {
    pub k: Vec<usize>,
}

impl StaircaseProfile {
    /// Number of rows described.
    pub fn rows(&self) -> usize {
        self.k.iter().sum()
    }
}

/// The profile witnessing `C(2e, S) != {}`, if the class is nonempty.
pub fn two_regular_profile(col_sums: &[usize]) -> Option<StaircaseProfile> {
    let (&last, init) = col_sums.split_last()?;
    if init.is_empty() {
        return None;
    }
    let mut k = Vec::with_capacity(init.len());
    let mut prev = 0usize;
    for &s in init {
        prev = s.checked_sub(prev)?;
        k.push(prev);
    }
    let profile = StaircaseProfile { k };
    (prev == last && profile.rows() > 0).then_some(profile)
}

/// Stacks `k_j` rows whose run of `width` ones starts in column `j`.
pub fn staircase_from_profile(profile: &StaircaseProfile, width: usize) -> Result<BinaryMatrix> {
    if width == 0 {
        return Err(Error::BadInput("row width must be positive".into()));
    }
    let m = profile.rows();
    let n = profile.k.len() + width - 1;
    if m == 0 || profile.k.is_empty() {
        return Err(Error::EmptyMatrix { rows: m, cols: n });
    }
    let starts: Vec<usize> = profile
        .k
        .iter()
        .enumerate()
        .flat_map(|(j, &c)| std::iter::repeat_n(j, c))
        .collect();
    Ok(BinaryMatrix::from_fn(m, n, |i, j| {
        (starts[i]..starts[i] + width).contains(&j)
    }))
}

/// Orders the rows of a row-convex matrix with constant row sums by the
/// column of their first 1, which makes it convex.
pub fn sort_rows_to_convex(a: &BinaryMatrix) -> Result<BinaryMatrix> {
    if !a.is_row_convex() {
        return Err(Error::PreconditionViolated("rows are not convex".into()));
    }
    let sums = a.row_sums();
    if sums[0] == 0 || sums.iter().any(|&r| r != sums[0]) {
        return Err(Error::PreconditionViolated(
            "row sums must be equal and positive".into(),
        ));
    }
    let order: Vec<usize> = (0..a.rows())
        .sorted_by_key(|&i| a.row_interval(i).map(|iv| iv.start()))
        .collect();
    Ok(BinaryMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        a.get(order[i], j)
    }))
}

/// The class `C_{m,n}(ke, le)`, which is nonempty exactly when
/// `m = pk` and `n = pl` for a positive integer `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockRegularClass {
    pub p: usize,
    pub k: usize,
    pub l: usize,
}

impl BlockRegularClass {
    /// `p!`, or `None` if it overflows.
    pub fn count(&self) -> Option<u128> {
        (1..=self.p as u128).try_fold(1u128, |acc, x| acc.checked_mul(x))
    }

    /// The members `P (x) J_{k,l}` for every permutation matrix `P` of order `p`.
    pub fn members(&self) -> impl Iterator<Item = BinaryMatrix> + '_ {
        let (p, k, l) = (self.p, self.k, self.l);
        (0..p)
            .permutations(p)
            .map(move |perm| BinaryMatrix::from_fn(p * k, p * l, |i, j| perm[i / k] == j / l))
    }
}

pub fn block_regular_class(m: usize, n: usize, k: usize, l: usize) -> Option<BlockRegularClass> {
    if k == 0
        || l == 0
        || m == 0
        || n == 0
        || !m.is_multiple_of(k)
        || !n.is_multiple_of(l)
        || m / k != n / l
    {
        return None;
    }
    Some(BlockRegularClass { p: m / k, k, l })
}

/// The `m x n` matrix whose row `i` holds `U_i` left-justified ones.
pub fn ferrers_matrix(shape: &FerrersShape, m: usize, n: usize) -> Result<BinaryMatrix> {
    let lengths = shape.row_lengths();
    let nonzero = lengths.iter().take_while(|&&u| u > 0).count();
    if m == 0 || n == 0 || nonzero > m || lengths.first().is_some_and(|&u| u > n) {
        return Err(Error::ShapeMismatch(format!(
            "Ferrers shape {lengths:?} does not fit in {m}x{n}"
        )));
    }
    Ok(BinaryMatrix::from_fn(m, n, |i, j| {
        lengths.get(i).is_some_and(|&u| j < u)
    }))
}

/// Row lengths of `a` when its 1s form a Ferrers array anchored top-left.
pub fn ferrers_shape_of(a: &BinaryMatrix) -> Option<FerrersShape> {
    let mut lengths = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let row = a.row(i);
        let len = row.iter().take_while(|&&b| b).count();
        if row[len..].iter().any(|&b| b) {
            return None;
        }
        lengths.push(len);
    }
    FerrersShape::new(lengths).ok()
}

/// Four Ferrers shapes and the block sizes of a Ferrers-convex matrix.
///
/// The top-left block is `U11` turned 180 degrees, the top-right block is
/// `U12` (drawn `n2 x m1`) turned 90 degrees counter-clockwise, the
/// bottom-left block is `U21` (drawn `n1 x m2`) turned 270 degrees and the
/// bottom-right block is `U22` as drawn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FerrersConvexSpec {
    pub m1: usize,
    pub m2: usize,
    pub n1: usize,
    pub n2: usize,
    pub u11: FerrersShape,
    pub u12: FerrersShape,
    pub u21: FerrersShape,
    pub u22: FerrersShape,
}

pub fn ferrers_convex(spec: &FerrersConvexSpec) -> Result<BinaryMatrix> {
    let &FerrersConvexSpec { m1, m2, n1, n2, .. } = spec;
    if [m1, m2, n1, n2].contains(&0) {
        return Err(Error::ShapeMismatch("block sizes must be positive".into()));
    }
    let a11 = ferrers_matrix(&spec.u11, m1, n1)?.rotate(2);
    let a12 = ferrers_matrix(&spec.u12, n2, m1)?.rotate(1);
    let a21 = ferrers_matrix(&spec.u21, n1, m2)?.rotate(3);
    let a22 = ferrers_matrix(&spec.u22, m2, n2)?;
    Ok(BinaryMatrix::from_fn(m1 + m2, n1 + n2, |i, j| {
        match (i < m1, j < n1) {
            (true, true) => a11.get(i, j),
            (true, false) => a12.get(i, j - n1),
            (false, true) => a21.get(i - m1, j),
            (false, false) => a22.get(i - m1, j - n1),
        }
    }))
}

/// A spec that assembles to `a`, trying every block split.
pub fn ferrers_convex_decompose(a: &BinaryMatrix) -> Option<FerrersConvexSpec> {
    let (m, n) = a.shape();
    for m1 in 1..m {
        for n1 in 1..n {
            let (m2, n2) = (m - m1, n - n1);
            let block = |r0, c0, r, c, undo: i32| {
                a.submatrix(r0, c0, r, c)
                    .ok()
                    .and_then(|b| ferrers_shape_of(&b.rotate(undo)))
            };
            let parts = (
                block(0, 0, m1, n1, 2),
                block(0, n1, m1, n2, 3),
                block(m1, 0, m2, n1, 1),
                block(m1, n1, m2, n2, 0),
            );
            if let (Some(u11), Some(u12), Some(u21), Some(u22)) = parts {
                return Some(FerrersConvexSpec {
                    m1,
                    m2,
                    n1,
                    n2,
                    u11,
                    u12,
                    u21,
                    u22,
                });
            }
        }
    }
    None
}

/// Nondecreasing then nonincreasing.
pub fn is_unimodal(v: &[usize]) -> bool {
    let rise = v.windows(2).take_while(|w| w[0] <= w[1]).count();
    v[rise..].windows(2).all(|w| w[0] >= w[1])
}
