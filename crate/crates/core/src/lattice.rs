//! The lattice of `m x n` convex matrices under the entrywise order.

use crate::diagram::full_essential_set;
use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, Direction, Position};
use crate::oracle::{enumerate_all, DEFAULT_SWEEP_CAP};

fn require_convex(a: &BinaryMatrix, what: &str) -> Result<()> {
    if a.is_convex() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!("{what} is not convex")))
    }
}

/// Greatest lower bound: the entrywise AND.
pub fn meet(c1: &BinaryMatrix, c2: &BinaryMatrix) -> Result<BinaryMatrix> {
    require_convex(c1, "first operand")?;
    require_convex(c2, "second operand")?;
    c1.and(c2)
}

/// Least upper bound: the convex hull of the entrywise OR.
pub fn join(c1: &BinaryMatrix, c2: &BinaryMatrix) -> Result<BinaryMatrix> {
    require_convex(c1, "first operand")?;
    require_convex(c2, "second operand")?;
    Ok(convex_hull(&c1.or(c2)?))
}

/// Fills every 0 lying between two 1s of its row, then of its column,
/// until nothing changes.
pub fn convex_hull(a: &BinaryMatrix) -> BinaryMatrix {
    let (m, n) = a.shape();
    let mut h = a.clone();
    loop {
        let mut changed = false;
        for i in 0..m {
            let support = h.row_support(i);
            if let (Some(&lo), Some(&hi)) = (support.first(), support.last()) {
                for j in lo - 1..hi {
                    changed |= !h.get(i, j);
                    h.set(i, j, true);
                }
            }
        }
        for j in 0..n {
            let support = h.col_support(j);
            if let (Some(&lo), Some(&hi)) = (support.first(), support.last()) {
                for i in lo - 1..hi {
                    changed |= !h.get(i, j);
                    h.set(i, j, true);
                }
            }
        }
        if !changed {
            return h;
        }
    }
}

/// A 0 whose flip to 1 gives a convex matrix covering the original, with
/// the directional essential sets that contain it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverStep {
    pub position: Position,
    pub direction_tags: Vec<Direction>,
}

/// The upper covers of `c`, one per position of its combined essential set.
pub fn covers(c: &BinaryMatrix) -> Result<Vec<CoverStep>> {
    require_convex(c, "matrix")?;
    Ok(full_essential_set(c)
        .into_iter()
        .map(|t| CoverStep {
            position: t.position,
            direction_tags: t.directions,
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainDirection {
    /// Towards the all-ones matrix.
    Up,
    /// Towards the zero matrix.
    Down,
}

/// A saturated chain from `c` to `J` (up) or to `O` (down), starting with `c`.
///
/// Going up, each step flips the first 0 in row-major order whose flip
/// keeps the matrix convex. This is checked directly rather than read off
/// [`covers`], since a disconnected matrix can have covers outside its
/// combined essential set. Going down, each step clears the first 1 in row-major order; it
/// is the leftmost 1 of its row and the topmost of its column, so the
/// result stays convex.
pub fn maximal_chain(c: &BinaryMatrix, direction: ChainDirection) -> Result<Vec<BinaryMatrix>> {
    require_convex(c, "matrix")?;
    let (m, n) = c.shape();
    let mut chain = vec![c.clone()];
    let mut cur = c.clone();
    loop {
        let next = match direction {
            ChainDirection::Up => (0..m * n)
                .map(|k| Position::from_zero(k / n, k % n))
                .filter(|&p| !cur.at(p))
                .map(|p| cur.with_entry(p, true))
                .find(BinaryMatrix::is_convex),
            ChainDirection::Down => cur
                .ones_positions()
                .next()
                .map(|p| cur.with_entry(p, false)),
        };
        match next {
            Some(b) => {
                chain.push(b.clone());
                cur = b;
            }
            None => return Ok(chain),
        }
    }
}

/// Convex `(c1, c2, c3)` with `c1 v (c2 ^ c3) != (c1 v c2) ^ (c1 v c3)`,
/// searched exhaustively in enumeration order.
pub fn distributivity_witness(
    m: usize,
    n: usize,
) -> Result<Option<(BinaryMatrix, BinaryMatrix, BinaryMatrix)>> {
    let convex: Vec<BinaryMatrix> =
        enumerate_all(m, n, DEFAULT_SWEEP_CAP, BinaryMatrix::is_convex)?.collect();
    for c1 in &convex {
        for c2 in &convex {
            for c3 in &convex {
                let lhs = join(c1, &meet(c2, c3)?)?;
                let rhs = meet(&join(c1, c2)?, &join(c1, c3)?)?;
                if lhs != rhs {
                    return Ok(Some((c1.clone(), c2.clone(), c3.clone())));
                }
            }
        }
    }
    Ok(None)
}
