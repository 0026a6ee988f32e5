//! ASCII grids in the style of the shaded figures: one glyph per cell.

use std::fmt;

use convexmat::{
    diagram, essential_set, full_essential_set, BinaryMatrix, Cell, Direction, ReconstructionState,
};

/// What to draw over the entries of a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Overlay {
    /// Plain `1`/`0` entries; parses back to the same matrix.
    None,
    /// `#` on every shaded cell, `0` on the unshaded cells of the diagram.
    Diagram,
    /// `*` on the SE essential positions.
    SeEssential,
    /// The letter of one direction on its essential positions.
    Essential(Direction),
    /// Letters for all four directional essential sets.
    EssentialAll,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedGrid {
    pub lines: Vec<String>,
    pub legend: Vec<String>,
}

impl fmt::Display for RenderedGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Letter marking a directional essential set: `a` SE, `b` NE, `c` NW, `d` SW.
pub fn direction_letter(dir: Direction) -> char {
    match dir {
        Direction::SE => 'a',
        Direction::NE => 'b',
        Direction::NW => 'c',
        Direction::SW => 'd',
    }
}

fn entry_glyph(b: bool) -> char {
    if b {
        '1'
    } else {
        '0'
    }
}

fn grid_from(rows: usize, cols: usize, glyph: impl Fn(usize, usize) -> char) -> Vec<String> {
    (0..rows)
        .map(|i| (0..cols).map(|j| glyph(i, j)).collect())
        .collect()
}

pub fn render(a: &BinaryMatrix, overlay: Overlay) -> RenderedGrid {
    let (m, n) = a.shape();
    let mut grid: Vec<Vec<char>> = grid_from(m, n, |i, j| entry_glyph(a.get(i, j)))
        .into_iter()
        .map(|s| s.chars().collect())
        .collect();
    let mut legend = vec!["1 = one".to_string(), "0 = zero".to_string()];
    let mark = |dir: Direction, glyph: char, grid: &mut Vec<Vec<char>>| {
        for p in essential_set(a, dir) {
            let (i, j) = p.zero_based();
            if grid[i][j] == '0' {
                grid[i][j] = glyph;
            }
        }
    };
    match overlay {
        Overlay::None => {}
        Overlay::Diagram => {
            let d = diagram(a);
            for (i, row) in grid.iter_mut().enumerate() {
                for (j, g) in row.iter_mut().enumerate() {
                    *g = if d.is_unshaded(i, j) { '0' } else { '#' };
                }
            }
            legend = vec![
                "# = shaded".to_string(),
                "0 = unshaded (the diagram)".to_string(),
            ];
        }
        Overlay::SeEssential => {
            mark(Direction::SE, '*', &mut grid);
            legend.push("* = SE essential position".to_string());
        }
        Overlay::Essential(dir) => {
            let letter = direction_letter(dir);
            mark(dir, letter, &mut grid);
            legend.push(format!("{letter} = {dir} essential position"));
        }
        Overlay::EssentialAll => {
            for tagged in full_essential_set(a) {
                let (i, j) = tagged.position.zero_based();
                grid[i][j] = direction_letter(tagged.directions[0]);
            }
            for dir in Direction::ALL {
                legend.push(format!(
                    "{} = {dir} essential position",
                    direction_letter(dir)
                ));
            }
        }
    }
    RenderedGrid {
        lines: grid.into_iter().map(String::from_iter).collect(),
        legend,
    }
}

/// A partially filled matrix, with `.` on cells not yet decided.
pub fn render_state(state: &ReconstructionState) -> RenderedGrid {
    let (m, n) = state.shape();
    RenderedGrid {
        lines: grid_from(m, n, |i, j| match state.cell(i, j) {
            Cell::Unset => '.',
            Cell::Zero => '0',
            Cell::One => '1',
        }),
        legend: vec![
            "1 = one".to_string(),
            "0 = zero".to_string(),
            ". = unset".to_string(),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(s: &str) -> BinaryMatrix {
        s.parse().unwrap()
    }

    fn count(g: &RenderedGrid, ch: char) -> usize {
        g.lines.iter().map(|l| l.matches(ch).count()).sum()
    }

    #[test]
    fn plain_identity() {
        assert_eq!(
            render(&BinaryMatrix::identity(2), Overlay::None).to_string(),
            "10\n01\n"
        );
    }

    #[test]
    fn plain_roundtrips() {
        let a = mat("0110\n1100\n0001");
        let text = render(&a, Overlay::None).to_string();
        assert_eq!(text.parse::<BinaryMatrix>().unwrap(), a);
    }

    #[test]
    fn essential_letters() {
        let c = mat("000111\n001110\n001100\n011100\n111000\n001000\n");
        let g = render(&c, Overlay::EssentialAll);
        assert_eq!(
            (
                count(&g, 'a'),
                count(&g, 'b'),
                count(&g, 'c'),
                count(&g, 'd')
            ),
            (3, 1, 3, 0)
        );
        assert_eq!(g.lines[0], "00a111");
    }

    #[test]
    fn diagram_of_polyomino() {
        let a2 = mat("0011111\n0011000\n0011000\n0111000\n1110000\n1000000\n");
        let g = render(&a2, Overlay::Diagram);
        assert_eq!(count(&g, '0'), 7);
        assert_eq!(g.lines[0], "00#####");
        assert_eq!(g.lines[3], "0######");
        assert_eq!(g.lines[4], "#######");
        let star = render(&a2, Overlay::SeEssential);
        assert_eq!(count(&star, '*'), 2);
        assert_eq!(star.lines[3], "*111000");
        assert_eq!(star.lines[2], "0*11000");
    }
}
