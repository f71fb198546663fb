//! Good paths and the constructive finder.
//!
//! A path crosses the matrix from the left border to the right border,
//! moving either one cell right in its row or jumping to an equally
//! colored cell. It is *good* (with respect to a run cap) when no run of
//! consecutive right moves reaches the cap and no jump enters a row the
//! path has already visited.
//!
//! The finder follows the contamination argument: dirty the rows that
//! could strand the path, start in a clean row, and spend exactly one
//! jump per multicolumn, always jumping to a clean unvisited brother of
//! the current row. Clean rows keep at least `s_ceil` clean brothers, of
//! which at most one per earlier multicolumn is already visited, so a
//! fresh target always exists for matrices of the intended shape.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::contaminate::{contaminate_all_with, s_ceil, split_multicolumns};
use crate::matrix::{validate_painting, PaintedMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Right,
    Jump,
}

/// A path through a painted matrix: `cells[s]` to `cells[s+1]` is
/// explained by `moves[s]`. Cells are 1-based `(row, col)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPath {
    pub cells: Vec<(u32, u32)>,
    pub moves: Vec<Move>,
}

impl GoodPath {
    /// Rows in visit order, one entry per jump-free stretch.
    pub fn row_sequence(&self) -> Vec<u32> {
        let mut rows = Vec::new();
        for (s, &(row, _)) in self.cells.iter().enumerate() {
            if s == 0 || self.moves[s - 1] == Move::Jump {
                rows.push(row);
            }
        }
        rows
    }

    /// Lengths of the jump-free stretches, in cells.
    pub fn stretch_lengths(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut len = 0u32;
        for s in 0..self.cells.len() {
            len += 1;
            let ends = s == self.cells.len() - 1 || self.moves[s] == Move::Jump;
            if ends {
                out.push(len);
                len = 0;
            }
        }
        out
    }
}

impl fmt::Display for GoodPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, (row, col)) in self.cells.iter().enumerate() {
            if s > 0 {
                match self.moves[s - 1] {
                    Move::Right => write!(f, " R ")?,
                    Move::Jump => write!(f, " J ")?,
                }
            }
            write!(f, "({row},{col})")?;
        }
        Ok(())
    }
}

/// Checks that `p` is a good path on `m` with run cap `max_run`: borders,
/// move legality, no `max_run` consecutive right moves, jumps only to
/// unvisited rows — and the resulting bound of at most `max_run` cells
/// per row.
pub fn validate_good_path(m: &PaintedMatrix, p: &GoodPath, max_run: u32) -> bool {
    if p.cells.is_empty() || p.moves.len() + 1 != p.cells.len() {
        return false;
    }
    if p.cells[0].1 != 1 || p.cells[p.cells.len() - 1].1 != m.cols() {
        return false;
    }
    if p.cells.iter().any(|&(r, c)| r < 1 || r > m.rows() || c < 1 || c > m.cols()) {
        return false;
    }
    let mut visited = BTreeSet::from([p.cells[0].0]);
    let mut run = 0u32;
    let mut per_row = vec![0u32; m.rows() as usize + 1];
    per_row[p.cells[0].0 as usize] = 1;
    for s in 0..p.moves.len() {
        let (r, c) = p.cells[s];
        let (nr, nc) = p.cells[s + 1];
        match p.moves[s] {
            Move::Right => {
                if nr != r || nc != c + 1 {
                    return false;
                }
                run += 1;
                if run >= max_run {
                    return false;
                }
            }
            Move::Jump => {
                if m.color(nr, nc) != m.color(r, c) || !visited.insert(nr) {
                    return false;
                }
                run = 0;
            }
        }
        per_row[nr as usize] += 1;
        if per_row[nr as usize] > max_run {
            return false;
        }
    }
    true
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("the painting violates its declared invariants")]
    InvalidPainting,
    #[error("every row is dirty in the first multicolumn")]
    NoCleanRow,
    #[error("no jump target from row {row} in multicolumn {multicolumn}")]
    NoJump { multicolumn: usize, row: u32 },
    #[error("constructed path failed validation (defect)")]
    NotGood,
}

/// Finder with explicit threshold and run cap, for generalized (small)
/// instances. Fails honestly when the contamination guarantees do not
/// hold; on matrices of the intended shape it always succeeds.
pub fn find_good_path_with(
    m: &PaintedMatrix,
    s_ceil: u32,
    max_run: u32,
) -> Result<GoodPath, PathError> {
    let state = contaminate_all_with(m, s_ceil);
    let ranges = split_multicolumns(m);
    let multis = ranges.len() - 1;

    let row = *state.clean_rows(m.rows()).first().ok_or(PathError::NoCleanRow)?;
    let mut path = GoodPath { cells: vec![(row, 1)], moves: Vec::new() };
    let mut visited = BTreeSet::from([row]);
    let (mut row, mut col) = (row, 1u32);

    let right_to = |path: &mut GoodPath, row: u32, from: u32, to: u32| {
        for c in from + 1..=to {
            path.cells.push((row, c));
            path.moves.push(Move::Right);
        }
    };

    for (i, &range) in ranges.iter().take(multis).enumerate() {
        // Jump inside multicolumn i: first-fit over the jump-source
        // column, then the lowest clean unvisited target row, then the
        // highest matching target column (landing late shortens the next
        // right-run and can never hurt).
        let dirty = &state.dirty[i];
        let mut jump = None;
        'search: for c1 in range.0.max(col)..=range.1 {
            let color = m.color(row, c1);
            for r2 in 1..=m.rows() {
                if r2 == row || dirty.contains(&r2) || visited.contains(&r2) {
                    continue;
                }
                for c2 in (range.0..=range.1).rev() {
                    if m.color(r2, c2) == color {
                        jump = Some((c1, r2, c2));
                        break 'search;
                    }
                }
            }
        }
        let (c1, r2, c2) = jump.ok_or(PathError::NoJump { multicolumn: i, row })?;
        right_to(&mut path, row, col, c1);
        path.cells.push((r2, c2));
        path.moves.push(Move::Jump);
        visited.insert(r2);
        (row, col) = (r2, c2);
    }

    right_to(&mut path, row, col, m.cols());
    if !validate_good_path(m, &path, max_run) {
        return Err(PathError::NotGood);
    }
    Ok(path)
}

/// Finder for matrices of the intended shape: threshold from the row
/// count, run cap equal to the row count.
pub fn find_good_path(m: &PaintedMatrix) -> Result<GoodPath, PathError> {
    if !validate_painting(m) {
        return Err(PathError::InvalidPainting);
    }
    find_good_path_with(m, s_ceil(m.rows()), m.rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: u32, cols: u32, palette: u32, d: u32, colors: Vec<u32>) -> PaintedMatrix {
        PaintedMatrix::new(rows, cols, palette, d, colors).unwrap()
    }

    #[test]
    fn straight_path_without_multicolumns() {
        // 4 rows, 1 column: no multicolumn, path is a single cell.
        let m = matrix(4, 1, 4, 1, vec![0, 1, 2, 3]);
        let p = find_good_path(&m).unwrap();
        assert_eq!(p.cells, vec![(1, 1)]);
        assert!(validate_good_path(&m, &p, 4));

        // 8 rows, 3 columns: still no multicolumn, straight right moves.
        let m = matrix(8, 3, 8, 1, (0..24).map(|i| i / 3).collect());
        let p = find_good_path(&m).unwrap();
        assert_eq!(p.cells, vec![(1, 1), (1, 2), (1, 3)]);
        assert_eq!(p.moves, vec![Move::Right, Move::Right]);
    }

    #[test]
    fn single_row_straight_path_validates() {
        let m = matrix(1, 3, 3, 3, vec![0, 1, 2]);
        let p = GoodPath {
            cells: vec![(1, 1), (1, 2), (1, 3)],
            moves: vec![Move::Right, Move::Right],
        };
        assert!(validate_good_path(&m, &p, 4));
        assert!(!validate_good_path(&m, &p, 2), "two consecutive rights reach cap 2");
    }

    #[test]
    fn jump_to_visited_row_is_rejected() {
        let m = matrix(2, 2, 2, 1, vec![0, 1, 1, 0]);
        // Every move is individually legal and the borders line up; only
        // the second jump, back into row 1, breaks goodness.
        let p = GoodPath {
            cells: vec![(1, 1), (1, 2), (2, 1), (2, 2), (1, 1), (1, 2)],
            moves: vec![Move::Right, Move::Jump, Move::Right, Move::Jump, Move::Right],
        };
        assert!(!validate_good_path(&m, &p, 9));
        // The same shape jumping into a third row instead would be fine.
        let m3 = matrix(3, 2, 2, 1, vec![0, 1, 1, 0, 0, 1]);
        let ok = GoodPath {
            cells: vec![(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)],
            moves: vec![Move::Right, Move::Jump, Move::Right, Move::Jump, Move::Right],
        };
        assert!(validate_good_path(&m3, &ok, 9));
    }

    #[test]
    fn validator_checks_colors_and_borders() {
        let m = matrix(2, 2, 4, 1, vec![0, 1, 2, 3]);
        let bad_jump = GoodPath {
            cells: vec![(1, 1), (2, 2)],
            moves: vec![Move::Jump],
        };
        assert!(!validate_good_path(&m, &bad_jump, 9), "jump without color match");
        let short = GoodPath { cells: vec![(1, 1), (1, 2)], moves: vec![Move::Right] };
        assert!(validate_good_path(&m, &short, 9));
        let not_border = GoodPath { cells: vec![(1, 2)], moves: vec![] };
        assert!(!validate_good_path(&m, &not_border, 9));
    }

    #[test]
    fn finder_spends_one_jump_per_multicolumn() {
        // 4 rows -> width 2; 6 cols -> ranges [1,2][3,4][5,6], two
        // multicolumns. Paint so every pair of rows shares colors in every
        // range: column-constant colors.
        let colors: Vec<u32> = (0..4).flat_map(|_| (0..6).collect::<Vec<u32>>()).collect();
        let m = matrix(4, 6, 6, 1, colors);
        let p = find_good_path_with(&m, 1, 4).unwrap();
        assert!(validate_good_path(&m, &p, 4));
        let jumps = p.moves.iter().filter(|&&mv| mv == Move::Jump).count();
        assert_eq!(jumps, 2);
        assert_eq!(p.row_sequence().len(), 3);
    }

    #[test]
    fn finder_reports_missing_jump() {
        // Rows pairwise disjoint everywhere: contamination dirties all
        // rows, so the finder cannot even start.
        let colors: Vec<u32> = (0..4u32)
            .flat_map(|r| (0..4u32).map(move |c| 4 * r + c))
            .collect();
        let m = matrix(4, 4, 16, 1, colors);
        assert_eq!(find_good_path_with(&m, 1, 4).unwrap_err(), PathError::NoCleanRow);
    }

    #[test]
    fn stretch_accessors() {
        let p = GoodPath {
            cells: vec![(1, 1), (1, 2), (3, 1), (3, 2), (3, 3)],
            moves: vec![Move::Right, Move::Jump, Move::Right, Move::Right],
        };
        assert_eq!(p.row_sequence(), vec![1, 3]);
        assert_eq!(p.stretch_lengths(), vec![2, 3]);
        assert_eq!(p.to_string(), "(1,1) R (1,2) J (3,1) R (3,2) R (3,3)");
    }
}
