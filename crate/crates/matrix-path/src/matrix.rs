//! Painted matrices: colored grids with a same-row minimum-distance
//! constraint on repeated colors.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("a matrix needs at least one row and one column")]
    EmptyShape,
    #[error("expected {expected} cells, got {got}")]
    WrongCellCount { expected: usize, got: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no painting exists for palette {palette} with distance {min_distance}")]
    Infeasible { palette: u32, min_distance: u32 },
    #[error("the painting violates its own distance or palette declaration")]
    InvalidPainting,
}

fn parse_err(line: usize, message: impl Into<String>) -> MatrixError {
    MatrixError::Parse { line, message: message.into() }
}

/// A `rows x cols` grid of color ids with a declared palette size and a
/// declared minimum distance `d`: a painting is valid when same-colored
/// cells in one row are at least `d` columns apart and every id is below
/// the palette size. Rows and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaintedMatrix {
    rows: u32,
    cols: u32,
    palette: u32,
    min_distance: u32,
    colors: Vec<u32>,
}

impl PaintedMatrix {
    /// `colors` is row-major with `rows * cols` entries. Only the shape is
    /// checked here; use [`validate_painting`] for the semantic invariants.
    pub fn new(
        rows: u32,
        cols: u32,
        palette: u32,
        min_distance: u32,
        colors: Vec<u32>,
    ) -> Result<PaintedMatrix, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::EmptyShape);
        }
        let expected = rows as usize * cols as usize;
        if colors.len() != expected {
            return Err(MatrixError::WrongCellCount { expected, got: colors.len() });
        }
        Ok(PaintedMatrix { rows, cols, palette, min_distance, colors })
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn min_distance(&self) -> u32 {
        self.min_distance
    }

    /// Color of the cell at `row`, `col` (both 1-based).
    pub fn color(&self, row: u32, col: u32) -> u32 {
        debug_assert!(1 <= row && row <= self.rows && 1 <= col && col <= self.cols);
        self.colors[(row as usize - 1) * self.cols as usize + (col as usize - 1)]
    }
}

/// True iff every color id is below the declared palette size and
/// same-colored cells within a row sit at column distance at least
/// `min_distance`.
pub fn validate_painting(m: &PaintedMatrix) -> bool {
    if m.colors.iter().any(|&c| c >= m.palette) {
        return false;
    }
    // Sized by the colors actually used, not the declared palette, so an
    // oversized header cannot force an oversized allocation.
    let width = m.colors.iter().max().copied().unwrap_or(0) as usize + 1;
    let mut last_seen = vec![0u32; width];
    for row in 1..=m.rows {
        last_seen.iter_mut().for_each(|v| *v = 0);
        for col in 1..=m.cols {
            let color = m.color(row, col) as usize;
            if last_seen[color] != 0 && col - last_seen[color] < m.min_distance {
                return false;
            }
            last_seen[color] = col;
        }
    }
    true
}

impl fmt::Display for PaintedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {} {}", self.rows, self.cols, self.palette, self.min_distance)?;
        for row in 1..=self.rows {
            for col in 1..=self.cols {
                if col > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.color(row, col))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for PaintedMatrix {
    type Err = MatrixError;

    /// Header line `rows cols palette d`, then one line of space-separated
    /// color ids per row. Blank lines and `#` comments are skipped.
    fn from_str(s: &str) -> Result<PaintedMatrix, MatrixError> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(parse_err(hline, "header must be `rows cols palette d`"));
        }
        let mut nums = [0u32; 4];
        for (slot, field) in nums.iter_mut().zip(&fields) {
            *slot = field
                .parse()
                .map_err(|_| parse_err(hline, format!("bad header number {field:?}")))?;
        }
        let [rows, cols, palette, d] = nums;
        if rows == 0 || cols == 0 {
            return Err(parse_err(hline, "matrix must have at least one row and column"));
        }

        let mut colors = Vec::with_capacity(rows as usize * cols as usize);
        for _ in 0..rows {
            let (rline, row) = lines
                .next()
                .ok_or_else(|| parse_err(hline, format!("expected {rows} row lines")))?;
            let mut count = 0usize;
            for field in row.split_whitespace() {
                let c: u32 = field
                    .parse()
                    .map_err(|_| parse_err(rline, format!("bad color id {field:?}")))?;
                colors.push(c);
                count += 1;
            }
            if count != cols as usize {
                return Err(parse_err(rline, format!("expected {cols} colors, got {count}")));
            }
        }
        if let Some((eline, _)) = lines.next() {
            return Err(parse_err(eline, "trailing content after the last row"));
        }
        PaintedMatrix::new(rows, cols, palette, d, colors)
    }
}
