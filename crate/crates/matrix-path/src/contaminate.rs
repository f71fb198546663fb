//! Multicolumn splitting and the contamination procedures.
//!
//! The matrix is cut into column blocks of width `rows/2`; all blocks but
//! the last are *multicolumns*. Two rows of a multicolumn are *brothers*
//! when they share a color there (so a path could jump between them).
//! Contamination walks the multicolumns right to left, each time dirtying
//! rows until every remaining clean row has at least `s_ceil` clean
//! brothers; a clean row with fewer is called *poor*. Rows that survive
//! all rounds can host a jump in every multicolumn, which is what the
//! path finder builds on.

use std::collections::BTreeSet;

use crate::matrix::{validate_painting, MatrixError, PaintedMatrix};

/// Smallest `c >= 1` with `(2c)^3 >= rows`: the ceiling of
/// `rows^(1/3) / 2`, the contamination threshold for a `rows`-row matrix
/// of the intended shape.
pub fn s_ceil(rows: u32) -> u32 {
    let mut c = 1u32;
    while (2 * c as u64).pow(3) < rows as u64 {
        c += 1;
    }
    c
}

/// Cuts the matrix into column ranges (1-based, inclusive) of width
/// `rows/2`; the last range may be narrower. Every range except the last
/// is a multicolumn. A matrix with fewer than two rows, or one too narrow
/// to cut, comes back as a single range.
pub fn split_multicolumns(m: &PaintedMatrix) -> Vec<(u32, u32)> {
    let width = m.rows() / 2;
    if width == 0 {
        return vec![(1, m.cols())];
    }
    let mut ranges = Vec::new();
    let mut start = 1;
    while start <= m.cols() {
        let end = (start + width - 1).min(m.cols());
        ranges.push((start, end));
        start = end + 1;
    }
    ranges
}

/// Rows other than `r` sharing at least one color with row `r` within the
/// columns `range` (1-based, inclusive).
pub fn brothers(m: &PaintedMatrix, range: (u32, u32), r: u32) -> BTreeSet<u32> {
    let mine: BTreeSet<u32> = (range.0..=range.1).map(|c| m.color(r, c)).collect();
    let mut out = BTreeSet::new();
    for other in 1..=m.rows() {
        if other == r {
            continue;
        }
        if (range.0..=range.1).any(|c| mine.contains(&m.color(other, c))) {
            out.insert(other);
        }
    }
    out
}

/// What one run of [`contaminate_single`] did: how often the while-loop
/// body ran and how many rows it newly dirtied. For matrices of the
/// intended shape the body runs at most `s_ceil` times and dirties at
/// most `s_ceil^2` new rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContaminationStats {
    pub iterations: u32,
    pub new_dirty: u32,
}

/// One multicolumn round: starting from `dirty`, repeatedly pick the
/// lowest clean row with fewer than `s_ceil` clean brothers and dirty it
/// together with all its brothers, until no clean row is poor. Returns
/// the grown dirty set and the loop accounting.
pub fn contaminate_single(
    m: &PaintedMatrix,
    range: (u32, u32),
    dirty: &BTreeSet<u32>,
    s_ceil: u32,
) -> (BTreeSet<u32>, ContaminationStats) {
    let sibs: Vec<BTreeSet<u32>> =
        (1..=m.rows()).map(|r| brothers(m, range, r)).collect();
    let mut dirty = dirty.clone();
    let mut stats = ContaminationStats { iterations: 0, new_dirty: 0 };
    loop {
        let poor = (1..=m.rows()).find(|r| {
            !dirty.contains(r)
                && (sibs[*r as usize - 1].iter())
                    .filter(|b| !dirty.contains(b))
                    .count()
                    < s_ceil as usize
        });
        let Some(row) = poor else { break };
        stats.iterations += 1;
        stats.new_dirty += dirty.insert(row) as u32;
        for &b in &sibs[row as usize - 1] {
            stats.new_dirty += dirty.insert(b) as u32;
        }
    }
    (dirty, stats)
}

/// The dirty sets per multicolumn after the right-to-left sweep. Index
/// `i` matches the `i`-th entry of `ranges`; `ranges` also keeps the
/// final non-multicolumn block at the end, which has no dirty set.
#[derive(Debug, Clone)]
pub struct ContaminationState {
    pub ranges: Vec<(u32, u32)>,
    pub dirty: Vec<BTreeSet<u32>>,
    pub stats: Vec<ContaminationStats>,
}

impl ContaminationState {
    pub fn multicolumns(&self) -> usize {
        self.ranges.len() - 1
    }

    /// Rows clean in the first multicolumn — the possible path starts.
    /// With no multicolumn at all every row qualifies.
    pub fn clean_rows(&self, rows: u32) -> Vec<u32> {
        match self.dirty.first() {
            Some(d0) => (1..=rows).filter(|r| !d0.contains(r)).collect(),
            None => (1..=rows).collect(),
        }
    }
}

/// Right-to-left contamination sweep over all multicolumns with an
/// explicit threshold, for generalized (small) instances.
pub fn contaminate_all_with(m: &PaintedMatrix, s_ceil: u32) -> ContaminationState {
    let ranges = split_multicolumns(m);
    let multis = ranges.len() - 1;
    let mut dirty = vec![BTreeSet::new(); multis];
    let mut stats = vec![ContaminationStats { iterations: 0, new_dirty: 0 }; multis];
    let mut carried = BTreeSet::new();
    for i in (0..multis).rev() {
        let (d, st) = contaminate_single(m, ranges[i], &carried, s_ceil);
        carried = d.clone();
        dirty[i] = d;
        stats[i] = st;
    }
    ContaminationState { ranges, dirty, stats }
}

/// Contamination with the threshold derived from the row count, for
/// matrices of the intended shape. Fails on invalid paintings.
pub fn contaminate_all(m: &PaintedMatrix) -> Result<ContaminationState, MatrixError> {
    if !validate_painting(m) {
        return Err(MatrixError::InvalidPainting);
    }
    Ok(contaminate_all_with(m, s_ceil(m.rows())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: u32, cols: u32, palette: u32, d: u32, colors: Vec<u32>) -> PaintedMatrix {
        PaintedMatrix::new(rows, cols, palette, d, colors).unwrap()
    }

    #[test]
    fn threshold_values() {
        assert_eq!(s_ceil(1), 1);
        assert_eq!(s_ceil(8), 1);
        assert_eq!(s_ceil(9), 2);
        assert_eq!(s_ceil(64), 2);
        assert_eq!(s_ceil(65), 3);
        assert_eq!(s_ceil(125), 3);
        assert_eq!(s_ceil(216), 3);
    }

    #[test]
    fn split_shapes() {
        let m = matrix(64, 64, 64, 1, vec![0; 64 * 64]);
        assert_eq!(split_multicolumns(&m), vec![(1, 32), (33, 64)]);
        let m = matrix(4, 10, 4, 1, vec![0; 40]);
        assert_eq!(
            split_multicolumns(&m),
            vec![(1, 2), (3, 4), (5, 6), (7, 8), (9, 10)]
        );
        let m = matrix(8, 3, 4, 1, vec![0; 24]);
        assert_eq!(split_multicolumns(&m), vec![(1, 3)]);
    }

    #[test]
    fn brothers_by_shared_color() {
        // Rows: 0 1 / 1 2 / 3 4. Row 1 and 2 share color 1; row 3 is alone.
        let m = matrix(3, 2, 5, 1, vec![0, 1, 1, 2, 3, 4]);
        let range = (1, 2);
        assert_eq!(brothers(&m, range, 1), BTreeSet::from([2]));
        assert_eq!(brothers(&m, range, 2), BTreeSet::from([1]));
        assert_eq!(brothers(&m, range, 3), BTreeSet::new());
    }

    #[test]
    fn brotherless_rows_all_go_dirty() {
        // Pairwise disjoint rows: everyone is poor, each selection dirties
        // only itself, so the loop runs once per row.
        let m = matrix(3, 2, 6, 1, vec![0, 1, 2, 3, 4, 5]);
        let (dirty, stats) = contaminate_single(&m, (1, 2), &BTreeSet::new(), 1);
        assert_eq!(dirty, BTreeSet::from([1, 2, 3]));
        assert_eq!(stats, ContaminationStats { iterations: 3, new_dirty: 3 });
    }

    #[test]
    fn rich_rows_stay_clean() {
        // All three rows share color 0, so each clean row has 2 clean
        // brothers and the loop never runs at threshold 2.
        let m = matrix(3, 2, 4, 1, vec![0, 1, 0, 2, 0, 3]);
        let before = BTreeSet::new();
        let (dirty, stats) = contaminate_single(&m, (1, 2), &before, 2);
        assert!(dirty.is_empty());
        assert_eq!(stats, ContaminationStats { iterations: 0, new_dirty: 0 });
    }

    #[test]
    fn no_clean_row_is_poor_afterwards() {
        let colors = vec![
            0, 1, //
            0, 2, //
            3, 4, //
            3, 5, //
            6, 7, //
        ];
        let m = matrix(5, 2, 8, 1, colors);
        let (dirty, _) = contaminate_single(&m, (1, 2), &BTreeSet::new(), 2);
        for r in 1..=5 {
            if dirty.contains(&r) {
                continue;
            }
            let clean_sibs =
                brothers(&m, (1, 2), r).iter().filter(|b| !dirty.contains(b)).count();
            assert!(clean_sibs >= 2, "clean row {r} is poor");
        }
    }

    #[test]
    fn sweep_is_monotone_and_empty_without_multicolumns() {
        let m = matrix(8, 3, 4, 1, (0..24).map(|i| i % 4).collect());
        let state = contaminate_all_with(&m, 1);
        assert_eq!(state.multicolumns(), 0);
        assert!(state.dirty.is_empty());
        assert_eq!(state.clean_rows(8), (1..=8).collect::<Vec<_>>());

        let m = matrix(4, 8, 8, 1, (0..32).map(|i| i % 8).collect());
        let state = contaminate_all_with(&m, 2);
        for i in 0..state.multicolumns().saturating_sub(1) {
            assert!(
                state.dirty[i].is_superset(&state.dirty[i + 1]),
                "dirty sets must grow right to left"
            );
        }
    }

    #[test]
    fn paper_shape_wrapper_validates() {
        let m = matrix(2, 2, 1, 2, vec![0, 0, 0, 0]);
        assert_eq!(contaminate_all(&m).unwrap_err(), MatrixError::InvalidPainting);
    }
}
