//! Random valid paintings for the randomized lemma harness.

use rand::Rng;

use crate::matrix::{MatrixError, PaintedMatrix};

/// Paints a `rows x cols` matrix uniformly at random among the paintings
/// valid for the given palette and distance: each cell picks uniformly
/// from the colors not used in the same row within the last
/// `min_distance - 1` columns. Feasible iff the palette exceeds that
/// window, i.e. `palette >= min(min_distance, cols)`.
///
/// With `min_distance >= cols` and `palette == cols` this degenerates to
/// independent uniform permutation rows.
pub fn random_painting<R: Rng>(
    rng: &mut R,
    rows: u32,
    cols: u32,
    palette: u32,
    min_distance: u32,
) -> Result<PaintedMatrix, MatrixError> {
    if palette == 0 || palette < min_distance.min(cols) {
        return Err(MatrixError::Infeasible { palette, min_distance });
    }
    let mut colors = Vec::with_capacity(rows as usize * cols as usize);
    let mut last_used = vec![0u32; palette as usize];
    let mut allowed = Vec::with_capacity(palette as usize);
    for _ in 0..rows {
        last_used.iter_mut().for_each(|v| *v = 0);
        for col in 1..=cols {
            allowed.clear();
            for color in 0..palette {
                let last = last_used[color as usize];
                if last == 0 || col - last >= min_distance {
                    allowed.push(color);
                }
            }
            let color = allowed[rng.gen_range(0..allowed.len())];
            last_used[color as usize] = col;
            colors.push(color);
        }
    }
    PaintedMatrix::new(rows, cols, palette, min_distance, colors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::validate_painting;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn paintings_come_out_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (rows, cols, palette, d) in
            [(4, 6, 6, 6), (8, 16, 16, 8), (64, 64, 64, 64), (5, 9, 4, 3)]
        {
            let m = random_painting(&mut rng, rows, cols, palette, d).unwrap();
            assert!(validate_painting(&m), "{rows}x{cols} palette {palette} d {d}");
        }
    }

    #[test]
    fn full_distance_rows_are_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let m = random_painting(&mut rng, 6, 6, 6, 6).unwrap();
        for r in 1..=6 {
            let mut seen: Vec<u32> = (1..=6).map(|c| m.color(r, c)).collect();
            seen.sort_unstable();
            assert_eq!(seen, vec![0, 1, 2, 3, 4, 5]);
        }
    }

    #[test]
    fn infeasible_parameters_are_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let err = random_painting(&mut rng, 2, 5, 2, 4).unwrap_err();
        assert_eq!(err, MatrixError::Infeasible { palette: 2, min_distance: 4 });
    }

    #[test]
    fn determinism_per_seed() {
        let a = random_painting(&mut ChaCha8Rng::seed_from_u64(42), 8, 8, 8, 8).unwrap();
        let b = random_painting(&mut ChaCha8Rng::seed_from_u64(42), 8, 8, 8, 8).unwrap();
        assert_eq!(a, b);
    }
}
