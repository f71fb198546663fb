//! Painted state matrices, good paths, and the contamination argument.
//!
//! A painted matrix is a colored grid whose same-row repeats are spread
//! at least a declared distance apart. A good path crosses it left to
//! right using single right moves and equal-color jumps, never letting a
//! run of right moves reach the cap and never jumping into a row it has
//! already touched. [`find_good_path`] constructs such a path the way the
//! underlying counting argument does: contaminate rows multicolumn by
//! multicolumn from the right ([`contaminate_all`]), then thread the path
//! through the rows that stayed clean, one jump per multicolumn.
//!
//! Everything is parameterized so that miniature instances can be tested
//! exhaustively; the `*_with` variants take explicit thresholds, while
//! the plain entry points derive them from the row count as the intended
//! full-size instances do.

mod contaminate;
mod gen;
mod matrix;
mod path;

pub use contaminate::{
    brothers, contaminate_all, contaminate_all_with, contaminate_single, s_ceil,
    split_multicolumns, ContaminationState, ContaminationStats,
};
pub use gen::random_painting;
pub use matrix::{validate_painting, MatrixError, PaintedMatrix};
pub use path::{find_good_path, find_good_path_with, validate_good_path, GoodPath, Move, PathError};
