//! The language family behind the whole workspace, defined without any
//! automaton: read each letter as a promise (`s`) or a fulfillment (`~s`),
//! rewrite the word into what the letters achieved, and ask whether some
//! agent delivered often enough while someone else's promise hangs forever
//! — or whether the word settles into kept promises only.
//!
//! The membership test here is the independent oracle the automata crates
//! are checked against.

mod error;
mod interp;
mod member;
mod words;

pub use error::LkError;
pub use interp::{interpret, Interpretation, InterpretationLetter};
pub use member::{is_member, is_member_rle};
pub use words::{build_v, build_w, build_w_rle};
