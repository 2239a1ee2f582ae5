//! Words, eventually periodic points, the dense sequence and clopen sets.

mod clopen;
mod dense;
mod point;
mod word;

pub use clopen::{ClopenSet, Shift};
pub use dense::{length_lex_word, DenseSequence};
pub use point::{pt, Difference, Point};
pub use word::{w, Word};

/// The canonical sₖ.
pub fn dense_seq(k: usize) -> Word {
    DenseSequence::Canonical.term(k)
}
