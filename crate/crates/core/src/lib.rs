//! Finite-scale combinatorics of tree forcings on the Cantor space.

pub mod cantor;
pub mod constructions;
pub mod error;
pub mod fat;
pub mod graphs;
pub mod trees;

pub use cantor::{dense_seq, pt, w, ClopenSet, DenseSequence, Difference, Point, Shift, Word};
pub use error::{Error, Result};
