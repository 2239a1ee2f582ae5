//! Perfect trees on 2^<ω: block presentations of E₀ and Silver trees,
//! finite and lazily defined trees, splitting structure and fusion.

mod block;
mod finite;
mod fusion;
mod lazy;
mod ops;

pub use block::{Block, BlockTree, Tail};
pub use finite::FiniteTree;
pub use fusion::{fusion, FusionSequence};
pub use lazy::LazyTree;
pub use ops::{
    amalgamate, branches_subset, check_silver_law, is_subtree_to, leq_n, nodes_at, recover_blocks, sigma_star,
    splitting_level, tree_stem, walk_to_split, DEFAULT_NODE_BUDGET,
};

use crate::cantor::Word;
use crate::error::Result;

/// A tree given by its membership relation. Implementations must be downward
/// closed and pure.
pub trait TreeOracle {
    fn contains(&self, s: &Word) -> bool;

    /// The block presentation, when there is one; enables exact algorithms.
    fn as_block_tree(&self) -> Option<&BlockTree> {
        None
    }

    /// min{|τ| : τ ∈ Lₙ}.
    fn min_level_height(&self, n: usize, bound: usize) -> Result<usize> {
        match self.as_block_tree() {
            Some(t) => Ok(t.split_height(n)),
            None => Ok(splitting_level(self, n, bound)?.iter().map(Word::len).min().unwrap_or(0)),
        }
    }
}

impl<T: TreeOracle + ?Sized> TreeOracle for &T {
    fn contains(&self, s: &Word) -> bool {
        (**self).contains(s)
    }

    fn as_block_tree(&self) -> Option<&BlockTree> {
        (**self).as_block_tree()
    }
}

impl<T: TreeOracle + ?Sized> TreeOracle for std::sync::Arc<T> {
    fn contains(&self, s: &Word) -> bool {
        (**self).contains(s)
    }

    fn as_block_tree(&self) -> Option<&BlockTree> {
        (**self).as_block_tree()
    }
}
