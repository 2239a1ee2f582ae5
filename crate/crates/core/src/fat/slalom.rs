use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cantor::{ClopenSet, Shift, Word};
use crate::error::{Error, Result};
use crate::trees::{nodes_at, BlockTree, FiniteTree, TreeOracle, DEFAULT_NODE_BUDGET};

/// A name for an integer sequence, evaluated on the branch w⌢0̄ through a word w.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum IntName {
    /// Value n is the number of ones in coordinates [n·block, (n+1)·block).
    CountOnesPerBlock { block: usize },
    /// Value n is bit n.
    BitValues,
    /// Explicit values per word; a word without an entry, or with too few values, is an error.
    Table { entries: BTreeMap<Word, Vec<u64>> },
}

impl IntName {
    /// The first `coords` values on w⌢0̄.
    pub fn values(&self, word: &Word, coords: usize) -> Result<Vec<u64>> {
        match self {
            IntName::CountOnesPerBlock { block } => Ok((0..coords)
                .map(|n| (n * block..(n + 1) * block).map(|c| word.bit_padded(c) as u64).sum())
                .collect()),
            IntName::BitValues => Ok((0..coords).map(|n| word.bit_padded(n) as u64).collect()),
            IntName::Table { entries } => match entries.get(word) {
                Some(v) if v.len() >= coords => Ok(v[..coords].to_vec()),
                _ => Err(Error::Precondition(format!("name is undefined on {word} up to {coords}"))),
            },
        }
    }
}

/// An f-slalom: |values(n)| ≤ width(n).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slalom {
    pub width: Vec<usize>,
    pub values: Vec<BTreeSet<u64>>,
}

impl Slalom {
    pub fn is_valid(&self) -> bool {
        self.width.len() == self.values.len() && self.values.iter().zip(&self.width).all(|(v, &f)| v.len() <= f)
    }

    /// x(n) ∈ S(n) for every n in the domain.
    pub fn covers(&self, x: &[u64]) -> bool {
        self.values.iter().zip(x).all(|(s, v)| s.contains(v))
    }
}

/// The slalom of n-th values of `name` over the leaves of p, width bounded by the leaf count.
pub fn slalom_cover(p: &FiniteTree, name: &IntName, coords: usize) -> Result<Slalom> {
    let leaves = p.leaves();
    let images: Vec<Vec<u64>> = leaves.iter().map(|l| name.values(l, coords)).collect::<Result<_>>()?;
    let mut values = vec![BTreeSet::new(); coords];
    for image in &images {
        for (n, v) in image.iter().enumerate() {
            values[n].insert(*v);
        }
    }
    let slalom = Slalom { width: vec![leaves.len(); coords], values };
    debug_assert!(slalom.is_valid() && images.iter().all(|x| slalom.covers(x)));
    Ok(slalom)
}

/// The test "A + 1ₙ is positive", through its clopen surrogate: nonemptiness.
///
/// For clopen sets this is exact, since G₀ restricted to any cylinder still
/// has uncountable Borel chromatic number; the true ideal is never consulted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealShiftProbe {
    pub shift: usize,
    pub base: ClopenSet,
}

impl IdealShiftProbe {
    pub fn positive(&self) -> bool {
        !self.base.shift(&Shift::Unit(self.shift)).is_empty()
    }
}

/// Heuristic, bounded-depth compatibility: p and q share at least two nodes
/// at `depth`. Not a decision procedure; for experiments only.
pub fn compatible_to_depth(p: &BlockTree, q: &BlockTree, depth: usize) -> Result<bool> {
    let common = nodes_at(p, depth, DEFAULT_NODE_BUDGET)?.into_iter().filter(|s| q.contains(s)).take(2).count();
    Ok(common == 2)
}
