use serde::Serialize;

use super::extend::pattern_words;
use super::fatness::shift_witness;
use crate::cantor::{DenseSequence, Word};
use crate::error::{Error, Result};
use crate::trees::{BlockTree, FiniteTree};

/// Levels up to this many leaves are listed in the JSON form.
pub const LISTED_LEVEL_LIMIT: usize = 1 << 12;

/// Finite subtrees p⁰ ⊆ p¹ ⊆ … of a Silver tree, each given by its
/// coordinate pattern (None = split) up to its height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder {
    patterns: Vec<Vec<Option<u8>>>,
    splits: Vec<Vec<usize>>,
}

impl Ladder {
    /// Index of the last level.
    pub fn top(&self) -> usize {
        self.patterns.len() - 1
    }

    pub fn pattern(&self, n: usize) -> &[Option<u8>] {
        &self.patterns[n]
    }

    /// ht(pⁿ).
    pub fn height(&self, n: usize) -> usize {
        self.patterns[n].len()
    }

    /// The split coordinates n_t added by the step from pⁿ to pⁿ⁺¹, in order of t.
    pub fn splits(&self, n: usize) -> &[usize] {
        &self.splits[n]
    }

    /// log₂ |Lₙ|.
    pub fn log2_size(&self, n: usize) -> usize {
        self.patterns[n].iter().filter(|c| c.is_none()).count()
    }

    /// Lₙ, the terminal nodes of pⁿ, if there are at most `limit`.
    pub fn level(&self, n: usize, limit: usize) -> Option<Vec<Word>> {
        let log = self.log2_size(n);
        (log < usize::BITS as usize && 1usize << log <= limit).then(|| pattern_words(&self.patterns[n]))
    }

    pub fn finite_tree(&self, n: usize, limit: usize) -> Option<FiniteTree> {
        self.level(n, limit).map(|l| FiniteTree::from_leaves(&l))
    }

    /// |Lₙ₊₁| = |Lₙ| · 2^(2^ht(pⁿ)), in logarithms.
    pub fn growth_law_holds(&self, n: usize) -> bool {
        let h = self.height(n);
        h < usize::BITS as usize && self.log2_size(n + 1) == self.log2_size(n) + (1usize << h)
    }
}

impl Serialize for Ladder {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let levels: Vec<Option<Vec<Word>>> = (0..=self.top()).map(|n| self.level(n, LISTED_LEVEL_LIMIT)).collect();
        let heights: Vec<usize> = (0..=self.top()).map(|n| self.height(n)).collect();
        let sizes: Vec<usize> = (0..=self.top()).map(|n| self.log2_size(n)).collect();
        let mut s = serializer.serialize_struct("Ladder", 4)?;
        s.serialize_field("levels", &levels)?;
        s.serialize_field("heights", &heights)?;
        s.serialize_field("log2_sizes", &sizes)?;
        s.serialize_field("splits", &self.splits)?;
        s.end()
    }
}

/// The canonical ladder p⁰, …, pⁿ of a fat Silver tree p.
///
/// p⁰ is the stem. With ℓ = ht(pᵏ) and t₀ its leftmost leaf, each t ∈ 2^ℓ
/// gets n_t, the least index with s_{n_t} a splitting node of p_{t₀} + t.
/// pᵏ⁺¹ continues pᵏ up to height max n_t + 1, splitting exactly at the n_t;
/// the other coordinates follow p, and those free in p are frozen to 0. Since
/// s_{n_t}↾ℓ = t₀ ⊕ t, distinct shifts give distinct n_t, which is the growth
/// law. `budget` bounds the indices searched.
pub fn ladder(p: &BlockTree, n: usize, budget: usize) -> Result<Ladder> {
    let dense = DenseSequence::Canonical;
    let source = p
        .silver_pattern(budget)
        .ok_or_else(|| Error::MalformedTree("ladders are built on Silver trees".into()))?;
    let mut patterns: Vec<Vec<Option<u8>>> = vec![p.stem().bits().iter().map(|&b| Some(b)).collect()];
    let mut splits = Vec::new();
    for _ in 0..n {
        let current = patterns.last().expect("p0").clone();
        let l = current.len();
        if l >= 24 {
            return Err(Error::BudgetExceeded { context: format!("2^{l} shifts at height {l}") });
        }
        let t0: Word = Word::from_bits(current.iter().map(|c| c.unwrap_or(0)).collect());
        let mut step = Vec::with_capacity(1 << l);
        for t in Word::all(l) {
            let k = shift_witness(&dense, &source, &t0, &t, budget)
                .ok_or_else(|| Error::FatnessMissing { node: t0.clone(), shift: t.clone() })?;
            step.push(k);
        }
        let top = step.iter().max().map_or(l, |m| m + 1);
        let mut next = current;
        next.extend((l..top).map(|c| if step.contains(&c) { None } else { Some(source[c].unwrap_or(0)) }));
        patterns.push(next);
        splits.push(step);
    }
    Ok(Ladder { patterns, splits })
}

/// q ≤ₙ p in the ladder sense: q ⊆ p and qⁿ = pⁿ.
pub fn ladder_leq(q: &BlockTree, p: &BlockTree, n: usize, budget: usize) -> Result<bool> {
    if !q.is_subtree_of(p) {
        return Ok(false);
    }
    let (lq, lp) = (ladder(q, n, budget)?, ladder(p, n, budget)?);
    Ok(lq.patterns == lp.patterns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::w;
    use crate::trees::Tail;

    #[test]
    fn full_tree_ladder() {
        let l = ladder(&BlockTree::full(), 3, 1 << 12).unwrap();
        let heights: Vec<usize> = (0..=3).map(|n| l.height(n)).collect();
        assert_eq!(heights, vec![0, 1, 3, 15]);
        let sizes: Vec<usize> = (0..=3).map(|n| l.log2_size(n)).collect();
        assert_eq!(sizes, vec![0, 1, 3, 11]);
        assert!((0..3).all(|n| l.growth_law_holds(n)));
        assert_eq!(l.splits(1), &[1, 2]);
        assert_eq!(l.level(3, LISTED_LEVEL_LIMIT).unwrap().len(), 2048);
    }

    #[test]
    fn non_fat_tree() {
        let p = BlockTree::new(w(""), vec![], Tail::Cycle { blocks: vec![(w("01"), w("11"))] }).unwrap();
        assert!(matches!(ladder(&p, 3, 256), Err(Error::FatnessMissing { .. })));
    }

    #[test]
    fn ladder_order() {
        let full = BlockTree::full();
        let q = full.freeze(5, 0);
        assert!(ladder_leq(&q, &full, 2, 1 << 10).unwrap());
        let r = full.freeze(1, 0);
        assert!(!ladder_leq(&r, &full, 2, 1 << 10).unwrap());
        assert!(!ladder_leq(&full, &q, 1, 1 << 10).unwrap());
    }

    #[test]
    fn json_form() {
        let l = ladder(&BlockTree::full(), 1, 64).unwrap();
        let v = serde_json::to_value(&l).unwrap();
        assert_eq!(v["heights"], serde_json::json!([0, 1]));
        assert_eq!(v["levels"][1], serde_json::json!(["0", "1"]));
    }
}
