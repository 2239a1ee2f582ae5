use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Point, Word};
use crate::error::{Error, Result};

/// A clopen subset of 2^ω given as a union of cylinders [w], |w| = depth.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawClopen")]
pub struct ClopenSet {
    depth: usize,
    words: BTreeSet<Word>,
}

#[derive(Deserialize)]
struct RawClopen {
    depth: usize,
    words: Vec<Word>,
}

impl TryFrom<RawClopen> for ClopenSet {
    type Error = Error;

    fn try_from(raw: RawClopen) -> Result<Self> {
        ClopenSet::new(raw.depth, raw.words)
    }
}

/// The shift applied by [`ClopenSet::shift`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shift {
    Word(Word),
    /// 1ₙ, the indicator of coordinate n.
    Unit(usize),
}

impl Shift {
    fn as_word(&self) -> Word {
        match self {
            Shift::Word(t) => t.clone(),
            Shift::Unit(n) => Word::unit(*n),
        }
    }
}

impl ClopenSet {
    pub fn new(depth: usize, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let words: BTreeSet<Word> = words.into_iter().collect();
        if let Some(bad) = words.iter().find(|w| w.len() != depth) {
            return Err(Error::Parse(format!(
                "clopen word {bad} has length {} but depth is {depth}",
                bad.len()
            )));
        }
        Ok(ClopenSet { depth, words })
    }

    pub fn empty(depth: usize) -> Self {
        ClopenSet { depth, words: BTreeSet::new() }
    }

    /// The whole space, at depth 0.
    pub fn full() -> Self {
        ClopenSet { depth: 0, words: [Word::empty()].into() }
    }

    /// The cylinder [u].
    pub fn cylinder(u: &Word) -> Self {
        ClopenSet { depth: u.len(), words: [u.clone()].into() }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    /// Same set, represented at a larger depth.
    pub fn refine(&self, depth: usize) -> Result<Self> {
        if depth < self.depth {
            return Err(Error::DepthTooSmall { requested: depth, depth: self.depth });
        }
        let extra = depth - self.depth;
        let mut words = BTreeSet::new();
        for u in &self.words {
            for tail in Word::all(extra) {
                words.insert(u.concat(&tail));
            }
        }
        Ok(ClopenSet { depth, words })
    }

    fn at_common_depth(&self, other: &ClopenSet) -> (ClopenSet, ClopenSet) {
        let d = self.depth.max(other.depth);
        (self.refine(d).unwrap(), other.refine(d).unwrap())
    }

    pub fn union(&self, other: &ClopenSet) -> ClopenSet {
        let (a, b) = self.at_common_depth(other);
        ClopenSet { depth: a.depth, words: a.words.union(&b.words).cloned().collect() }
    }

    pub fn intersect(&self, other: &ClopenSet) -> ClopenSet {
        let (a, b) = self.at_common_depth(other);
        ClopenSet { depth: a.depth, words: a.words.intersection(&b.words).cloned().collect() }
    }

    pub fn minus(&self, other: &ClopenSet) -> ClopenSet {
        let (a, b) = self.at_common_depth(other);
        ClopenSet { depth: a.depth, words: a.words.difference(&b.words).cloned().collect() }
    }

    pub fn complement(&self) -> ClopenSet {
        ClopenSet::full().minus(self)
    }

    /// A + t.
    pub fn shift(&self, t: &Shift) -> ClopenSet {
        let t = t.as_word();
        let a = self.refine(self.depth.max(t.len())).unwrap();
        ClopenSet { depth: a.depth, words: a.words.iter().map(|u| u.shifted(&t)).collect() }
    }

    /// Longest word extended by every member.
    pub fn stem_of(&self) -> Result<Word> {
        let mut it = self.words.iter();
        let first = it.next().ok_or_else(|| Error::EmptyInput("stem of an empty clopen set".into()))?;
        Ok(it.fold(first.clone(), |acc, u| acc.longest_common_prefix(u)))
    }

    pub fn contains_point(&self, x: &Point) -> bool {
        self.words.contains(&x.restrict(self.depth))
    }

    /// Whether the cylinder [u] meets the set.
    pub fn meets_cylinder(&self, u: &Word) -> bool {
        if u.len() >= self.depth {
            self.words.contains(&u.prefix(self.depth))
        } else {
            self.words.range(u.clone()..).next().is_some_and(|v| u.is_prefix_of(v))
        }
    }

    /// Whether [u] ⊆ A.
    pub fn contains_cylinder(&self, u: &Word) -> bool {
        if u.len() >= self.depth {
            self.words.contains(&u.prefix(self.depth))
        } else {
            let extra = self.depth - u.len();
            let below = self.words.range(u.clone()..).take_while(|v| u.is_prefix_of(v)).count() as u128;
            u32::try_from(extra).ok().and_then(|e| 1u128.checked_shl(e)) == Some(below)
        }
    }

    pub fn is_subset(&self, other: &ClopenSet) -> bool {
        self.words.iter().all(|u| other.contains_cylinder(u))
    }

    /// Equality of the denoted sets, regardless of representation depth.
    pub fn same_set(&self, other: &ClopenSet) -> bool {
        let (a, b) = self.at_common_depth(other);
        a.words == b.words
    }

    /// Lex-first member word, if any.
    pub fn first(&self) -> Option<&Word> {
        self.words.iter().next()
    }
}
