use std::collections::HashSet;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use super::TreeOracle;
use crate::cantor::{Point, Word};
use crate::error::{Error, Result};

pub type Block = (Word, Word);

static FREE_BLOCK: LazyLock<Block> = LazyLock::new(|| (Word::zeros(1), Word::from_bits(vec![1])));

/// What follows the explicit blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tail {
    /// The block ("0", "1") forever.
    Free,
    /// These blocks, repeated forever.
    Cycle { blocks: Vec<Block> },
}

/// An E₀-tree presented as a stem followed by a stream of block pairs.
///
/// The branches are stem⌢u⁰_{x(0)}⌢u¹_{x(1)}⌢… for x ∈ 2^ω. In every block
/// pair both words have the same length, u₀ starts with 0 and u₁ with 1, so
/// the splitting nodes are exactly the stem and the block boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBlockTree")]
pub struct BlockTree {
    stem: Word,
    blocks: Vec<Block>,
    tail: Tail,
}

#[derive(Deserialize)]
struct RawBlockTree {
    #[serde(default)]
    stem: Word,
    #[serde(default)]
    blocks: Vec<Block>,
    #[serde(default = "free_tail")]
    tail: Tail,
}

fn free_tail() -> Tail {
    Tail::Free
}

impl TryFrom<RawBlockTree> for BlockTree {
    type Error = Error;

    fn try_from(raw: RawBlockTree) -> Result<Self> {
        BlockTree::new(raw.stem, raw.blocks, raw.tail)
    }
}

fn check_block(k: usize, (u0, u1): &Block) -> Result<()> {
    if u0.is_empty() || u0.len() != u1.len() {
        return Err(Error::MalformedTree(format!("block {k} ({u0}, {u1}) must have equal nonzero lengths")));
    }
    if u0.bit(0) != 0 || u1.bit(0) != 1 {
        return Err(Error::MalformedTree(format!("block {k} ({u0}, {u1}) must start with 0 and 1")));
    }
    Ok(())
}

/// Position of a node inside the presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Cursor {
    /// `offset` bits of the stem read; offset < |stem|.
    Stem(usize),
    /// Inside block k (normalized) on `side`, `offset` bits read; offset ≥ 1.
    Inside { k: usize, side: u8, offset: usize },
    /// At the start of block k (normalized), a splitting node.
    Split(usize),
}

impl BlockTree {
    pub fn new(stem: Word, blocks: Vec<Block>, tail: Tail) -> Result<Self> {
        for (k, b) in blocks.iter().enumerate() {
            check_block(k, b)?;
        }
        if let Tail::Cycle { blocks: cycle } = &tail {
            if cycle.is_empty() {
                return Err(Error::MalformedTree("tail cycle must be nonempty".into()));
            }
            for (k, b) in cycle.iter().enumerate() {
                check_block(blocks.len() + k, b)?;
            }
        }
        Ok(BlockTree { stem, blocks, tail })
    }

    /// The full binary tree.
    pub fn full() -> Self {
        BlockTree { stem: Word::empty(), blocks: vec![], tail: Tail::Free }
    }

    /// The tree of all extensions of `stem`.
    pub fn cone(stem: Word) -> Self {
        BlockTree { stem, blocks: vec![], tail: Tail::Free }
    }

    pub fn stem(&self) -> &Word {
        &self.stem
    }

    pub fn explicit_blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// Block number k of the stream.
    pub fn block(&self, k: usize) -> &Block {
        if k < self.blocks.len() {
            return &self.blocks[k];
        }
        match &self.tail {
            Tail::Free => &FREE_BLOCK,
            Tail::Cycle { blocks } => &blocks[(k - self.blocks.len()) % blocks.len()],
        }
    }

    /// Block index reduced to a representative with the same future.
    fn normalize(&self, k: usize) -> usize {
        let n = self.blocks.len();
        if k < n {
            return k;
        }
        match &self.tail {
            Tail::Free => n,
            Tail::Cycle { blocks } => n + (k - n) % blocks.len(),
        }
    }

    /// Length of the node at the start of block k.
    pub fn split_height(&self, k: usize) -> usize {
        self.stem.len() + (0..k).map(|i| self.block(i).0.len()).sum::<usize>()
    }

    /// Whether every block pair has the form (0⌢w, 1⌢w).
    pub fn is_silver(&self) -> bool {
        let silver = |(u0, u1): &Block| u0.suffix_from(1) == u1.suffix_from(1);
        let tail_ok = match &self.tail {
            Tail::Free => true,
            Tail::Cycle { blocks } => blocks.iter().all(silver),
        };
        tail_ok && self.blocks.iter().all(silver)
    }

    pub(crate) fn start(&self) -> Cursor {
        if self.stem.is_empty() {
            Cursor::Split(0)
        } else {
            Cursor::Stem(0)
        }
    }

    pub(crate) fn step(&self, cursor: Cursor, bit: u8) -> Option<Cursor> {
        match cursor {
            Cursor::Stem(i) => (self.stem.bit(i) == bit).then(|| {
                if i + 1 == self.stem.len() {
                    Cursor::Split(0)
                } else {
                    Cursor::Stem(i + 1)
                }
            }),
            Cursor::Split(k) => Some(self.advance(k, bit, 1)),
            Cursor::Inside { k, side, offset } => {
                let u = if side == 0 { &self.block(k).0 } else { &self.block(k).1 };
                (u.bit(offset) == bit).then(|| self.advance(k, side, offset + 1))
            }
        }
    }

    fn advance(&self, k: usize, side: u8, offset: usize) -> Cursor {
        if offset == self.block(k).0.len() {
            Cursor::Split(self.normalize(k + 1))
        } else {
            Cursor::Inside { k, side, offset }
        }
    }

    fn locate(&self, s: &Word) -> Option<Cursor> {
        s.bits().iter().try_fold(self.start(), |c, &b| self.step(c, b))
    }

    /// σ* = stem⌢u⁰_{σ(0)}⌢…⌢u^{|σ|−1}_{σ(|σ|−1)}.
    pub fn sigma_star(&self, sigma: &Word) -> Word {
        let mut s = self.stem.clone();
        for (k, &b) in sigma.bits().iter().enumerate() {
            let (u0, u1) = self.block(k);
            s.extend_from(if b == 0 { u0 } else { u1 });
        }
        s
    }

    /// Splitting level n, in the order of σ ∈ 2ⁿ.
    pub fn splitting_level(&self, n: usize) -> Vec<Word> {
        Word::all(n).map(|sigma| self.sigma_star(&sigma)).collect()
    }

    /// The block stream from block k on, as explicit blocks and a tail.
    fn blocks_from(&self, k: usize) -> (Vec<Block>, Tail) {
        if k <= self.blocks.len() {
            return (self.blocks[k..].to_vec(), self.tail.clone());
        }
        match &self.tail {
            Tail::Free => (vec![], Tail::Free),
            Tail::Cycle { blocks } => {
                let mut rotated = blocks.clone();
                rotated.rotate_left((k - self.blocks.len()) % blocks.len());
                (vec![], Tail::Cycle { blocks: rotated })
            }
        }
    }

    /// p∗σ.
    pub fn restrict(&self, sigma: &Word) -> BlockTree {
        let (blocks, tail) = self.blocks_from(sigma.len());
        BlockTree { stem: self.sigma_star(sigma), blocks, tail }.simplified()
    }

    /// Folds trailing explicit blocks back into the tail and reduces the cycle
    /// to its primitive root. The denoted tree is unchanged.
    pub fn simplified(mut self) -> BlockTree {
        if let Tail::Cycle { blocks } = &mut self.tail {
            let n = blocks.len();
            if let Some(d) = (1..=n).find(|&d| n % d == 0 && (0..n).all(|i| blocks[i] == blocks[i % d])) {
                blocks.truncate(d);
            }
            if blocks.iter().all(|b| *b == *FREE_BLOCK) {
                self.tail = Tail::Free;
            }
        }
        loop {
            let Some(last) = self.blocks.last() else { break };
            match &mut self.tail {
                Tail::Free if *last == *FREE_BLOCK => {
                    self.blocks.pop();
                }
                Tail::Cycle { blocks } if blocks.last() == Some(last) => {
                    self.blocks.pop();
                    blocks.rotate_right(1);
                }
                _ => break,
            }
        }
        self
    }

    /// The same tree with at least `n` explicit blocks.
    pub fn unfolded(&self, n: usize) -> BlockTree {
        let mut blocks = self.blocks.clone();
        for k in blocks.len()..n {
            blocks.push(self.block(k).clone());
        }
        let (_, tail) = self.blocks_from(blocks.len().max(self.blocks.len()));
        BlockTree { stem: self.stem.clone(), blocks, tail }
    }

    /// Fixes the selector at block k to `side`, removing that split.
    pub fn freeze(&self, k: usize, side: u8) -> BlockTree {
        let mut t = self.unfolded(k + 1);
        let (u0, u1) = t.blocks.remove(k);
        let u = if side == 0 { u0 } else { u1 };
        if k == 0 {
            t.stem.extend_from(&u);
        } else {
            let prev = &mut t.blocks[k - 1];
            prev.0.extend_from(&u);
            prev.1.extend_from(&u);
        }
        t.simplified()
    }

    /// The branch selected by `selector`.
    pub fn branch(&self, selector: &Point) -> Point {
        let cycle = match &self.tail {
            Tail::Free => 1,
            Tail::Cycle { blocks } => blocks.len(),
        };
        let start = self.blocks.len().max(selector.prefix().len());
        let period = lcm(cycle, selector.period().len());
        let chosen = |k: usize| {
            let (u0, u1) = self.block(k);
            if selector.bit(k) == 0 {
                u0
            } else {
                u1
            }
        };
        let mut prefix = self.stem.clone();
        (0..start).for_each(|k| prefix.extend_from(chosen(k)));
        let mut repeat = Word::empty();
        (start..start + period).for_each(|k| repeat.extend_from(chosen(k)));
        Point::new(prefix, repeat).expect("blocks are nonempty")
    }

    /// The branch selected by `selector` followed by zeros.
    pub fn branch_word(&self, selector: &Word) -> Point {
        self.branch(&Point::zero_padded(selector))
    }

    /// The Silver tree of the partial function on coordinates: `Some(b)` fixes a
    /// coordinate to b, `None` leaves it free; coordinates past the pattern are free.
    pub fn silver(pattern: &[Option<u8>]) -> BlockTree {
        let mut stem = Word::empty();
        let mut blocks: Vec<Block> = Vec::new();
        for &c in pattern {
            match (c, blocks.last_mut()) {
                (None, _) => blocks.push(FREE_BLOCK.clone()),
                (Some(b), None) => stem.push(b),
                (Some(b), Some(last)) => {
                    last.0.push(b);
                    last.1.push(b);
                }
            }
        }
        BlockTree { stem, blocks, tail: Tail::Free }.simplified()
    }

    /// The coordinate pattern of a Silver tree, first `len` coordinates.
    pub fn silver_pattern(&self, len: usize) -> Option<Vec<Option<u8>>> {
        if !self.is_silver() {
            return None;
        }
        let mut pattern: Vec<Option<u8>> = self.stem.bits().iter().map(|&b| Some(b)).collect();
        let mut k = 0;
        while pattern.len() < len {
            let (u0, _) = self.block(k);
            pattern.push(None);
            pattern.extend(u0.bits()[1..].iter().map(|&b| Some(b)));
            k += 1;
        }
        pattern.truncate(len);
        Some(pattern)
    }

    /// Exact test of [self] ⊆ [other], by search over pairs of cursors.
    pub fn is_subtree_of(&self, other: &BlockTree) -> bool {
        let mut seen = HashSet::new();
        let mut stack = vec![(self.start(), other.start())];
        while let Some(state) = stack.pop() {
            if !seen.insert(state) {
                continue;
            }
            let (a, b) = state;
            for bit in 0..2 {
                if let Some(a2) = self.step(a, bit) {
                    match other.step(b, bit) {
                        Some(b2) => stack.push((a2, b2)),
                        None => return false,
                    }
                }
            }
        }
        true
    }

    /// Number of blocks whose split lies below height `d`.
    pub fn blocks_below(&self, d: usize) -> usize {
        let mut k = 0;
        while self.split_height(k) < d {
            k += 1;
        }
        k
    }

    /// All nodes of length `d`, each with the selector word that reaches it
    /// (selector coordinates past the blocks below d are 0).
    pub fn nodes_at(&self, d: usize) -> Vec<(Word, Word)> {
        let k = self.blocks_below(d);
        Word::all(k)
            .map(|sel| (self.branch_word(&sel).restrict(d), sel))
            .collect()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl TreeOracle for BlockTree {
    fn contains(&self, s: &Word) -> bool {
        self.locate(s).is_some()
    }

    fn as_block_tree(&self) -> Option<&BlockTree> {
        Some(self)
    }
}
