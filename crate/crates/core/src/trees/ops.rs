use std::collections::BTreeSet;

use super::{BlockTree, TreeOracle};
use crate::cantor::{ClopenSet, Word};
use crate::error::{Error, Result};

/// Node budget for searches that enumerate a tree level by level.
pub const DEFAULT_NODE_BUDGET: usize = 1 << 22;

/// From node `s`, follows the unique path to the first splitting node ⊇ s.
///
/// `bound` caps the length of the nodes visited.
pub fn walk_to_split<T: TreeOracle + ?Sized>(p: &T, s: &Word, bound: usize) -> Result<Word> {
    let mut s = s.clone();
    loop {
        let (l, r) = (p.contains(&s.child(0)), p.contains(&s.child(1)));
        match (l, r) {
            (true, true) => return Ok(s),
            (false, false) => return Err(Error::NotPerfect { node: s }),
            (true, false) => s.push(0),
            (false, true) => s.push(1),
        }
        if s.len() > bound {
            return Err(Error::BoundExceeded { bound, context: format!("no splitting node above {}", s.prefix(bound)) });
        }
    }
}

/// stem(p), the least splitting node.
pub fn tree_stem<T: TreeOracle + ?Sized>(p: &T, bound: usize) -> Result<Word> {
    if let Some(t) = p.as_block_tree() {
        return Ok(t.stem().clone());
    }
    walk_to_split(p, &Word::empty(), bound)
}

/// σ*: ∅* = stem(p), (σ⌢i)* = the least splitting node ⊇ σ*⌢i.
pub fn sigma_star<T: TreeOracle + ?Sized>(p: &T, sigma: &Word, bound: usize) -> Result<Word> {
    if let Some(t) = p.as_block_tree() {
        let s = t.sigma_star(sigma);
        if s.len() > bound {
            return Err(Error::BoundExceeded { bound, context: format!("{sigma}* has length {}", s.len()) });
        }
        return Ok(s);
    }
    let mut s = tree_stem(p, bound)?;
    for &b in sigma.bits() {
        s = walk_to_split(p, &s.child(b), bound)?;
    }
    Ok(s)
}

/// Lₙ(p) in the order of σ ∈ 2ⁿ.
pub fn splitting_level<T: TreeOracle + ?Sized>(p: &T, n: usize, bound: usize) -> Result<Vec<Word>> {
    if let Some(t) = p.as_block_tree() {
        let level = t.splitting_level(n);
        if let Some(long) = level.iter().find(|s| s.len() > bound) {
            return Err(Error::BoundExceeded { bound, context: format!("splitting node {long}") });
        }
        return Ok(level);
    }
    let mut level = vec![tree_stem(p, bound)?];
    for _ in 0..n {
        let mut next = Vec::with_capacity(level.len() * 2);
        for s in &level {
            for b in 0..2 {
                next.push(walk_to_split(p, &s.child(b), bound)?);
            }
        }
        level = next;
    }
    Ok(level)
}

/// All nodes of p of length `d`, in lexicographic order.
pub fn nodes_at<T: TreeOracle + ?Sized>(p: &T, d: usize, budget: usize) -> Result<Vec<Word>> {
    let mut level = vec![Word::empty()];
    for _ in 0..d {
        let mut next = Vec::new();
        for s in &level {
            for b in 0..2 {
                let c = s.child(b);
                if p.contains(&c) {
                    next.push(c);
                }
            }
        }
        if next.len() > budget {
            return Err(Error::BudgetExceeded { context: format!("more than {budget} nodes at depth {d}") });
        }
        level = next;
    }
    Ok(level)
}

/// q ∩ 2^{≤depth} ⊆ p.
pub fn is_subtree_to<Q: TreeOracle + ?Sized, P: TreeOracle + ?Sized>(
    q: &Q,
    p: &P,
    depth: usize,
    budget: usize,
) -> Result<bool> {
    let mut level = vec![Word::empty()];
    let mut visited = 0;
    for _ in 0..depth {
        let mut next = Vec::new();
        for s in &level {
            for b in 0..2 {
                let c = s.child(b);
                if q.contains(&c) {
                    if !p.contains(&c) {
                        return Ok(false);
                    }
                    next.push(c);
                }
            }
        }
        visited += next.len();
        if visited > budget {
            return Err(Error::BudgetExceeded { context: format!("inclusion check past {budget} nodes") });
        }
        level = next;
    }
    Ok(true)
}

/// q ≤ₙ p: q ⊆ p and Lₙ(q) = Lₙ(p).
///
/// Inclusion is exact for block trees and checked up to length `bound` otherwise.
/// Every block boundary is a split, so for block trees Lₙ is fixed by the stem
/// and the first n blocks.
pub fn leq_n<Q: TreeOracle + ?Sized, P: TreeOracle + ?Sized>(q: &Q, p: &P, n: usize, bound: usize) -> Result<bool> {
    if let (Some(a), Some(b)) = (q.as_block_tree(), p.as_block_tree()) {
        return Ok(a.is_subtree_of(b) && a.stem() == b.stem() && (0..n).all(|k| a.block(k) == b.block(k)));
    }
    if !is_subtree_to(q, p, bound, DEFAULT_NODE_BUDGET)? {
        return Ok(false);
    }
    let lq: BTreeSet<Word> = splitting_level(q, n, bound)?.into_iter().collect();
    let lp: BTreeSet<Word> = splitting_level(p, n, bound)?.into_iter().collect();
    Ok(lq == lp)
}

/// [p] ⊆ A, decided on the nodes of p of length depth(A).
pub fn branches_subset<T: TreeOracle + ?Sized>(p: &T, a: &ClopenSet, bound: usize) -> Result<bool> {
    if bound < a.depth() {
        return Err(Error::DepthTooSmall { requested: bound, depth: a.depth() });
    }
    Ok(nodes_at(p, a.depth(), DEFAULT_NODE_BUDGET)?.iter().all(|s| a.words().contains(s)))
}

/// Replaces the part of p above σ* by r, mirrored to every τ ∈ 2^{|σ|} so the
/// result is again a block tree.
///
/// With e = stem(r) minus σ*, the last block before level |σ| is extended by e
/// on both sides and followed by the blocks of r. The result lies below p, and
/// below p∗σ it is r. Fails unless r ≤ p∗σ.
pub fn amalgamate(p: &BlockTree, sigma: &Word, r: &BlockTree) -> Result<BlockTree> {
    let below = p.restrict(sigma);
    if !r.is_subtree_of(&below) {
        return Err(Error::Precondition(format!("amalgamated tree is not below p*{sigma}")));
    }
    if sigma.is_empty() {
        return Ok(r.clone());
    }
    let k = sigma.len();
    let e = r.stem().suffix_from(below.stem().len());
    let mut blocks: Vec<(Word, Word)> = (0..k).map(|i| p.block(i).clone()).collect();
    let last = &mut blocks[k - 1];
    last.0.extend_from(&e);
    last.1.extend_from(&e);
    blocks.extend(r.explicit_blocks().iter().cloned());
    Ok(BlockTree::new(p.stem().clone(), blocks, r.tail().clone())?.simplified())
}

/// The Silver law on nodes of length `depth`: whenever t↾j is a splitting node,
/// t with coordinate j flipped is again a node. For pruned trees this is the
/// law s⌢0⌢x ∈ p ⟺ s⌢1⌢x ∈ p at every splitting node of length < depth.
///
/// Returns the first violating node.
pub fn check_silver_law<T: TreeOracle + ?Sized>(p: &T, depth: usize) -> Result<Option<Word>> {
    let nodes = nodes_at(p, depth, DEFAULT_NODE_BUDGET)?;
    let set: BTreeSet<&Word> = nodes.iter().collect();
    for t in &nodes {
        for j in 0..depth {
            if !set.contains(&t.flip(j)) {
                let s = t.prefix(j);
                if p.contains(&s.child(0)) && p.contains(&s.child(1)) {
                    return Ok(Some(t.clone()));
                }
            }
        }
    }
    Ok(None)
}

/// Reads off a block presentation of p up to height `depth`, if p has one:
/// at every level all σ* must continue by the same block pair.
///
/// The returned tree has a free tail past the recovered blocks.
pub fn recover_blocks<T: TreeOracle + ?Sized>(p: &T, depth: usize, bound: usize) -> Result<Option<BlockTree>> {
    let stem = tree_stem(p, bound)?;
    let mut level = vec![stem.clone()];
    let mut blocks = Vec::new();
    while level[0].len() < depth {
        let mut pair: Option<(Word, Word)> = None;
        let mut next = Vec::with_capacity(level.len() * 2);
        for s in &level {
            let n0 = walk_to_split(p, &s.child(0), bound)?;
            let n1 = walk_to_split(p, &s.child(1), bound)?;
            let here = (n0.suffix_from(s.len()), n1.suffix_from(s.len()));
            if here.0.len() != here.1.len() || pair.as_ref().is_some_and(|q| *q != here) {
                return Ok(None);
            }
            pair = Some(here);
            next.push(n0);
            next.push(n1);
        }
        blocks.push(pair.expect("nonempty level"));
        level = next;
        if level.len() > DEFAULT_NODE_BUDGET {
            return Err(Error::BudgetExceeded { context: "block recovery".into() });
        }
    }
    Ok(Some(BlockTree::new(stem, blocks, super::Tail::Free)?))
}
