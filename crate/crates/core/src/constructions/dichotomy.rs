use serde::Serialize;

use super::agreement::{
    agrees_with, assignment_below, assignment_key, selector_refinements, validate_refutation,
    AgreementReport, Refutation, Relation,
};
use crate::cantor::Word;
use crate::error::{Error, Result};
use crate::graphs::ClopenGraph;
use crate::trees::{amalgamate, BlockTree, FiniteTree, DEFAULT_NODE_BUDGET};

/// Default depth of the independence re-verification.
pub const VERIFY_DEPTH: usize = 12;

/// Outcome of [`density_dichotomy`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DichotomyOutcome {
    /// Below a condition where nothing agrees: a tree none of whose related cross pairs is an edge.
    IndependentTree { below: BlockTree, tree: BlockTree },
    /// Agreeing conditions are dense: a finite clique ladder.
    CliqueEvidence { tree: FiniteTree },
    Undecided { explored: usize, reason: String },
}

/// Searches the selector-fixing refinements of p at the graph's depth.
///
/// Agreement of a block tree with a box graph at depth d depends only on the
/// blocks below d, so the refinements that freeze some of those blocks are the
/// conditions this search ranges over. If every one of them has an agreeing
/// refinement below it, agreement is dense and a clique ladder is built;
/// otherwise the independent-tree construction runs below the first
/// refinement (most frozen first, then 0 < 1 < free) with no agreeing
/// refinement below it.
pub fn density_dichotomy(
    p: &BlockTree,
    g: &ClopenGraph,
    rel: Relation,
    budget: usize,
    depth_out: usize,
) -> Result<DichotomyOutcome> {
    rel.check_tree(p)?;
    let family = match selector_refinements(p, g.depth(), budget) {
        Ok(f) => f,
        Err(Error::BudgetExceeded { context }) => {
            return Ok(DichotomyOutcome::Undecided { explored: 0, reason: context });
        }
        Err(e) => return Err(e),
    };
    let agrees: Vec<bool> = family
        .iter()
        .map(|(_, t)| agrees_with(t, g, rel).map(|r| r.agrees()))
        .collect::<Result<_>>()?;
    let mut hopeless: Vec<usize> = (0..family.len())
        .filter(|&i| {
            !(0..family.len()).any(|j| agrees[j] && assignment_below(&family[j].0, &family[i].0))
        })
        .collect();
    if hopeless.is_empty() {
        return match perfect_clique(p, g, rel, depth_out) {
            Ok(tree) => Ok(DichotomyOutcome::CliqueEvidence { tree }),
            Err(Error::DensityFailure(reason)) => Ok(DichotomyOutcome::Undecided { explored: family.len(), reason }),
            Err(e) => Err(e),
        };
    }
    hopeless.sort_by_key(|&i| {
        let (frozen, order) = assignment_key(&family[i].0);
        (std::cmp::Reverse(frozen), order)
    });
    let below = family[hopeless[0]].1.clone();
    let tree = independent_tree(&below, g, rel, &default_refuter(g, rel), depth_out)?;
    Ok(DichotomyOutcome::IndependentTree { below, tree })
}

/// The refuter driven by [`agrees_with`].
pub fn default_refuter(g: &ClopenGraph, rel: Relation) -> impl Fn(&BlockTree) -> Option<Refutation> + '_ {
    move |r| match agrees_with(r, g, rel) {
        Ok(AgreementReport::Refuted(w)) => Some(w),
        _ => None,
    }
}

/// Fusion construction of a tree q ≤ p with ([q∗σ⌢0] × [q∗σ⌢1]) ∩ R ∩ G = ∅ at
/// every split.
///
/// At stage n, for each σ ∈ 2ⁿ in order, the refuter supplies related
/// z₀ ∈ [q∗σ⌢0], z₁ ∈ [q∗σ⌢1] and boxes [s₀], [s₁] missing G. The blocks of
/// q∗σ up to |s_i| are frozen along z_i and merged into its root block, and
/// the result is amalgamated back, which fixes the same choice above every
/// τ ∈ 2ⁿ. Splits at height ≥ depth(G) need no work. `depth_out` is the
/// depth of the final re-verification.
pub fn independent_tree(
    p: &BlockTree,
    g: &ClopenGraph,
    rel: Relation,
    refuter: &dyn Fn(&BlockTree) -> Option<Refutation>,
    depth_out: usize,
) -> Result<BlockTree> {
    rel.check_tree(p)?;
    let d = g.depth();
    let mut q = p.clone();
    let mut n = 0;
    while q.split_height(n) < d {
        for sigma in Word::all(n) {
            let r = q.restrict(&sigma);
            let failure = || Error::RefuterFailure { stage: n, node: r.stem().clone() };
            let w = refuter(&r).ok_or_else(failure)?;
            if !validate_refutation(&r, g, rel, &w) {
                return Err(failure());
            }
            let merged = merge_root_block(&r, &w)?;
            q = amalgamate(&q, &sigma, &merged)?;
        }
        n += 1;
    }
    if let Some(bad) = verify_independent(&q, g, rel, depth_out.max(d))? {
        return Err(Error::Precondition(format!("independent tree failed re-verification at {bad}")));
    }
    Ok(q)
}

/// Freezes the blocks 1..K of r along the selectors of z₀ and z₁ (K covering
/// |s₀| and |s₁|) and merges them into the root block.
fn merge_root_block(r: &BlockTree, w: &Refutation) -> Result<BlockTree> {
    let reach = w.s0.len().max(w.s1.len());
    let k = r.blocks_below(reach).max(1);
    let (u0, u1) = r.block(0).clone();
    let mut side0 = u0;
    let mut side1 = u1;
    let h0 = r.stem().len();
    let selector = |z: &crate::cantor::Point, j: usize| {
        let start = r.split_height(j);
        let (a, _) = r.block(j);
        if z.restrict(start + a.len()).suffix_from(start) == *a {
            0
        } else {
            1
        }
    };
    for j in 1..k {
        let (a, b) = r.block(j);
        side0.extend_from(if selector(&w.z0, j) == 0 { a } else { b });
        side1.extend_from(if selector(&w.z1, j) == 0 { a } else { b });
    }
    debug_assert_eq!(side0.len(), r.split_height(k) - h0);
    let unfolded = r.unfolded(k);
    let mut blocks = vec![(side0, side1)];
    blocks.extend(unfolded.explicit_blocks()[k..].iter().cloned());
    Ok(BlockTree::new(r.stem().clone(), blocks, unfolded.tail().clone())?.simplified())
}

/// Re-verifies independence: at every split of q below `depth`, all related
/// cross pairs of nodes at `depth` miss the boxes. Returns a failing split.
pub fn verify_independent(q: &BlockTree, g: &ClopenGraph, rel: Relation, depth: usize) -> Result<Option<Word>> {
    let d = g.depth();
    let mut k = 0;
    while q.split_height(k) < depth.min(d) {
        for sigma in Word::all(k) {
            let r = q.restrict(&sigma);
            let side = |b: u8| -> Vec<Word> {
                r.restrict(&Word::from_bits(vec![b])).nodes_at(depth).into_iter().map(|(x, _)| x).collect()
            };
            let (a, b) = (side(0), side(1));
            let bad = match rel {
                Relation::G1 => {
                    let flip = r.stem().len();
                    a.iter().any(|x| g.has_box(x, &x.flip(flip)))
                }
                Relation::E0 => {
                    let pa: std::collections::BTreeSet<Word> = a.iter().map(|x| x.prefix(d)).collect();
                    let pb: std::collections::BTreeSet<Word> = b.iter().map(|x| x.prefix(d)).collect();
                    pa.iter().any(|x| pb.iter().any(|y| g.has_box(x, y)))
                }
            };
            if bad {
                return Ok(Some(r.stem().clone()));
            }
        }
        k += 1;
    }
    Ok(None)
}

/// A finite ladder approximating a perfect clique below p.
///
/// At every node a selector-fixing refinement r (least frozen first) is
/// chosen that agrees with G and has [r∗0] × [r∗1] inside the boxes at depth d;
/// then both halves are treated the same way, up to `depth_out` levels or
/// until the split reaches depth d. Leaves are extended to depth d along the
/// 0-selector.
pub fn perfect_clique(p: &BlockTree, g: &ClopenGraph, rel: Relation, depth_out: usize) -> Result<FiniteTree> {
    rel.check_tree(p)?;
    let d = g.depth();
    let mut leaves = Vec::new();
    let mut frontier = vec![(p.clone(), 0usize)];
    while let Some((r, level)) = frontier.pop() {
        if r.stem().len() >= d || level >= depth_out {
            leaves.push(r.branch_word(&Word::empty()).restrict(d.max(r.stem().len())));
            continue;
        }
        let mut family = selector_refinements(&r, d, DEFAULT_NODE_BUDGET)?;
        family.sort_by_key(|(a, _)| assignment_key(a));
        let chosen = family.into_iter().map(|(_, t)| t).find(|t| {
            agrees_with(t, g, rel).is_ok_and(|a| a.agrees()) && product_inside(t, g)
        });
        let t = chosen.ok_or_else(|| {
            Error::DensityFailure(format!("no agreeing refinement with full box product below stem \"{}\"", r.stem()))
        })?;
        frontier.push((t.restrict(&Word::from_bits(vec![1])), level + 1));
        frontier.push((t.restrict(&Word::zeros(1)), level + 1));
    }
    let tree = FiniteTree::from_leaves(&leaves);
    for (i, a) in leaves.iter().enumerate() {
        for b in &leaves[i + 1..] {
            if !g.has_box(a, b) {
                return Err(Error::DensityFailure(format!("leaves {a} and {b} are not in a box")));
            }
        }
    }
    Ok(tree)
}

/// [t∗0] × [t∗1] ⊆ G, decided on depth-d prefixes.
fn product_inside(t: &BlockTree, g: &ClopenGraph) -> bool {
    let d = g.depth();
    let sides: Vec<Vec<Word>> = (0..2u8)
        .map(|b| t.restrict(&Word::from_bits(vec![b])).nodes_at(d).into_iter().map(|(x, _)| x).collect())
        .collect();
    !sides[0].is_empty() && sides[0].iter().all(|a| sides[1].iter().all(|b| g.has_box(a, b)))
}
