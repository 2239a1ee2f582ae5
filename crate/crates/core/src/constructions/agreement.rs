use serde::{Deserialize, Serialize};

use crate::cantor::{Difference, Point, Word};
use crate::error::{Error, Result};
use crate::graphs::ClopenGraph;
use crate::trees::BlockTree;

/// The relation whose cross pairs must land in the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// Eventual agreement; for E₀ block trees.
    E0,
    /// Difference at exactly one coordinate; for Silver block trees.
    G1,
}

impl Relation {
    pub fn relates(self, x: &Point, y: &Point) -> bool {
        match (self, x.difference(y)) {
            (Relation::E0, Difference::Finite(d)) => !d.is_empty(),
            (Relation::G1, Difference::Finite(d)) => d.len() == 1,
            _ => false,
        }
    }

    pub(crate) fn check_tree(self, q: &BlockTree) -> Result<()> {
        if self == Relation::G1 && !q.is_silver() {
            return Err(Error::MalformedTree("the G1 relation needs a Silver tree".into()));
        }
        Ok(())
    }
}

/// Related points z₀ ∈ [q∗0], z₁ ∈ [q∗1] with ([s₀] × [s₁]) ∩ G = ∅, s_i ⊆ z_i.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub z0: Point,
    pub z1: Point,
    pub s0: Word,
    pub s1: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AgreementReport {
    /// Every related cross pair lies in a box; `checked` prefix pairs were examined.
    Agrees { checked: usize },
    Refuted(Refutation),
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        matches!(self, AgreementReport::Agrees { .. })
    }
}

/// Whether no box of `g` meets [s₀] × [s₁].
pub fn product_disjoint(g: &ClopenGraph, s0: &Word, s1: &Word) -> bool {
    let d = g.depth();
    if s0.len() >= d && s1.len() >= d {
        return !g.has_box(s0, s1);
    }
    g.boxes().iter().all(|(u, v)| {
        let hits = |a: &Word, b: &Word| a.is_comparable(s0) && b.is_comparable(s1);
        !hits(u, v) && !hits(v, u)
    })
}

/// Selector pairs (x, y), x(0) = 0, y(0) = 1, over the blocks below depth d,
/// whose branches are related; all depth-d prefixes of related cross pairs arise this way.
pub(crate) fn cross_selectors(q: &BlockTree, d: usize, rel: Relation) -> Vec<(Word, Word)> {
    let k = q.blocks_below(d);
    if k == 0 {
        return vec![(Word::zeros(1), Word::from_bits(vec![1]))];
    }
    let rest: Vec<Word> = Word::all(k - 1).collect();
    let zero = Word::zeros(1);
    let one = Word::from_bits(vec![1]);
    match rel {
        Relation::G1 => rest.iter().map(|x| (zero.concat(x), one.concat(x))).collect(),
        Relation::E0 => rest
            .iter()
            .flat_map(|x| rest.iter().map(|y| (zero.concat(x), one.concat(y))))
            .collect(),
    }
}

/// Decides ([q∗0] × [q∗1]) ∩ R ⊆ G for a box graph G at depth d.
///
/// A root split at height ≥ d never agrees, since both sides share their
/// depth-d prefix and boxes are irreflexive.
pub fn agrees_with(q: &BlockTree, g: &ClopenGraph, rel: Relation) -> Result<AgreementReport> {
    rel.check_tree(q)?;
    let d = g.depth();
    let mut checked = 0;
    for (x, y) in cross_selectors(q, d, rel) {
        let (z0, z1) = (q.branch_word(&x), q.branch_word(&y));
        let (s0, s1) = (z0.restrict(d), z1.restrict(d));
        checked += 1;
        if !g.has_box(&s0, &s1) {
            return Ok(AgreementReport::Refuted(Refutation { z0, z1, s0, s1 }));
        }
    }
    Ok(AgreementReport::Agrees { checked })
}

/// Checks a refutation of `r` against the definition.
pub fn validate_refutation(r: &BlockTree, g: &ClopenGraph, rel: Relation, w: &Refutation) -> bool {
    let in_side = |z: &Point, side: u8| branch_in(&r.restrict(&Word::from_bits(vec![side])), z);
    in_side(&w.z0, 0)
        && in_side(&w.z1, 1)
        && rel.relates(&w.z0, &w.z1)
        && w.s0.is_prefix_of(&w.z0.restrict(w.s0.len()))
        && w.s1.is_prefix_of(&w.z1.restrict(w.s1.len()))
        && product_disjoint(g, &w.s0, &w.s1)
}

/// Exact membership of an eventually periodic point in [t]. Past the explicit
/// blocks and the prefix of z, the pair (cycle phase, period phase) repeats,
/// so one joint period decides it.
pub(crate) fn branch_in(t: &BlockTree, z: &Point) -> bool {
    let explicit: usize = t.split_height(t.explicit_blocks().len());
    let cycle_len: usize = match t.tail() {
        crate::trees::Tail::Free => 1,
        crate::trees::Tail::Cycle { blocks } => blocks.iter().map(|b| b.0.len()).sum(),
    };
    let horizon = explicit.max(z.prefix().len()) + 2 * cycle_len * z.period().len() + 2;
    crate::trees::TreeOracle::contains(t, &z.restrict(horizon))
}

/// Selector-fixing refinements of the blocks of p below depth d, each with at
/// least one block left free: assignment (None = free) and tree.
pub fn selector_refinements(p: &BlockTree, d: usize, budget: usize) -> Result<Vec<(Vec<Option<u8>>, BlockTree)>> {
    let k = p.blocks_below(d);
    let count = 3f64.powi(k as i32) - 2f64.powi(k as i32);
    if count > budget as f64 {
        return Err(Error::BudgetExceeded { context: format!("{count} selector refinements below depth {d}") });
    }
    let mut out = Vec::new();
    let mut assignment = vec![None; k];
    loop {
        if assignment.iter().any(Option::is_none) {
            let mut t = p.clone();
            for i in (0..k).rev() {
                if let Some(side) = assignment[i] {
                    t = t.freeze(i, side);
                }
            }
            out.push((assignment.clone(), t));
        }
        // Odometer over {None, 0, 1}^k.
        let mut i = 0;
        loop {
            if i == k {
                return Ok(out);
            }
            assignment[i] = match assignment[i] {
                None => Some(0),
                Some(0) => Some(1),
                _ => None,
            };
            if assignment[i].is_some() {
                break;
            }
            i += 1;
        }
    }
}

/// Order key: frozen count, then positions with 0 < 1 < free.
pub(crate) fn assignment_key(a: &[Option<u8>]) -> (usize, Vec<u8>) {
    let frozen = a.iter().filter(|c| c.is_some()).count();
    (frozen, a.iter().map(|c| c.unwrap_or(2)).collect())
}

/// Whether refinement `a` lies below refinement `b`.
pub(crate) fn assignment_below(a: &[Option<u8>], b: &[Option<u8>]) -> bool {
    a.iter().zip(b).all(|(x, y)| y.is_none() || x == y)
}
