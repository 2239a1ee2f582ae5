use serde::Serialize;

use crate::cantor::{ClopenSet, DenseSequence, Word};
use crate::error::{Error, Result};
use crate::trees::FiniteTree;

/// Result of [`fat_extend`]: the extended tree and the split chosen per shift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extension {
    pub tree: FiniteTree,
    /// (t, n_t) in length-lex order of t.
    pub splits: Vec<(Word, usize)>,
}

/// Coordinate pattern of a uniform tree whose leaves all have the same length.
pub(crate) fn uniform_pattern(p: &FiniteTree) -> Result<Vec<Option<u8>>> {
    let h = p.height();
    if !p.is_uniform() || p.leaves().iter().any(|l| l.len() != h) {
        return Err(Error::Precondition("fat_extend needs a uniform tree of constant height".into()));
    }
    Ok((0..h)
        .map(|c| {
            let x = &p.level(c)[0];
            let kids: Vec<u8> = (0..2).filter(|&b| p.nodes().contains(&x.child(b))).collect();
            if kids.len() == 2 {
                None
            } else {
                Some(kids[0])
            }
        })
        .collect())
}

/// Words of length `pattern.len()` consistent with the pattern.
pub(crate) fn pattern_words(pattern: &[Option<u8>]) -> Vec<Word> {
    let mut words = vec![Word::empty()];
    for c in pattern {
        words = words
            .into_iter()
            .flat_map(|x| match c {
                Some(b) => vec![x.child(*b)],
                None => vec![x.child(0), x.child(1)],
            })
            .collect();
    }
    words
}

/// One fat level on top of a uniform tree p of height h whose leaves lie in A.
///
/// For each t ∈ 2^h in order, n_t is the least n past the current height with
/// s_n↾h = t and s_n consistent with the coordinates fixed so far; the
/// coordinates up to n_t copy s_n and n_t becomes free. Each pass doubles the
/// leaf count. `budget` caps the candidate indices and the leaf count.
pub fn fat_extend(p: &FiniteTree, a: &ClopenSet, budget: usize) -> Result<Extension> {
    let mut pattern = uniform_pattern(p)?;
    let h = pattern.len();
    if let Some(l) = p.leaves().iter().find(|l| !a.contains_cylinder(l)) {
        return Err(Error::Precondition(format!("leaf {l} is not inside the set")));
    }
    let dense = DenseSequence::Canonical;
    let mut splits = Vec::new();
    for t in Word::all(h) {
        let c = pattern.len();
        let consistent = |n: usize| (h..c).all(|j| pattern[j].is_none_or(|b| dense.term_bit(n, j) == b));
        let n = dense
            .extensions(&t, c)
            .take_while(|&n| n < budget)
            .find(|&n| consistent(n))
            .ok_or_else(|| Error::BudgetExceeded { context: format!("no split for shift {t} below index {budget}") })?;
        let sn = dense.term(n);
        pattern.extend((c..n).map(|j| Some(sn.bit(j))));
        pattern.push(None);
        splits.push((t, n));
    }
    let free = pattern.iter().filter(|c| c.is_none()).count();
    if free >= usize::BITS as usize || 1usize << free > budget {
        return Err(Error::BudgetExceeded { context: format!("extension has 2^{free} leaves") });
    }
    let tree = FiniteTree::from_leaves(&pattern_words(&pattern));

    let leaf = p.leaves()[0].clone();
    for (t, n) in &splits {
        let node = dense.term(*n).xor(&t.xor(&leaf));
        let splits_here = (0..2).all(|b| tree.nodes().contains(&node.child(b)));
        if !splits_here {
            return Err(Error::FatnessMissing { node, shift: t.clone() });
        }
    }
    Ok(Extension { tree, splits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::w;

    #[test]
    fn first_split() {
        let root = FiniteTree::from_leaves(&[Word::empty()]);
        let ext = fat_extend(&root, &ClopenSet::full(), 1 << 16).unwrap();
        assert_eq!(ext.tree.leaves().len(), 2);
        assert_eq!(ext.splits, vec![(Word::empty(), 0)]);
    }

    #[test]
    fn one_level_of_growth() {
        let p = FiniteTree::from_leaves(&[w("0"), w("1")]);
        let ext = fat_extend(&p, &ClopenSet::full(), 1 << 16).unwrap();
        assert_eq!(ext.tree.leaves().len(), 8);
        assert_eq!(ext.splits, vec![(w("0"), 1), (w("1"), 2)]);
        let again = fat_extend(&ext.tree, &ClopenSet::full(), 1 << 16).unwrap();
        assert_eq!(again.tree.leaves().len(), 8 << 8);
    }

    #[test]
    fn leaves_must_lie_inside() {
        let p = FiniteTree::from_leaves(&[w("0"), w("1")]);
        let a = ClopenSet::cylinder(&w("0"));
        assert!(matches!(fat_extend(&p, &a, 1 << 16), Err(Error::Precondition(_))));
        let skew = FiniteTree::from_leaves(&[w("00"), w("1")]);
        assert!(fat_extend(&skew, &ClopenSet::full(), 1 << 16).is_err());
    }
}
