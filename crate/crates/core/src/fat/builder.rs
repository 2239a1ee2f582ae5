use crate::cantor::{ClopenSet, Word};
use crate::error::{Error, Result};
use crate::trees::{branches_subset, BlockTree};

use super::fatness::{is_fat, sufficient_probe};

/// Depth of the containment check on the output.
const CONTAINMENT_DEPTH: usize = 20;

/// A fat Silver tree with all branches in a nonempty clopen set A.
///
/// The coordinates below depth(A) get the first Silver pattern inside A in
/// the order free > 0 > 1, coordinate by coordinate; every later coordinate
/// is free. The tree carries at least `levels` explicit blocks. A Silver tree
/// whose coordinates past some point are all free is fat, and the output is
/// checked with [`is_fat`] on its explicit splits and with
/// [`branches_subset`] against A. `budget` caps the pattern search.
pub fn g0_tree_inside(a: &ClopenSet, levels: usize, budget: usize) -> Result<BlockTree> {
    if a.is_empty() {
        return Err(Error::EmptyInput("no tree inside an empty set".into()));
    }
    let mut visited = 0;
    let mut pattern = Vec::with_capacity(a.depth());
    let found = search(a, &mut pattern, vec![Word::empty()], &mut visited, budget)?;
    debug_assert!(found, "a member cylinder is always a fixed pattern");
    let free = pattern.iter().filter(|c| c.is_none()).count();
    let tree = BlockTree::silver(&pattern).unfolded(levels.max(free));

    if !branches_subset(&tree, a, CONTAINMENT_DEPTH.max(a.depth()))? {
        return Err(Error::Precondition("pattern tree left the set".into()));
    }
    let blocks = tree.explicit_blocks().len();
    if blocks > 0 {
        let split_depth = tree.split_height(blocks - 1) + 1;
        let report = is_fat(&tree, split_depth, sufficient_probe(split_depth.max(a.depth())))?;
        if let Some(miss) = report.first_missing() {
            return Err(Error::FatnessMissing { node: miss.node.clone(), shift: miss.shift.clone() });
        }
    }
    Ok(tree)
}

/// Depth-first search over patterns; `words` are the pattern's words so far.
fn search(
    a: &ClopenSet,
    pattern: &mut Vec<Option<u8>>,
    words: Vec<Word>,
    visited: &mut usize,
    budget: usize,
) -> Result<bool> {
    *visited += 1;
    if *visited > budget {
        return Err(Error::BudgetExceeded { context: format!("pattern search inside a set of depth {}", a.depth()) });
    }
    if pattern.len() == a.depth() {
        return Ok(words.iter().all(|x| a.words().contains(x)));
    }
    for choice in [None, Some(0), Some(1)] {
        let next: Vec<Word> = match choice {
            None => words.iter().flat_map(|x| [x.child(0), x.child(1)]).collect(),
            Some(b) => words.iter().map(|x| x.child(b)).collect(),
        };
        if !next.iter().all(|x| a.meets_cylinder(x)) {
            continue;
        }
        pattern.push(choice);
        if search(a, pattern, next, visited, budget)? {
            return Ok(true);
        }
        pattern.pop();
    }
    Ok(false)
}
