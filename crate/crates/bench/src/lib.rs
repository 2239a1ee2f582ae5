//! Inputs shared by the benchmarks.

use treeforce::graphs::ClopenGraph;
use treeforce::trees::BlockTree;
use treeforce::Word;

/// Pattern fixing the odd coordinates below `2n` to 0.
pub fn odd_fixing(n: usize) -> BlockTree {
    let pattern: Vec<Option<u8>> = (0..2 * n).map(|c| if c % 2 == 1 { Some(0) } else { None }).collect();
    BlockTree::silver(&pattern)
}

/// Copy pairs of the full tree at depth d plus the boxes (0u, 0v) for u < v of weight parity 0.
pub fn copy_closed_graph(d: usize) -> ClopenGraph {
    let words: Vec<Word> = Word::all(d).collect();
    let mut pairs: Vec<(Word, Word)> = words.iter().map(|z| (z.clone(), z.flip(0))).collect();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            if u.bit(0) == v.bit(0) && (u.popcount() + v.popcount()) % 2 == 0 {
                pairs.push((u.clone(), v.clone()));
            }
        }
    }
    ClopenGraph::new(d, pairs).expect("valid boxes")
}
