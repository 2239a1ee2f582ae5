use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::TreeOracle;
use crate::cantor::Word;
use crate::error::{Error, Result};

/// A finite, downward closed, nonempty set of words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFiniteTree")]
pub struct FiniteTree {
    nodes: BTreeSet<Word>,
}

#[derive(Deserialize)]
struct RawFiniteTree {
    nodes: Vec<Word>,
}

impl TryFrom<RawFiniteTree> for FiniteTree {
    type Error = Error;

    fn try_from(raw: RawFiniteTree) -> Result<Self> {
        FiniteTree::new(raw.nodes)
    }
}

impl FiniteTree {
    /// Rejects node sets that are empty or not closed under prefixes.
    pub fn new(nodes: impl IntoIterator<Item = Word>) -> Result<Self> {
        let nodes: BTreeSet<Word> = nodes.into_iter().collect();
        if !nodes.contains(&Word::empty()) {
            return Err(Error::MalformedTree("finite tree must contain the empty word".into()));
        }
        if let Some(s) = nodes.iter().find(|s| !s.is_empty() && !nodes.contains(&s.prefix(s.len() - 1))) {
            return Err(Error::MalformedTree(format!("node {s} lacks its parent")));
        }
        Ok(FiniteTree { nodes })
    }

    /// The downward closure of `leaves`.
    pub fn from_leaves<'a>(leaves: impl IntoIterator<Item = &'a Word>) -> Self {
        let mut nodes = BTreeSet::from([Word::empty()]);
        for leaf in leaves {
            for n in 1..=leaf.len() {
                nodes.insert(leaf.prefix(n));
            }
        }
        FiniteTree { nodes }
    }

    pub fn nodes(&self) -> &BTreeSet<Word> {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// ht: the maximal node length.
    pub fn height(&self) -> usize {
        self.nodes.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Nodes without children.
    pub fn leaves(&self) -> Vec<Word> {
        self.nodes
            .iter()
            .filter(|s| !self.nodes.contains(&s.child(0)) && !self.nodes.contains(&s.child(1)))
            .cloned()
            .collect()
    }

    pub fn level(&self, n: usize) -> Vec<Word> {
        self.nodes.iter().filter(|s| s.len() == n).cloned().collect()
    }

    /// Uniform: all leaves have length ht.
    pub fn is_uniform(&self) -> bool {
        let h = self.height();
        self.leaves().iter().all(|l| l.len() == h)
    }
}

impl TreeOracle for FiniteTree {
    fn contains(&self, s: &Word) -> bool {
        self.nodes.contains(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::w;

    #[test]
    fn validation_and_closure() {
        assert!(FiniteTree::new([w("0")]).is_err());
        assert!(FiniteTree::new([w(""), w("01")]).is_err());
        let t = FiniteTree::from_leaves(&[w("01"), w("11")]);
        assert_eq!(t.len(), 5);
        assert_eq!(t.height(), 2);
        assert!(t.is_uniform());
        assert_eq!(t.leaves(), vec![w("01"), w("11")]);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"nodes":["","0","01","1","11"]}"#);
        assert_eq!(serde_json::from_str::<FiniteTree>(&json).unwrap(), t);
    }
}
