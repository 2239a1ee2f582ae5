use serde::{Deserialize, Serialize};

use super::Word;
use crate::error::{Error, Result};

/// A dense sequence (sₖ) with |sₖ| = k.
///
/// `Canonical` pads the length-lexicographic enumeration e₀ = ∅, e₁ = 0,
/// e₂ = 1, e₃ = 00, … with zeros: sₖ = eₖ ⌢ 0^(k − |eₖ|). `Explicit` overrides
/// the first terms with a given table and falls back to the canonical rule
/// afterwards, which keeps the sequence dense.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum DenseSequence {
    #[default]
    Canonical,
    Explicit { terms: Vec<Word> },
}

/// Level of eₖ in the length-lex enumeration: the `l` with 2^l − 1 ≤ k < 2^(l+1) − 1.
fn enumeration_level(k: usize) -> usize {
    (usize::BITS - 1 - (k + 1).leading_zeros()) as usize
}

/// eₖ, the k-th word in length-lexicographic order.
pub fn length_lex_word(k: usize) -> Word {
    let l = enumeration_level(k);
    Word::from_index(l, (k + 1 - (1usize << l)) as u64)
}

fn length_lex_index(word: &Word) -> usize {
    (1usize << word.len()) - 1 + word.to_index() as usize
}

impl DenseSequence {
    pub fn explicit(terms: Vec<Word>) -> Result<Self> {
        if let Some((k, t)) = terms.iter().enumerate().find(|(k, t)| t.len() != *k) {
            return Err(Error::Precondition(format!(
                "dense sequence term {k} has length {} (expected {k})",
                t.len()
            )));
        }
        Ok(DenseSequence::Explicit { terms })
    }

    /// The unpadded head of sₖ; every bit of sₖ past it is 0.
    pub fn head(&self, k: usize) -> Word {
        match self {
            DenseSequence::Explicit { terms } if k < terms.len() => terms[k].clone(),
            _ => length_lex_word(k),
        }
    }

    /// sₖ.
    pub fn term(&self, k: usize) -> Word {
        let mut t = self.head(k);
        t.extend_from(&Word::zeros(k - t.len()));
        t
    }

    /// Bit `j < k` of sₖ, without materializing the term.
    pub fn term_bit(&self, k: usize, j: usize) -> u8 {
        debug_assert!(j < k);
        match self {
            DenseSequence::Explicit { terms } if k < terms.len() => terms[k].bit(j),
            _ => {
                let l = enumeration_level(k);
                if j >= l {
                    0
                } else {
                    let index = k + 1 - (1usize << l);
                    ((index >> (l - 1 - j)) & 1) as u8
                }
            }
        }
    }

    /// Whether sₖ ⊇ v.
    pub fn extends(&self, k: usize, v: &Word) -> bool {
        k >= v.len() && (0..v.len()).all(|j| self.term_bit(k, j) == v.bit(j))
    }

    /// All k ≥ `min_k` with sₖ ⊇ v, increasing. The iterator is infinite.
    pub fn extensions<'a>(&'a self, v: &'a Word, min_k: usize) -> Box<dyn Iterator<Item = usize> + 'a> {
        let start = min_k.max(v.len());
        match self {
            DenseSequence::Explicit { terms } if start < terms.len() => {
                let len = terms.len();
                let head = (start..len).filter(move |&k| terms[k].bits().starts_with(v.bits()));
                Box::new(head.chain(canonical_extensions(v, len)))
            }
            _ => Box::new(canonical_extensions(v, start)),
        }
    }

    /// Least k ≥ `min_k` with sₖ ⊇ v.
    pub fn first_extending(&self, v: &Word, min_k: usize) -> usize {
        self.extensions(v, min_k)
            .next()
            .expect("dense sequences have extensions of every word")
    }
}

/// Canonical k ≥ min with sₖ ⊇ v, grouped by the level of eₖ.
fn canonical_extensions(v: &Word, min: usize) -> impl Iterator<Item = usize> + '_ {
    let min = min.max(v.len());
    (0..usize::BITS as usize - 2).flat_map(move |l| {
        let (lo, hi) = if l < v.len() {
            if v.bits()[l..].iter().any(|&b| b == 1) {
                (1, 0)
            } else {
                let k = length_lex_index(&v.prefix(l));
                (k, k + 1)
            }
        } else {
            let spread = 1usize << (l - v.len());
            let k = (1usize << l) - 1 + v.to_index() as usize * spread;
            (k, k + spread)
        };
        lo.max(min)..hi.max(min)
    })
}
