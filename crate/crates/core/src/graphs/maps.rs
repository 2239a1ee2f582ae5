use serde::{Deserialize, Serialize};

use crate::cantor::{Point, Word};

/// A continuous map 2^ω → 2^ω given by a monotone rule on words.
///
/// Injectivity is a property of the rule, not a flag the caller sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum WordMap {
    Identity,
    /// x ↦ w⌢x.
    Prepend { word: Word },
    /// x ↦ x + t.
    Xor { word: Word },
    /// Replaces every 0 by `zero` and every 1 by `one`.
    Substitute { zero: Word, one: Word },
    /// Overwrites the first `len` coordinates with 0.
    ZeroPrefix { len: usize },
    /// The constant map with value `point`.
    Constant { point: Point },
}

impl WordMap {
    pub fn is_injective(&self) -> bool {
        match self {
            WordMap::Identity | WordMap::Prepend { .. } | WordMap::Xor { .. } => true,
            // A two-word code is uniquely decodable on infinite words iff the words do not commute.
            WordMap::Substitute { zero, one } => {
                !zero.is_empty() && !one.is_empty() && zero.concat(one) != one.concat(zero)
            }
            WordMap::ZeroPrefix { len } => *len == 0,
            WordMap::Constant { .. } => false,
        }
    }

    /// Whether the rule produces an infinite sequence from every point.
    pub fn is_total(&self) -> bool {
        match self {
            WordMap::Substitute { zero, one } => !zero.is_empty() && !one.is_empty(),
            _ => true,
        }
    }

    /// Image of a finite word; monotone in `s`.
    pub fn apply_word(&self, s: &Word) -> Word {
        match self {
            WordMap::Identity => s.clone(),
            WordMap::Prepend { word } => word.concat(s),
            WordMap::Xor { word } => s.shifted(word),
            WordMap::Substitute { zero, one } => {
                let mut out = Word::empty();
                for &b in s.bits() {
                    out.extend_from(if b == 0 { zero } else { one });
                }
                out
            }
            WordMap::ZeroPrefix { len } => {
                let head = Word::zeros((*len).min(s.len()));
                head.concat(&s.suffix_from(*len))
            }
            WordMap::Constant { point } => point.restrict(s.len()),
        }
    }

    /// Image of a point. Panics for a `Substitute` rule with an empty word.
    pub fn apply_point(&self, x: &Point) -> Point {
        match self {
            WordMap::Identity => x.clone(),
            WordMap::Prepend { word } => x.prepend(word),
            WordMap::Xor { word } => x.xor_word(word),
            WordMap::Substitute { .. } => {
                assert!(self.is_total(), "substitution by an empty word is not total");
                Point::new(self.apply_word(x.prefix()), self.apply_word(x.period()))
                    .expect("nonempty period")
            }
            WordMap::ZeroPrefix { len } => {
                let mask = Point::zero_padded(&x.restrict(*len));
                x.xor(&mask)
            }
            WordMap::Constant { point } => point.clone(),
        }
    }
}
