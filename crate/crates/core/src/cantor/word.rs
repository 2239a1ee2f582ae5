use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite binary word, an element of 2^<ω.
///
/// The derived `Ord` is the lexicographic order in which a proper prefix
/// precedes its extensions. Use [`Word::cmp_length_lex`] for the
/// length-lexicographic order.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from bits, each of which must be 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Word(bits)
    }

    pub fn zeros(len: usize) -> Self {
        Word(vec![0; len])
    }

    /// The word of length `len` whose big-endian binary value is `index`.
    pub fn from_index(len: usize, index: u64) -> Self {
        let bits = (0..len)
            .map(|i| ((index >> (len - 1 - i)) & 1) as u8)
            .collect();
        Word(bits)
    }

    /// Inverse of [`Word::from_index`]; only meaningful for words of length < 64.
    pub fn to_index(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    /// The indicator word 0ⁿ1 of coordinate `n`, as a finite word.
    pub fn unit(n: usize) -> Self {
        let mut bits = vec![0; n + 1];
        bits[n] = 1;
        Word(bits)
    }

    /// All words of length `len`, in lexicographic order.
    pub fn all(len: usize) -> impl Iterator<Item = Word> {
        assert!(len < 64, "refusing to enumerate 2^{len} words");
        (0..(1u64 << len)).map(move |i| Word::from_index(len, i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.0[i]
    }

    /// Bit `i`, reading past the end as 0.
    pub fn bit_padded(&self, i: usize) -> u8 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn push(&mut self, bit: u8) {
        debug_assert!(bit <= 1);
        self.0.push(bit);
    }

    pub fn child(&self, bit: u8) -> Word {
        let mut w = self.clone();
        w.push(bit);
        w
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        Word(bits)
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start.min(self.0.len())..].to_vec())
    }

    /// `self ⊆ other` as sequences, i.e. `other` extends `self`.
    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_comparable(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn flip(&self, i: usize) -> Word {
        let mut w = self.clone();
        w.0[i] ^= 1;
        w
    }

    /// Coordinatewise sum mod 2; the shorter word is zero-padded.
    pub fn xor(&self, other: &Word) -> Word {
        let n = self.len().max(other.len());
        Word((0..n).map(|i| self.bit_padded(i) ^ other.bit_padded(i)).collect())
    }

    /// Sum mod 2 with `shift`, keeping the length of `self`.
    pub fn shifted(&self, shift: &Word) -> Word {
        Word(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &b)| b ^ shift.bit_padded(i))
                .collect(),
        )
    }

    pub fn popcount(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// Length-lexicographic order: shorter words first, ties broken lexicographically.
    pub fn cmp_length_lex(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp(other))
    }

    pub fn longest_common_prefix(&self, other: &Word) -> Word {
        let n = self
            .0
            .iter()
            .zip(&other.0)
            .take_while(|(a, b)| a == b)
            .count();
        self.prefix(n)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("invalid bit {other:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for building words in tests and examples. Panics on bad input.
pub fn w(s: &str) -> Word {
    s.parse().expect("word literal")
}
