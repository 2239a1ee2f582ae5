use std::fmt;

use serde::{Deserialize, Serialize};

use super::Word;
use crate::error::{Error, Result};

/// An eventually periodic point of 2^ω, `prefix ⌢ period ⌢ period ⌢ …`.
///
/// Points are always stored in canonical form (primitive period, shortest
/// prefix), so structural equality is equality of the denoted sequences.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPoint")]
pub struct Point {
    prefix: Word,
    period: Word,
}

#[derive(Deserialize)]
struct RawPoint {
    prefix: Word,
    period: Word,
}

impl TryFrom<RawPoint> for Point {
    type Error = Error;

    fn try_from(raw: RawPoint) -> Result<Self> {
        Point::new(raw.prefix, raw.period)
    }
}

/// How two points differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Difference {
    /// The points differ at exactly these coordinates (ascending).
    Finite(Vec<usize>),
    /// The points differ at infinitely many coordinates.
    Infinite,
}

impl Point {
    pub fn new(prefix: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Parse("point period must be nonempty".into()));
        }
        Ok(Self::canonical(prefix, period))
    }

    /// `word ⌢ 000…`.
    pub fn zero_padded(word: &Word) -> Self {
        Self::canonical(word.clone(), Word::zeros(1))
    }

    /// The indicator sequence 1ₙ.
    pub fn unit(n: usize) -> Self {
        Self::zero_padded(&Word::unit(n))
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    fn canonical(prefix: Word, period: Word) -> Self {
        let period = primitive_root(&period);
        let mut prefix = prefix.bits().to_vec();
        let mut period = period.bits().to_vec();
        while let (Some(&last), Some(&plast)) = (prefix.last(), period.last()) {
            if last != plast {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Point {
            prefix: Word::from_bits(prefix),
            period: Word::from_bits(period),
        }
    }

    pub fn bit(&self, n: usize) -> u8 {
        if n < self.prefix.len() {
            self.prefix.bit(n)
        } else {
            self.period.bit((n - self.prefix.len()) % self.period.len())
        }
    }

    /// x↾n.
    pub fn restrict(&self, n: usize) -> Word {
        Word::from_bits((0..n).map(|i| self.bit(i)).collect())
    }

    /// Length after which both points are periodic with a common period.
    fn horizon(&self, other: &Point) -> (usize, usize) {
        let start = self.prefix.len().max(other.prefix.len());
        let period = lcm(self.period.len(), other.period.len());
        (start, period)
    }

    /// Coordinatewise sum mod 2.
    pub fn xor(&self, other: &Point) -> Point {
        let (start, period) = self.horizon(other);
        let bits = |range: std::ops::Range<usize>| {
            Word::from_bits(range.map(|i| self.bit(i) ^ other.bit(i)).collect())
        };
        Self::canonical(bits(0..start), bits(start..start + period))
    }

    /// Shift by a finite word (zero-padded), flipping finitely many coordinates.
    pub fn xor_word(&self, shift: &Word) -> Point {
        self.xor(&Point::zero_padded(shift))
    }

    pub fn difference(&self, other: &Point) -> Difference {
        let (start, period) = self.horizon(other);
        if (start..start + period).any(|i| self.bit(i) != other.bit(i)) {
            return Difference::Infinite;
        }
        Difference::Finite((0..start).filter(|&i| self.bit(i) != other.bit(i)).collect())
    }

    /// Prepends a word.
    pub fn prepend(&self, head: &Word) -> Point {
        Self::canonical(head.concat(&self.prefix), self.period.clone())
    }

    /// Drops the first `n` coordinates.
    pub fn drop_front(&self, n: usize) -> Point {
        if n <= self.prefix.len() {
            Self::canonical(self.prefix.suffix_from(n), self.period.clone())
        } else {
            let k = (n - self.prefix.len()) % self.period.len();
            let mut bits = self.period.bits().to_vec();
            bits.rotate_left(k);
            Self::canonical(Word::empty(), Word::from_bits(bits))
        }
    }
}

fn primitive_root(period: &Word) -> Word {
    let n = period.len();
    for d in 1..=n {
        if n % d == 0 && (0..n).all(|i| period.bit(i) == period.bit(i % d)) {
            return period.prefix(d);
        }
    }
    period.clone()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})^ω", self.prefix, self.period)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point({self})")
    }
}

/// Shorthand for points in tests. Panics on bad input.
pub fn pt(prefix: &str, period: &str) -> Point {
    Point::new(super::w(prefix), super::w(period)).expect("point literal")
}
