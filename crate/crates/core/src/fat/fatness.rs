use serde::Serialize;

use crate::cantor::{DenseSequence, Word};
use crate::error::{Error, Result};
use crate::trees::BlockTree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ShiftVerdict {
    /// s_k is a splitting node of p_s + t.
    Witness { k: usize, node: Word },
    /// No k below `depth` works.
    Exhausted { depth: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FatnessEntry {
    pub node: Word,
    pub shift: Word,
    #[serde(flatten)]
    pub verdict: ShiftVerdict,
}

/// Per splitting node s and shift t ∈ 2^|s|, whether ([p_s] + t)² meets G₀.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FatnessReport {
    pub split_depth: usize,
    pub probe_depth: usize,
    pub entries: Vec<FatnessEntry>,
}

impl FatnessReport {
    pub fn is_fat(&self) -> bool {
        self.entries.iter().all(|e| matches!(e.verdict, ShiftVerdict::Witness { .. }))
    }

    /// The first (s, t) without a witness.
    pub fn first_missing(&self) -> Option<&FatnessEntry> {
        self.entries.iter().find(|e| matches!(e.verdict, ShiftVerdict::Exhausted { .. }))
    }
}

/// Least k in [|s|, probe) with coordinate k free in p and s_k a node of
/// p_s + t, where the shifted tree fixes the coordinates below |s| to s ⊕ t
/// and otherwise follows p.
///
/// Two branches of a Silver tree are a G₀-edge exactly when they differ at
/// one free coordinate k and share the prefix s_k, so this decides whether
/// the square of [p_s] + t meets G₀ (up to the probe).
pub fn shift_witness(
    dense: &DenseSequence,
    pattern: &[Option<u8>],
    s: &Word,
    t: &Word,
    probe: usize,
) -> Option<usize> {
    let v = s.xor(t);
    let consistent = |k: usize| {
        pattern[k].is_none()
            && (s.len()..k).all(|c| pattern[c].is_none_or(|b| dense.term_bit(k, c) == b))
    };
    let found = dense.extensions(&v, s.len()).take_while(|&k| k < probe).find(|&k| consistent(k));
    found
}

/// Checks G₀-fatness at the splitting nodes s of p with |s| < `split_depth`.
pub fn is_fat(p: &BlockTree, split_depth: usize, probe_depth: usize) -> Result<FatnessReport> {
    if probe_depth < split_depth {
        return Err(Error::Precondition(format!("probe depth {probe_depth} below split depth {split_depth}")));
    }
    let pattern = p
        .silver_pattern(probe_depth)
        .ok_or_else(|| Error::MalformedTree("fatness is checked on Silver trees".into()))?;
    let dense = DenseSequence::Canonical;
    let mut entries = Vec::new();
    let mut n = 0;
    while p.split_height(n) < split_depth {
        for s in p.splitting_level(n) {
            for t in Word::all(s.len()) {
                let verdict = match shift_witness(&dense, &pattern, &s, &t, probe_depth) {
                    Some(k) => ShiftVerdict::Witness { k, node: dense.term(k) },
                    None => ShiftVerdict::Exhausted { depth: probe_depth },
                };
                entries.push(FatnessEntry { node: s.clone(), shift: t, verdict });
            }
        }
        n += 1;
    }
    Ok(FatnessReport { split_depth, probe_depth, entries })
}

/// Probe depth that settles fatness at nodes of length < `h` when every
/// coordinate from `h` on is free: s_k can be taken with |e_k| = h.
pub fn sufficient_probe(h: usize) -> usize {
    (1 << (h + 1)).max(h + 1)
}
