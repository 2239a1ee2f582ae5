use serde::Serialize;

use crate::cantor::{ClopenSet, DenseSequence, Shift, Word};
use crate::error::{Error, Result};

/// Result of [`fatclaim_step`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimStep {
    pub n: usize,
    pub set: ClopenSet,
}

/// Shift step inside a nonempty clopen set A.
///
/// With u the least member cylinder of A and n the least index ≥ |u| with
/// s_n ⊇ u ⊕ t, returns A_t = {x ∈ A : s_n ⊆ x + t, x + 1_n ∈ A}. Both
/// postconditions, A_t + 1_n ⊆ A and s_n ⊆ stem(A_t + t), and nonemptiness
/// are re-verified before returning.
pub fn fatclaim_step(a: &ClopenSet, s: &Word, t: &Word) -> Result<ClaimStep> {
    let stem = a.stem_of()?;
    if !stem.is_prefix_of(s) {
        return Err(Error::Precondition(format!("{s} does not extend the stem {stem}")));
    }
    if t.len() != s.len() {
        return Err(Error::Precondition(format!("shift {t} and node {s} differ in length")));
    }
    let dense = DenseSequence::Canonical;
    let u = a.first().expect("nonempty").clone();
    let n = dense.first_extending(&u.xor(t), u.len());
    let sn = dense.term(n);
    // n ≥ |u ⊕ t|, so members agree with s_n ⊕ t below n and only the
    // coordinates from n up to the depth vary.
    let depth = (n + 1).max(t.len()).max(a.depth());
    let v = sn.xor(t).prefix(n);
    let words = Word::all(depth - n)
        .map(|tail| v.concat(&tail))
        .filter(|x| a.contains_cylinder(x) && a.contains_cylinder(&x.flip(n)));
    let set = ClopenSet::new(depth, words)?;

    if set.is_empty() {
        return Err(Error::CertificateViolation { index: n });
    }
    if !set.shift(&Shift::Unit(n)).is_subset(a) {
        return Err(Error::CertificateViolation { index: n });
    }
    if !sn.is_prefix_of(&set.shift(&Shift::Word(t.clone())).stem_of()?) {
        return Err(Error::CertificateViolation { index: n });
    }
    Ok(ClaimStep { n, set })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::w;

    #[test]
    fn full_space() {
        let step = fatclaim_step(&ClopenSet::full(), &w(""), &w("")).unwrap();
        assert_eq!(step.n, 0);
        assert!(step.set.same_set(&ClopenSet::full()));
        assert_eq!(step.set.depth(), 1);
    }

    #[test]
    fn one_cylinder() {
        let a = ClopenSet::cylinder(&w("1"));
        let step = fatclaim_step(&a, &w("1"), &w("0")).unwrap();
        assert_eq!(step.n, 2);
        assert_eq!(step.set, ClopenSet::new(3, [w("100"), w("101")]).unwrap());
    }

    #[test]
    fn stem_precondition() {
        let a = ClopenSet::cylinder(&w("01"));
        assert!(matches!(fatclaim_step(&a, &w("00"), &w("00")), Err(Error::Precondition(_))));
        assert!(matches!(fatclaim_step(&ClopenSet::empty(2), &w(""), &w("")), Err(Error::EmptyInput(_))));
    }
}
