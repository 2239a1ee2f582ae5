use std::sync::{Arc, Mutex};

use super::{leq_n, LazyTree, TreeOracle};
use crate::cantor::Word;
use crate::error::{Error, Result};

struct Cache<T> {
    trees: Vec<Arc<T>>,
    /// Number of leading certificates pₙ₊₁ ≤ₙ pₙ verified so far.
    verified: usize,
}

/// A stream n ↦ pₙ with lazily verified certificates pₙ₊₁ ≤ₙ pₙ.
///
/// Trees and certificate results are memoized; the cache is shared by clones.
pub struct FusionSequence<T> {
    generator: Arc<dyn Fn(usize) -> T + Send + Sync>,
    bound: usize,
    cache: Arc<Mutex<Cache<T>>>,
}

impl<T> Clone for FusionSequence<T> {
    fn clone(&self) -> Self {
        FusionSequence { generator: self.generator.clone(), bound: self.bound, cache: self.cache.clone() }
    }
}

impl<T: TreeOracle + Send + Sync + 'static> FusionSequence<T> {
    /// `bound` is the length bound passed to the ≤ₙ checks.
    pub fn new(bound: usize, generator: impl Fn(usize) -> T + Send + Sync + 'static) -> Self {
        FusionSequence {
            generator: Arc::new(generator),
            bound,
            cache: Arc::new(Mutex::new(Cache { trees: Vec::new(), verified: 0 })),
        }
    }

    pub fn get(&self, n: usize) -> Arc<T> {
        let mut cache = self.cache.lock().expect("fusion cache poisoned");
        while cache.trees.len() <= n {
            let k = cache.trees.len();
            cache.trees.push(Arc::new((self.generator)(k)));
        }
        cache.trees[n].clone()
    }

    /// Verifies pₙ₊₁ ≤ₙ pₙ for all n < m. A failure names the index n + 1.
    pub fn verify_upto(&self, m: usize) -> Result<()> {
        let start = self.cache.lock().expect("fusion cache poisoned").verified;
        for n in start..m {
            let (p, q) = (self.get(n), self.get(n + 1));
            if !leq_n(&*q, &*p, n, self.bound)? {
                return Err(Error::CertificateViolation { index: n + 1 });
            }
            let mut cache = self.cache.lock().expect("fusion cache poisoned");
            cache.verified = cache.verified.max(n + 1);
        }
        Ok(())
    }

    /// Index m deciding membership of words of length `len`: the least m with
    /// every node of Lₘ(pₘ) of length ≥ len. Since |σ*| ≥ |σ|, m ≤ len.
    fn deciding_index(&self, len: usize) -> Result<usize> {
        for m in 0..len {
            if self.get(m).min_level_height(m, self.bound)? >= len {
                return Ok(m);
            }
        }
        Ok(len)
    }
}

/// The fusion q = ⋂ₙ pₙ as a membership oracle.
///
/// Certificates up to `horizon` are checked here. Queries that need later
/// terms verify them on the fly and panic on a violation, since a
/// membership oracle cannot return an error.
///
/// A word s of length ≤ min{|τ| : τ ∈ Lₘ(pₘ)} lies below some τ ∈ Lₘ(pₘ), and
/// every later pₖ keeps Lₘ, so s ∈ q iff s ∈ pₘ.
pub fn fusion<T: TreeOracle + Send + Sync + 'static>(seq: &FusionSequence<T>, horizon: usize) -> Result<LazyTree> {
    seq.verify_upto(horizon)?;
    let seq = seq.clone();
    Ok(LazyTree::new("fusion", move |s: &Word| {
        let m = seq.deciding_index(s.len()).unwrap_or_else(|e| panic!("fusion query {s}: {e}"));
        if m > horizon {
            seq.verify_upto(m).unwrap_or_else(|e| panic!("fusion query {s}: {e}"));
        }
        seq.get(m).contains(s)
    }))
}
