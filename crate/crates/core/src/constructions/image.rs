use std::collections::BTreeSet;

use serde::Serialize;

use super::agreement::{cross_selectors, Relation};
use super::dichotomy::{default_refuter, independent_tree};
use crate::cantor::Word;
use crate::error::{Error, Result};
use crate::graphs::{ClopenGraph, GraphSpec, WordMap};
use crate::trees::BlockTree;

/// Image prefix pairs of related cross branches at the splits of q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageCertificate {
    /// Depth of the target box graph.
    pub depth: usize,
    /// Depth of the pulled-back graph; images to `depth` depend only on this prefix.
    pub source_depth: usize,
    pub pairs: BTreeSet<(Word, Word)>,
}

impl ImageCertificate {
    /// Index (in sorted order) of the first pair lying in a box of `g`.
    pub fn violation(&self, g: &ClopenGraph) -> Option<usize> {
        self.pairs.iter().position(|(a, b)| g.has_box(a, b))
    }
}

/// The box graph denoted by a spec built from boxes and pull-backs.
pub fn box_graph(g: &GraphSpec) -> Result<ClopenGraph> {
    match g {
        GraphSpec::Boxes(c) => Ok(c.clone()),
        GraphSpec::Pullback(f, h) => box_graph(h)?.pullback(f),
        other => Err(Error::Precondition(format!("{} is not a box graph", other.name()))),
    }
}

/// An independent tree for the pull-back of G along f, with its image certified.
///
/// The relation is G₁ for Silver p and E₀ otherwise. The certificate collects,
/// at every split of q below the pulled-back depth d′, the depth-d images of
/// the related cross branches; none may lie in a box of G.
pub fn independent_image(
    f: &WordMap,
    g: &GraphSpec,
    p: &BlockTree,
    depth_out: usize,
) -> Result<(BlockTree, ImageCertificate)> {
    if !f.is_injective() {
        return Err(Error::NotInjective);
    }
    let target = box_graph(g)?;
    let pulled = target.pullback(f)?;
    let rel = if p.is_silver() { Relation::G1 } else { Relation::E0 };
    let q = independent_tree(p, &pulled, rel, &default_refuter(&pulled, rel), depth_out)?;

    let (d, dp) = (target.depth(), pulled.depth());
    let image = |sel: &Word, r: &BlockTree| f.apply_word(&r.branch_word(sel).restrict(dp)).prefix(d);
    let mut pairs = BTreeSet::new();
    let mut k = 0;
    while q.split_height(k) < dp {
        for sigma in Word::all(k) {
            let r = q.restrict(&sigma);
            for (x, y) in cross_selectors(&r, dp, rel) {
                pairs.insert((image(&x, &r), image(&y, &r)));
            }
        }
        k += 1;
    }
    let cert = ImageCertificate { depth: d, source_depth: dp, pairs };
    if let Some(index) = cert.violation(&target) {
        return Err(Error::CertificateViolation { index });
    }
    Ok((q, cert))
}
