use std::collections::BTreeSet;

use serde::Serialize;

use super::{EdgeCertificate, GraphSpec, WordMap};
use crate::cantor::{ClopenSet, Point, Word};
use crate::error::{Error, Result};

/// Largest probe depth for the pairwise search used by pull-backs.
const MAX_PROBE_DEPTH: usize = 12;
/// Largest presentation depth accepted by [`check_homomorphism`].
pub const MAX_HOMOMORPHISM_DEPTH: usize = 10;

/// Two adjacent points of a set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeWitness {
    pub x: Point,
    pub y: Point,
    pub certificate: EdgeCertificate,
}

/// Finds an edge of `g` inside the clopen set `a`, showing that `a` is not independent.
///
/// G₀, G₁ and E₀ always succeed on a nonempty set, as do box graphs whenever an
/// edge exists. Pull-backs are searched among zero-padded words of length
/// `probe_depth`; `Ok(None)` means none was found there.
pub fn clopen_independence_witness(g: &GraphSpec, a: &ClopenSet, probe_depth: usize) -> Result<Option<EdgeWitness>> {
    if probe_depth < a.depth() {
        return Err(Error::DepthTooSmall { requested: probe_depth, depth: a.depth() });
    }
    let u = a.first().ok_or_else(|| Error::EmptyInput("independence witness for an empty set".into()))?;
    let pair = match g {
        GraphSpec::G0(dense) => {
            let s = dense.term(dense.first_extending(u, u.len()));
            Some((s.child(0), s.child(1)))
        }
        GraphSpec::G1 | GraphSpec::E0 => Some((u.child(0), u.child(1))),
        GraphSpec::Boxes(b) => b.boxes().iter().find_map(|(p, q)| {
            Some((member_extending(a, p)?, member_extending(a, q)?))
        }),
        GraphSpec::Pullback(..) => {
            if probe_depth > MAX_PROBE_DEPTH {
                return Err(Error::BudgetExceeded { context: format!("probe depth {probe_depth}") });
            }
            let words: Vec<Word> = a.refine(probe_depth)?.words().iter().cloned().collect();
            let mut found = None;
            'search: for (i, p) in words.iter().enumerate() {
                for q in &words[i + 1..] {
                    if g.is_edge(&Point::zero_padded(p), &Point::zero_padded(q)) {
                        found = Some((p.clone(), q.clone()));
                        break 'search;
                    }
                }
            }
            found
        }
    };
    Ok(pair.map(|(p, q)| {
        let (x, y) = (Point::zero_padded(&p), Point::zero_padded(&q));
        let certificate = g.edge(&x, &y).expect("constructed pair is an edge");
        debug_assert!(a.contains_point(&x) && a.contains_point(&y));
        EdgeWitness { x, y, certificate }
    }))
}

/// A word of A (at depth ≥ |p|) extending p, if [p] meets A.
fn member_extending(a: &ClopenSet, p: &Word) -> Option<Word> {
    if p.len() >= a.depth() {
        a.contains_cylinder(p).then(|| p.clone())
    } else {
        a.words().iter().find(|v| p.is_prefix_of(v)).cloned()
    }
}

/// Checks that φ maps every G-edge to an H-edge, among the points
/// u⌢0̄ and u⌢1̄ with |u| = depth.
///
/// Pairs are scanned by first differing coordinate, then lexicographically;
/// the first failing pair is returned.
pub fn check_homomorphism(
    phi: &WordMap,
    g: &GraphSpec,
    h: &GraphSpec,
    depth: usize,
) -> Result<Option<(Point, Point)>> {
    if depth > MAX_HOMOMORPHISM_DEPTH {
        return Err(Error::BudgetExceeded { context: format!("homomorphism check at depth {depth}") });
    }
    if !phi.is_total() {
        return Err(Error::Precondition("map is not total".into()));
    }
    let points: BTreeSet<Point> = Word::all(depth)
        .flat_map(|u| [Point::new(u.clone(), Word::zeros(1)), Point::new(u, Word::from_bits(vec![1]))])
        .collect::<Result<_>>()?;
    let points: Vec<Point> = points.into_iter().collect();
    let mut edges = Vec::new();
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            if g.is_edge(x, y) {
                let first = (0..).find(|&k| x.bit(k) != y.bit(k)).unwrap();
                edges.push((first, x, y));
            }
        }
    }
    edges.sort();
    Ok(edges
        .into_iter()
        .find(|(_, x, y)| !h.is_edge(&phi.apply_point(x), &phi.apply_point(y)))
        .map(|(_, x, y)| (x.clone(), y.clone())))
}
