use serde::Serialize;

use super::agreement::{agrees_with, Relation};
use crate::cantor::{length_lex_word, Point, Word};
use crate::error::{Error, Result};
use crate::graphs::{ramsey_find, ClopenGraph, GraphSpec, RamseyOutcome};
use crate::trees::BlockTree;

/// Number of sample branches in the Ramsey phase.
pub const SAMPLES: usize = 18;

/// Default cap on 4-subsets examined by the exhaustive phase; C(36, 4) fits.
pub const DEFAULT_CYCLE_BOUND: usize = 60_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CyclePhase {
    /// Found among depth-d representatives of [r] and their copies.
    Direct,
    /// A 4-cycle among the sample branches.
    RamseyCycle,
    /// Copies of an independent 4-set of samples.
    RamseyLift,
    /// Exhaustive search over samples and copies.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourCycleReport {
    /// Consecutive points, and the last with the first, are adjacent.
    pub cycle: [Point; 4],
    pub phase: CyclePhase,
}

impl FourCycleReport {
    pub fn verify(&self, g: &ClopenGraph) -> bool {
        let spec = GraphSpec::Boxes(g.clone());
        let c = &self.cycle;
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| c[i] != c[j]));
        distinct && RamseyOutcome::FourCycle(c.clone()).verify(&spec)
    }
}

/// Finds a 4-cycle in G inside [r] for a Silver tree r agreeing with G.
///
/// Agreement puts every copy pair (z, z′), z′ = z with the root split bit
/// flipped, into G. Two edges z–w and z′–w′ then close a cycle z, z′, w′, w.
/// The representatives are tried first; then 18 sample branches with
/// selectors 0⌢eⱼ⌢1⌢0̄ go through [`ramsey_find`], and an independent set is
/// lifted to the copies. If neither phase produces one, all 4-subsets of the
/// 36 points are searched, at most `bound` of them.
pub fn four_cycle(r: &BlockTree, g: &ClopenGraph, bound: usize) -> Result<FourCycleReport> {
    if !agrees_with(r, g, Relation::G1)?.agrees() {
        return Err(Error::Precondition("the tree does not agree with the graph".into()));
    }
    let d = g.depth();
    let flip = r.stem().len();
    let copy = |z: &Point| z.xor_word(&Word::unit(flip));
    let spec = GraphSpec::Boxes(g.clone());
    let report = |cycle: [Point; 4], phase| Ok(FourCycleReport { cycle, phase });

    // Deep enough that [r∗0] has two representatives.
    let depth = d.max(r.split_height(1) + 1);
    let reps: Vec<Point> = r
        .nodes_at(depth)
        .into_iter()
        .filter(|(_, sel)| sel.bit_padded(0) == 0)
        .map(|(_, sel)| r.branch_word(&sel))
        .collect();
    for (i, z) in reps.iter().enumerate() {
        for x in &reps[i + 1..] {
            let quad = [z.clone(), copy(z), copy(x), x.clone()];
            if let Some(c) = cyclic_order(&quad, &spec) {
                return report(c, CyclePhase::Direct);
            }
        }
    }

    let samples: Vec<Point> = (1..=SAMPLES)
        .map(|j| {
            let mut sel = Word::zeros(1);
            sel.extend_from(&length_lex_word(j));
            sel.push(1);
            r.branch_word(&sel)
        })
        .collect();
    match ramsey_find(&samples, &spec) {
        Ok(RamseyOutcome::FourCycle(c)) => return report(c, CyclePhase::RamseyCycle),
        Ok(RamseyOutcome::Independent(ind)) => {
            if let Some(c) = cyclic_order(&ind.map(|z| copy(&z)), &spec) {
                return report(c, CyclePhase::RamseyLift);
            }
        }
        Err(Error::NotFound(_)) => {}
        Err(e) => return Err(e),
    }

    let mut pool = samples.clone();
    pool.extend(samples.iter().map(copy));
    if let Some(c) = exhaustive(&pool, &spec, bound) {
        return report(c, CyclePhase::Exhaustive);
    }
    let listed: Vec<String> = samples.iter().map(|p| p.to_string()).collect();
    Err(Error::BoundExceeded {
        bound,
        context: format!("no 4-cycle among samples {}", listed.join(", ")),
    })
}

/// The first of the three cyclic orders of four points that is a cycle in g.
fn cyclic_order(quad: &[Point; 4], g: &GraphSpec) -> Option<[Point; 4]> {
    [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]].into_iter().find_map(|order| {
        let c = order.map(|i| quad[i].clone());
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| c[i] != c[j]));
        (distinct && (0..4).all(|i| g.is_edge(&c[i], &c[(i + 1) % 4]))).then_some(c)
    })
}

fn exhaustive(pool: &[Point], g: &GraphSpec, bound: usize) -> Option<[Point; 4]> {
    let n = pool.len();
    let mut examined = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    examined += 1;
                    if examined > bound {
                        return None;
                    }
                    let quad = [a, b, c, d].map(|i| pool[i].clone());
                    if let Some(cyc) = cyclic_order(&quad, g) {
                        return Some(cyc);
                    }
                }
            }
        }
    }
    None
}
