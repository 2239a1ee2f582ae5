use serde::Serialize;

use super::GraphSpec;
use crate::cantor::Point;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "points", rename_all = "snake_case")]
pub enum RamseyOutcome {
    /// Points in cyclic order: consecutive points (and the last with the first) are adjacent.
    FourCycle([Point; 4]),
    Independent([Point; 4]),
}

impl RamseyOutcome {
    pub fn points(&self) -> &[Point; 4] {
        match self {
            RamseyOutcome::FourCycle(p) | RamseyOutcome::Independent(p) => p,
        }
    }

    /// Re-checks the outcome against the graph.
    pub fn verify(&self, g: &GraphSpec) -> bool {
        match self {
            RamseyOutcome::FourCycle(p) => (0..4).all(|i| g.is_edge(&p[i], &p[(i + 1) % 4])),
            RamseyOutcome::Independent(p) => {
                (0..4).all(|i| (i + 1..4).all(|j| !g.is_edge(&p[i], &p[j])))
            }
        }
    }
}

/// Searches the 4-subsets of `points` in lexicographic index order for a
/// 4-cycle or an independent 4-set. Among 18 distinct points one always exists.
pub fn ramsey_find(points: &[Point], g: &GraphSpec) -> Result<RamseyOutcome> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(Error::Precondition(format!("point {} repeated", points[i])));
            }
        }
    }
    let n = points.len();
    let mut adjacent = vec![vec![false; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let e = g.is_edge(&points[a], &points[b]);
            adjacent[a][b] = e;
            adjacent[b][a] = e;
        }
    }
    let e = |a: usize, b: usize| adjacent[a][b];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let cycle = [[a, b, c, d], [a, b, d, c], [a, c, b, d]]
                        .into_iter()
                        .find(|q| (0..4).all(|i| e(q[i], q[(i + 1) % 4])));
                    if let Some(q) = cycle {
                        return Ok(RamseyOutcome::FourCycle(q.map(|i| points[i].clone())));
                    }
                    let quad = [a, b, c, d];
                    if (0..4).all(|i| (i + 1..4).all(|j| !e(quad[i], quad[j]))) {
                        return Ok(RamseyOutcome::Independent(quad.map(|i| points[i].clone())));
                    }
                }
            }
        }
    }
    Err(Error::NotFound(format!("no 4-cycle or independent 4-set among {n} points")))
}
