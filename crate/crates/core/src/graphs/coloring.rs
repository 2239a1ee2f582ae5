use std::cmp::Reverse;
use std::collections::BTreeSet;

use serde::Serialize;

use super::FiniteGraph;
use crate::error::{Error, Result};

/// Default node budget of the branch-and-bound search.
pub const DEFAULT_COLORING_BUDGET: u64 = 5_000_000;

/// An exact chromatic number with a proper coloring attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub chromatic_number: usize,
    /// Color of each vertex, in vertex order.
    pub colors: Vec<usize>,
    /// Search nodes visited.
    pub nodes: u64,
}

pub fn chromatic_number(g: &FiniteGraph, budget: u64) -> Result<Coloring> {
    let adjacency: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect();
    chromatic_number_of(&adjacency, budget)
}

/// Exact chromatic number of a graph given by symmetric adjacency lists.
///
/// DSATUR branch and bound: a greedy clique gives the lower bound, a greedy
/// DSATUR pass the first upper bound. Vertices are chosen by saturation,
/// then degree, then lowest index, so the witness is deterministic.
pub fn chromatic_number_of(adjacency: &[Vec<usize>], budget: u64) -> Result<Coloring> {
    if adjacency.is_empty() {
        return Ok(Coloring { chromatic_number: 0, colors: vec![], nodes: 0 });
    }
    let mut sorted = adjacency.to_vec();
    for list in &mut sorted {
        list.sort_unstable();
        list.dedup();
    }
    let adjacency = &sorted[..];
    let lower = greedy_clique(adjacency).len();
    let mut best = dsatur_greedy(adjacency);
    let mut upper = best.iter().max().map_or(0, |&c| c + 1);
    let mut nodes = 0;
    if lower < upper {
        let mut search = Search::new(adjacency, upper);
        let found = search.run(lower, budget, &mut nodes);
        if let Some((colors, k)) = found.best {
            best = colors;
            upper = k;
        }
        if found.exhausted {
            return Err(Error::ChromaticBudget { lower, upper });
        }
    }
    debug_assert!(is_proper(adjacency, &best));
    Ok(Coloring { chromatic_number: upper, colors: best, nodes })
}

pub fn is_proper(adjacency: &[Vec<usize>], colors: &[usize]) -> bool {
    adjacency
        .iter()
        .enumerate()
        .all(|(v, list)| list.iter().all(|&u| colors[u] != colors[v]))
}

fn greedy_clique(adjacency: &[Vec<usize>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..adjacency.len()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adjacency[v].len()));
    let mut best = Vec::new();
    for &start in order.iter().take(64) {
        let mut clique = vec![start];
        let mut candidates: Vec<usize> = adjacency[start].clone();
        candidates.sort_by_key(|&v| std::cmp::Reverse(adjacency[v].len()));
        for v in candidates {
            if clique.iter().all(|&c| adjacency[v].binary_search(&c).is_ok()) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

fn dsatur_greedy(adjacency: &[Vec<usize>]) -> Vec<usize> {
    let n = adjacency.len();
    let width = adjacency.iter().map(Vec::len).max().unwrap_or(0) + 1;
    let mut state = Saturation::new(adjacency, width);
    let mut colors = vec![usize::MAX; n];
    for _ in 0..n {
        let v = state.pick();
        let c = (0..width).find(|&c| state.count(v, c) == 0).unwrap();
        colors[v] = c;
        state.assign(v, c);
    }
    colors
}

type Key = (Reverse<usize>, Reverse<usize>, usize);

/// Per-vertex counts of neighbor colors, and the uncolored vertices ordered
/// by saturation, then degree, then index.
struct Saturation<'a> {
    adjacency: &'a [Vec<usize>],
    width: usize,
    counts: Vec<u32>,
    saturation: Vec<usize>,
    colored: Vec<bool>,
    queue: BTreeSet<Key>,
}

impl<'a> Saturation<'a> {
    fn new(adjacency: &'a [Vec<usize>], width: usize) -> Self {
        let n = adjacency.len();
        let queue = (0..n).map(|v| (Reverse(0), Reverse(adjacency[v].len()), v)).collect();
        Saturation {
            adjacency,
            width,
            counts: vec![0; n * width],
            saturation: vec![0; n],
            colored: vec![false; n],
            queue,
        }
    }

    fn key(&self, v: usize) -> Key {
        (Reverse(self.saturation[v]), Reverse(self.adjacency[v].len()), v)
    }

    fn count(&self, v: usize, c: usize) -> u32 {
        self.counts[v * self.width + c]
    }

    fn bump(&mut self, u: usize, delta: isize) {
        if !self.colored[u] {
            self.queue.remove(&self.key(u));
        }
        self.saturation[u] = self.saturation[u].wrapping_add_signed(delta);
        if !self.colored[u] {
            self.queue.insert(self.key(u));
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.queue.remove(&self.key(v));
        self.colored[v] = true;
        let adjacency = self.adjacency;
        for &u in &adjacency[v] {
            let slot = u * self.width + c;
            self.counts[slot] += 1;
            if self.counts[slot] == 1 {
                self.bump(u, 1);
            }
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        let adjacency = self.adjacency;
        for &u in &adjacency[v] {
            let slot = u * self.width + c;
            self.counts[slot] -= 1;
            if self.counts[slot] == 0 {
                self.bump(u, -1);
            }
        }
        self.colored[v] = false;
        self.queue.insert(self.key(v));
    }

    fn pick(&self) -> usize {
        self.queue.first().expect("an uncolored vertex").2
    }
}

struct Search<'a> {
    state: Saturation<'a>,
    colors: Vec<usize>,
    upper: usize,
}

struct Outcome {
    best: Option<(Vec<usize>, usize)>,
    exhausted: bool,
}

impl<'a> Search<'a> {
    fn new(adjacency: &'a [Vec<usize>], upper: usize) -> Self {
        Search {
            state: Saturation::new(adjacency, upper),
            colors: vec![usize::MAX; adjacency.len()],
            upper,
        }
    }

    fn run(&mut self, lower: usize, budget: u64, nodes: &mut u64) -> Outcome {
        let mut outcome = Outcome { best: None, exhausted: false };
        self.descend(0, 0, lower, budget, nodes, &mut outcome);
        outcome
    }

    fn descend(&mut self, placed: usize, used: usize, lower: usize, budget: u64, nodes: &mut u64, out: &mut Outcome) {
        if out.exhausted || self.upper <= lower {
            return;
        }
        *nodes += 1;
        if *nodes > budget {
            out.exhausted = true;
            return;
        }
        if placed == self.colors.len() {
            self.upper = used;
            out.best = Some((self.colors.clone(), used));
            return;
        }
        let v = self.state.pick();
        // Only colors below upper − 1 can improve; a fresh color is tried once.
        let mut c = 0;
        while c < (used + 1).min(self.upper - 1) {
            if self.state.count(v, c) == 0 {
                self.colors[v] = c;
                self.state.assign(v, c);
                self.descend(placed + 1, used.max(c + 1), lower, budget, nodes, out);
                self.state.unassign(v, c);
                self.colors[v] = usize::MAX;
                if out.exhausted || self.upper <= lower {
                    return;
                }
            }
            c += 1;
        }
    }
}
