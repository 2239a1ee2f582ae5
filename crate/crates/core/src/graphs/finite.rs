use std::fmt::Write as _;

use serde::Serialize;

use super::GraphSpec;
use crate::cantor::{Point, Word};
use crate::error::{Error, Result};

/// Largest n for which [`restrict`] materializes G↾2ⁿ.
pub const MAX_RESTRICT_DEPTH: usize = 20;
/// Largest n for the pairwise fallback used by E₀ and pull-backs.
const MAX_PAIRWISE_DEPTH: usize = 12;

/// A graph on the words of length n. Vertex i is the word whose
/// big-endian value is i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    depth: usize,
    adjacency: Vec<Vec<usize>>,
}

impl FiniteGraph {
    /// Builds a graph from an edge list; loops are rejected, duplicates merged.
    pub fn from_edges(depth: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if depth > MAX_RESTRICT_DEPTH {
            return Err(Error::BudgetExceeded { context: format!("graph on 2^{depth} vertices") });
        }
        let n = 1usize << depth;
        let mut adjacency = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Parse(format!("edge ({a}, {b}) out of range for depth {depth}")));
            }
            if a == b {
                return Err(Error::Parse(format!("loop at vertex {a}")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(FiniteGraph { depth, adjacency })
    }

    pub fn edgeless(depth: usize) -> Result<Self> {
        Self::from_edges(depth, [])
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn word(&self, v: usize) -> Word {
        Word::from_index(self.depth, v as u64)
    }

    pub fn index(&self, word: &Word) -> usize {
        word.to_index() as usize
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges (a, b) with a < b, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    /// Subgraph induced on `vertices`, relabelled 0..len in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Vec<Vec<usize>> {
        let position: std::collections::HashMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        vertices
            .iter()
            .map(|v| self.adjacency[*v].iter().filter_map(|u| position.get(u).copied()).collect())
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("graph restrict_{} {{\n", self.depth);
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  v{v} [label=\"{}\"];", self.word(v));
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  v{a} -- v{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Export {
            depth: usize,
            vertices: usize,
            edges: Vec<(Word, Word)>,
        }
        serde_json::to_value(Export {
            depth: self.depth,
            vertices: self.vertex_count(),
            edges: self.edges().map(|(a, b)| (self.word(a), self.word(b))).collect(),
        })
        .expect("serializable")
    }
}

/// G↾2ⁿ: words a, b of length n are adjacent iff a⌢0̄ and b⌢0̄ are.
///
/// Under this convention E₀↾2ⁿ is the complete graph, since any two
/// zero-padded words are eventually equal.
pub fn restrict(g: &GraphSpec, n: usize) -> Result<FiniteGraph> {
    if n > MAX_RESTRICT_DEPTH {
        return Err(Error::BudgetExceeded { context: format!("restriction to 2^{n} exceeds 2^{MAX_RESTRICT_DEPTH}") });
    }
    match g {
        GraphSpec::G0(dense) => {
            let mut edges = Vec::with_capacity((1usize << n).saturating_sub(1));
            for k in 0..n {
                let s = dense.term(k).to_index() as usize;
                let tail = n - k - 1;
                for x in 0..(1usize << tail) {
                    let lo = (s << (tail + 1)) | x;
                    edges.push((lo, lo | (1 << tail)));
                }
            }
            FiniteGraph::from_edges(n, edges)
        }
        GraphSpec::G1 => FiniteGraph::from_edges(
            n,
            (0..1usize << n).flat_map(|v| (0..n).map(move |i| (v, v ^ (1 << i))).filter(|(a, b)| a < b)),
        ),
        GraphSpec::Boxes(b) => {
            if n < b.depth() {
                return Err(Error::DepthTooSmall { requested: n, depth: b.depth() });
            }
            let extra = n - b.depth();
            let mut edges = Vec::new();
            for (u, v) in b.boxes() {
                let (u, v) = (u.to_index() as usize, v.to_index() as usize);
                for x in 0..(1usize << extra) {
                    for y in 0..(1usize << extra) {
                        edges.push(((u << extra) | x, (v << extra) | y));
                    }
                }
            }
            FiniteGraph::from_edges(n, edges)
        }
        GraphSpec::E0 | GraphSpec::Pullback(..) => {
            if n > MAX_PAIRWISE_DEPTH {
                return Err(Error::BudgetExceeded {
                    context: format!("pairwise restriction of {} to 2^{n}", g.name()),
                });
            }
            let points: Vec<Point> = Word::all(n).map(|u| Point::zero_padded(&u)).collect();
            let mut edges = Vec::new();
            for a in 0..points.len() {
                for b in a + 1..points.len() {
                    if g.is_edge(&points[a], &points[b]) {
                        edges.push((a, b));
                    }
                }
            }
            FiniteGraph::from_edges(n, edges)
        }
    }
}
