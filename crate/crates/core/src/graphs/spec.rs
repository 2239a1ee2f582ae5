use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::WordMap;
use crate::cantor::{DenseSequence, Difference, Point, Word};
use crate::error::{Error, Result};

/// A symmetric union of boxes [u]×[v] at a uniform depth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawClopenGraph")]
pub struct ClopenGraph {
    depth: usize,
    boxes: BTreeSet<(Word, Word)>,
}

#[derive(Deserialize)]
struct RawClopenGraph {
    depth: usize,
    #[serde(default)]
    boxes: Vec<(Word, Word)>,
}

impl TryFrom<RawClopenGraph> for ClopenGraph {
    type Error = Error;

    fn try_from(raw: RawClopenGraph) -> Result<Self> {
        ClopenGraph::new(raw.depth, raw.boxes)
    }
}

impl ClopenGraph {
    pub fn new(depth: usize, boxes: impl IntoIterator<Item = (Word, Word)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in boxes {
            if u.len() != depth || v.len() != depth {
                return Err(Error::Parse(format!("box ({u}, {v}) is not at depth {depth}")));
            }
            if u == v {
                return Err(Error::Parse(format!("box ({u}, {u}) would make the graph reflexive")));
            }
            set.insert(if u < v { (u, v) } else { (v, u) });
        }
        Ok(ClopenGraph { depth, boxes: set })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Boxes as normalized pairs (u < v).
    pub fn boxes(&self) -> &BTreeSet<(Word, Word)> {
        &self.boxes
    }

    /// Whether words of length ≥ depth lie in a common box.
    pub fn has_box(&self, a: &Word, b: &Word) -> bool {
        let (a, b) = (a.prefix(self.depth), b.prefix(self.depth));
        if a < b {
            self.boxes.contains(&(a, b))
        } else {
            self.boxes.contains(&(b, a))
        }
    }

    /// The box graph {(x, y) : (f(x), f(y)) in a box}, at the least depth d'
    /// for which f(x)↾depth is determined by x↾d'.
    pub fn pullback(&self, f: &WordMap) -> Result<ClopenGraph> {
        if !f.is_total() {
            return Err(Error::Precondition("pull-back along a partial map".into()));
        }
        let depth = (0..=self.depth.max(1) * 2 + 8)
            .find(|&n| Word::all(n).all(|a| f.apply_word(&a).len() >= self.depth))
            .ok_or_else(|| Error::BudgetExceeded { context: "pull-back depth".into() })?;
        if depth > 16 {
            return Err(Error::BudgetExceeded { context: format!("pull-back at depth {depth}") });
        }
        let words: Vec<Word> = Word::all(depth).collect();
        let mut boxes = Vec::new();
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                if self.has_box(&f.apply_word(a), &f.apply_word(b)) {
                    boxes.push((a.clone(), b.clone()));
                }
            }
        }
        ClopenGraph::new(depth, boxes)
    }
}

/// A graph on 2^ω given by an edge oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraphSpec", into = "RawGraphSpec")]
pub enum GraphSpec {
    G0(DenseSequence),
    G1,
    E0,
    Boxes(ClopenGraph),
    /// {(x, y) : (f(x), f(y)) ∈ H}; `f` is injective.
    Pullback(WordMap, Box<GraphSpec>),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawGraphSpec {
    G0 {
        #[serde(default, skip_serializing_if = "is_canonical")]
        dense: Option<DenseSequence>,
    },
    G1,
    E0,
    Boxes {
        depth: usize,
        #[serde(default)]
        boxes: Vec<(Word, Word)>,
    },
    Pullback {
        map: WordMap,
        graph: Box<GraphSpec>,
    },
}

fn is_canonical(d: &Option<DenseSequence>) -> bool {
    matches!(d, None | Some(DenseSequence::Canonical))
}

impl TryFrom<RawGraphSpec> for GraphSpec {
    type Error = Error;

    fn try_from(raw: RawGraphSpec) -> Result<Self> {
        Ok(match raw {
            RawGraphSpec::G0 { dense } => GraphSpec::G0(dense.unwrap_or_default()),
            RawGraphSpec::G1 => GraphSpec::G1,
            RawGraphSpec::E0 => GraphSpec::E0,
            RawGraphSpec::Boxes { depth, boxes } => GraphSpec::Boxes(ClopenGraph::new(depth, boxes)?),
            RawGraphSpec::Pullback { map, graph } => pullback(map, *graph)?,
        })
    }
}

impl From<GraphSpec> for RawGraphSpec {
    fn from(g: GraphSpec) -> Self {
        match g {
            GraphSpec::G0(dense) => RawGraphSpec::G0 { dense: Some(dense) },
            GraphSpec::G1 => RawGraphSpec::G1,
            GraphSpec::E0 => RawGraphSpec::E0,
            GraphSpec::Boxes(b) => RawGraphSpec::Boxes {
                depth: b.depth,
                boxes: b.boxes.into_iter().collect(),
            },
            GraphSpec::Pullback(map, graph) => RawGraphSpec::Pullback { map, graph },
        }
    }
}

/// Why two points are adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeCertificate {
    /// The single coordinate where the points differ.
    Coordinate { k: usize },
    /// The points agree from this coordinate on.
    Tail { from: usize },
    Box { u: Word, v: Word },
    Pullback { image: Box<EdgeCertificate> },
}

/// The pull-back f*[G]. Fails unless `f` is injective.
pub fn pullback(f: WordMap, g: GraphSpec) -> Result<GraphSpec> {
    if !f.is_injective() {
        return Err(Error::NotInjective);
    }
    Ok(GraphSpec::Pullback(f, Box::new(g)))
}

impl GraphSpec {
    pub fn g0() -> Self {
        GraphSpec::G0(DenseSequence::Canonical)
    }

    pub fn name(&self) -> &'static str {
        match self {
            GraphSpec::G0(_) => "g0",
            GraphSpec::G1 => "g1",
            GraphSpec::E0 => "e0",
            GraphSpec::Boxes(_) => "boxes",
            GraphSpec::Pullback(..) => "pullback",
        }
    }

    /// Edge query with a certificate for adjacent pairs.
    pub fn edge(&self, x: &Point, y: &Point) -> Option<EdgeCertificate> {
        match self {
            GraphSpec::G0(dense) => match x.difference(y) {
                Difference::Finite(d) if d.len() == 1 && dense.extends(d[0], &x.restrict(d[0])) => {
                    Some(EdgeCertificate::Coordinate { k: d[0] })
                }
                _ => None,
            },
            GraphSpec::G1 => match x.difference(y) {
                Difference::Finite(d) if d.len() == 1 => Some(EdgeCertificate::Coordinate { k: d[0] }),
                _ => None,
            },
            GraphSpec::E0 => match x.difference(y) {
                Difference::Finite(d) if !d.is_empty() => {
                    Some(EdgeCertificate::Tail { from: d[d.len() - 1] + 1 })
                }
                _ => None,
            },
            GraphSpec::Boxes(b) => {
                let (u, v) = (x.restrict(b.depth), y.restrict(b.depth));
                b.has_box(&u, &v).then_some(EdgeCertificate::Box { u, v })
            }
            GraphSpec::Pullback(f, h) => h
                .edge(&f.apply_point(x), &f.apply_point(y))
                .map(|c| EdgeCertificate::Pullback { image: Box::new(c) }),
        }
    }

    pub fn is_edge(&self, x: &Point, y: &Point) -> bool {
        self.edge(x, y).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::{pt, w};

    #[test]
    fn edge_examples() {
        let g0 = GraphSpec::g0();
        assert_eq!(g0.edge(&pt("1", "0"), &pt("0", "0")), Some(EdgeCertificate::Coordinate { k: 0 }));
        assert!(!g0.is_edge(&pt("11", "0"), &pt("10", "0")));
        assert!(GraphSpec::G1.is_edge(&pt("000", "0"), &pt("010", "0")));
        assert!(!GraphSpec::E0.is_edge(&pt("0", "0"), &pt("1", "1")));
        assert!(!GraphSpec::E0.is_edge(&pt("0", "1"), &pt("0", "1")));
        assert_eq!(
            GraphSpec::E0.edge(&pt("0110", "1"), &pt("0000", "1")),
            Some(EdgeCertificate::Tail { from: 3 })
        );
    }

    #[test]
    fn box_pullback_example() {
        let boxes = GraphSpec::Boxes(ClopenGraph::new(2, [(w("00"), w("01"))]).unwrap());
        let g = pullback(WordMap::Prepend { word: w("0") }, boxes).unwrap();
        assert!(g.is_edge(&pt("0", "0"), &pt("1", "0")));
        assert!(!g.is_edge(&pt("0", "0"), &pt("00", "1")));
        assert_eq!(pullback(WordMap::ZeroPrefix { len: 1 }, GraphSpec::G1), Err(Error::NotInjective));
    }

    #[test]
    fn clopen_graph_validation() {
        assert!(ClopenGraph::new(2, [(w("00"), w("00"))]).is_err());
        assert!(ClopenGraph::new(2, [(w("00"), w("1"))]).is_err());
        let g = ClopenGraph::new(1, [(w("1"), w("0"))]).unwrap();
        assert!(g.has_box(&w("01"), &w("11")));
    }

    #[test]
    fn clopen_pullback_matches_oracle() {
        let boxes = ClopenGraph::new(2, [(w("00"), w("11")), (w("01"), w("10"))]).unwrap();
        let f = WordMap::Substitute { zero: w("0"), one: w("11") };
        let pulled = boxes.pullback(&f).unwrap();
        let oracle = pullback(f, GraphSpec::Boxes(boxes)).unwrap();
        let direct = GraphSpec::Boxes(pulled);
        let points: Vec<Point> = Word::all(4)
            .flat_map(|u| [Point::new(u.clone(), w("0")).unwrap(), Point::new(u, w("1")).unwrap()])
            .collect();
        for x in &points {
            for y in &points {
                assert_eq!(oracle.is_edge(x, y), direct.is_edge(x, y), "{x} {y}");
            }
        }
    }

    #[test]
    fn json_shapes() {
        let g: GraphSpec = serde_json::from_str(r#"{"kind":"boxes","depth":1,"boxes":[["1","0"]]}"#).unwrap();
        assert_eq!(g, GraphSpec::Boxes(ClopenGraph::new(1, [(w("0"), w("1"))]).unwrap()));
        assert_eq!(serde_json::to_string(&GraphSpec::g0()).unwrap(), r#"{"kind":"g0"}"#);
        let p: GraphSpec = serde_json::from_str(
            r#"{"kind":"pullback","map":{"rule":"prepend","word":"0"},"graph":{"kind":"g1"}}"#,
        )
        .unwrap();
        assert_eq!(p.name(), "pullback");
        let bad = r#"{"kind":"pullback","map":{"rule":"zero_prefix","len":2},"graph":{"kind":"g1"}}"#;
        assert!(serde_json::from_str::<GraphSpec>(bad).is_err());
    }
}
