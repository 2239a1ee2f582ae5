//! Argument handling and command dispatch for the `treeforce` binary.
//!
//! [`run`] never exits the process; it returns the rendered output and the
//! exit code, so commands can be driven from tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use treeforce::constructions::{
    box_graph, density_dichotomy, four_cycle, independent_tree, default_refuter, perfect_clique, verify_independent,
    DichotomyOutcome, Relation, DEFAULT_CYCLE_BOUND, VERIFY_DEPTH,
};
use treeforce::fat::{g0_tree_inside, is_fat, ladder, sufficient_probe};
use treeforce::graphs::{chromatic_number, restrict, ClopenGraph, GraphSpec, DEFAULT_COLORING_BUDGET};
use treeforce::trees::{BlockTree, FiniteTree};
use treeforce::{ClopenSet, Error, Word};

/// Largest depth accepted anywhere (2^depth vertex sets).
pub const DEPTH_GUARD: usize = 24;
/// Largest depth for exact chromatic numbers.
pub const EXACT_CHROMATIC_DEPTH: usize = 14;

#[derive(Debug, Parser)]
#[command(name = "treeforce", version, about = "Experiments with G0, G1, E0 and tree forcings on 2^omega")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for the generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact chromatic number of a finite restriction.
    Chromatic {
        /// g0, g1, e0, or a graph JSON file.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Dichotomy constructions for box graphs.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        #[arg(long)]
        graph: PathBuf,
        /// Block tree JSON; the full tree when absent.
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Fat Silver trees.
    Fat {
        #[arg(value_enum)]
        kind: FatKind,
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long)]
        clopen: Option<PathBuf>,
        #[arg(long)]
        split_depth: Option<usize>,
        #[arg(long)]
        levels: Option<usize>,
        /// Probe depth for `check`.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Seeded random inputs.
    Generate {
        #[arg(value_enum)]
        kind: GenerateKind,
        #[arg(long)]
        depth: usize,
        /// Number of boxes for `graph`.
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    IndependentTree,
    CliqueTree,
    FourCycle,
    Dichotomy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FatKind {
    Check,
    Build,
    Ladder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    Graph,
    Clopen,
    Silver,
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit code of a library error: 1 input, 2 budget, 3 negative outcome.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BoundExceeded { .. } | Error::BudgetExceeded { .. } | Error::ChromaticBudget { .. } => 2,
        Error::RefuterFailure { .. }
        | Error::DensityFailure(_)
        | Error::FatnessMissing { .. }
        | Error::NotFound(_)
        | Error::CertificateViolation { .. } => 3,
        _ => 1,
    }
}

enum Failure {
    Input(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run = std::result::Result<Rendered, Failure>;

/// Output of a successful (or value-valued negative) command.
struct Rendered {
    json: Value,
    text: Option<String>,
    dot: Option<String>,
    code: i32,
}

impl Rendered {
    fn ok(json: Value) -> Self {
        Rendered { json, text: None, dot: None, code: 0 }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = dispatch(cli);
    let (code, body, err) = match result {
        Ok(r) => match render(&r, cli.format) {
            Ok(body) => (r.code, body, String::new()),
            Err(msg) => (1, String::new(), msg),
        },
        Err(Failure::Input(msg)) => (1, String::new(), format!("error: {msg}\n")),
        Err(Failure::Lib(e)) => {
            let code = exit_code(&e);
            let trace = serde_json::to_string_pretty(&json!({ "error": e.to_string(), "exit_code": code }))
                .expect("serializable");
            (code, format!("{trace}\n"), format!("error: {e}\n"))
        }
    };
    match &cli.out {
        Some(path) if !body.is_empty() => match std::fs::write(path, &body) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: err },
            Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {}: {e}\n", path.display()) },
        },
        _ => Outcome { code, stdout: body, stderr: err },
    }
}

fn render(r: &Rendered, format: Format) -> std::result::Result<String, String> {
    match format {
        Format::Json => Ok(format!("{}\n", serde_json::to_string_pretty(&r.json).expect("serializable"))),
        Format::Text => Ok(r.text.clone().unwrap_or_else(|| format!("{}\n", r.json))),
        Format::Dot => r.dot.clone().ok_or_else(|| "error: this command has no DOT output\n".to_string()),
    }
}

fn dispatch(cli: &Cli) -> Run {
    match &cli.command {
        Command::Chromatic { graph, depth, budget } => chromatic(graph, *depth, budget.unwrap_or(DEFAULT_COLORING_BUDGET)),
        Command::Construct { kind, graph, tree, depth, budget } => {
            let g = load_box_graph(graph)?;
            let p = load_tree(tree.as_deref())?;
            if let Some(d) = depth {
                guard(*d)?;
            }
            construct(*kind, &g, &p, *depth, *budget)
        }
        Command::Fat { kind, tree, clopen, split_depth, levels, depth, budget } => match kind {
            FatKind::Check => {
                let p = load_tree(tree.as_deref())?;
                let split = split_depth.ok_or_else(|| Failure::Input("fat check needs --split-depth".into()))?;
                let probe = match depth {
                    Some(d) => guard(*d).map(|_| *d)?,
                    None => sufficient_probe(split).max(64),
                };
                fat_check(&p, split, probe)
            }
            FatKind::Build => {
                let path = clopen.as_ref().ok_or_else(|| Failure::Input("fat build needs --clopen".into()))?;
                let a: ClopenSet = load_json(path)?;
                guard(a.depth())?;
                fat_build(&a, levels.unwrap_or(2), budget.unwrap_or(1 << 16))
            }
            FatKind::Ladder => {
                let p = load_tree(tree.as_deref())?;
                fat_ladder(&p, levels.unwrap_or(2), budget.unwrap_or(1 << 12))
            }
        },
        Command::Generate { kind, depth, budget } => {
            guard(*depth)?;
            generate(*kind, *depth, budget.unwrap_or(4), cli.seed)
        }
    }
}

fn guard(depth: usize) -> std::result::Result<(), Failure> {
    if depth > DEPTH_GUARD {
        return Err(Failure::Input(format!("depth {depth} exceeds the guard {DEPTH_GUARD}")));
    }
    Ok(())
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// A graph spec by name, or from a file holding a graph spec or a bare box graph.
fn load_graph(arg: &str) -> std::result::Result<GraphSpec, Failure> {
    match arg {
        "g0" => Ok(GraphSpec::g0()),
        "g1" => Ok(GraphSpec::G1),
        "e0" => Ok(GraphSpec::E0),
        path => {
            let value: Value = load_json(Path::new(path))?;
            let spec = if value.get("kind").is_some() {
                serde_json::from_value::<GraphSpec>(value)
            } else {
                serde_json::from_value::<ClopenGraph>(value).map(GraphSpec::Boxes)
            };
            spec.map_err(|e| Failure::Input(format!("{path}: {e}")))
        }
    }
}

fn load_box_graph(path: &Path) -> std::result::Result<ClopenGraph, Failure> {
    let spec = load_graph(&path.to_string_lossy())?;
    Ok(box_graph(&spec)?)
}

fn load_tree(path: Option<&Path>) -> std::result::Result<BlockTree, Failure> {
    path.map_or(Ok(BlockTree::full()), load_json)
}

fn relation_for(p: &BlockTree) -> Relation {
    if p.is_silver() {
        Relation::G1
    } else {
        Relation::E0
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn chromatic(graph: &str, depth: usize, budget: u64) -> Run {
    guard(depth)?;
    if depth > EXACT_CHROMATIC_DEPTH {
        return Err(Failure::Input(format!("exact mode supports depth ≤ {EXACT_CHROMATIC_DEPTH}")));
    }
    let spec = load_graph(graph)?;
    let g = restrict(&spec, depth)?;
    let dot = g.to_dot();
    let coloring = match chromatic_number(&g, budget) {
        Ok(c) => c,
        Err(Error::ChromaticBudget { lower, upper }) => {
            let json = json!({ "graph": spec.name(), "depth": depth, "edges": g.edge_count(), "lower": lower, "upper": upper });
            let text = format!("budget exhausted: {lower} <= chi <= {upper}\n");
            return Ok(Rendered { json, text: Some(text), dot: Some(dot), code: 2 });
        }
        Err(e) => return Err(e.into()),
    };
    let colors: Vec<(Word, usize)> = coloring.colors.iter().enumerate().map(|(v, &c)| (g.word(v), c)).collect();
    let json = json!({
        "graph": spec.name(),
        "depth": depth,
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "chromatic_number": coloring.chromatic_number,
        "search_nodes": coloring.nodes,
        "coloring": colors,
    });
    let text = format!(
        "graph {}\ndepth {depth}\nvertices {}\nedges {}\nchi {}\n",
        spec.name(),
        g.vertex_count(),
        g.edge_count(),
        coloring.chromatic_number
    );
    Ok(Rendered { json, text: Some(text), dot: Some(dot) , code: 0 })
}

fn construct(kind: ConstructKind, g: &ClopenGraph, p: &BlockTree, depth: Option<usize>, budget: Option<usize>) -> Run {
    let rel = relation_for(p);
    match kind {
        ConstructKind::IndependentTree => {
            let verify = depth.unwrap_or(VERIFY_DEPTH);
            let q = independent_tree(p, g, rel, &default_refuter(g, rel), verify)?;
            let violation = verify_independent(&q, g, rel, verify)?;
            Ok(Rendered::ok(json!({
                "tree": to_json(&q),
                "transcript": {
                    "relation": to_json(&rel),
                    "graph_depth": g.depth(),
                    "verified_to": verify.max(g.depth()),
                    "violation": violation.map(|s| s.to_string()),
                },
            })))
        }
        ConstructKind::CliqueTree => {
            let t = perfect_clique(p, g, rel, depth.unwrap_or(4))?;
            let leaves = t.leaves();
            let json = json!({
                "tree": to_json(&t),
                "transcript": {
                    "relation": to_json(&rel),
                    "leaves": leaves.len(),
                    "pairs_checked": leaves.len() * leaves.len().saturating_sub(1) / 2,
                },
            });
            Ok(Rendered { dot: Some(tree_dot(&t)), ..Rendered::ok(json) })
        }
        ConstructKind::FourCycle => {
            let report = four_cycle(p, g, budget.unwrap_or(DEFAULT_CYCLE_BOUND))?;
            let verified = report.verify(g);
            let text = report.cycle.iter().map(|x| format!("{x}\n")).collect();
            let json = json!({ "cycle": to_json(&report.cycle), "phase": to_json(&report.phase), "verified": verified });
            Ok(Rendered { text: Some(text), code: if verified { 0 } else { 3 }, ..Rendered::ok(json) })
        }
        ConstructKind::Dichotomy => {
            let out = density_dichotomy(p, g, rel, budget.unwrap_or(10_000), depth.unwrap_or(4))?;
            let code = if matches!(out, DichotomyOutcome::Undecided { .. }) { 3 } else { 0 };
            Ok(Rendered { code, ..Rendered::ok(to_json(&out)) })
        }
    }
}

fn fat_check(p: &BlockTree, split_depth: usize, probe: usize) -> Run {
    let report = is_fat(p, split_depth, probe)?;
    let fat = report.is_fat();
    let text = match report.first_missing() {
        None => "fat\n".to_string(),
        Some(m) => format!("not fat: node {} shift {} (probe {probe})\n", m.node, m.shift),
    };
    let json = json!({ "fat": fat, "report": to_json(&report) });
    Ok(Rendered { text: Some(text), code: if fat { 0 } else { 3 }, ..Rendered::ok(json) })
}

fn fat_build(a: &ClopenSet, levels: usize, budget: usize) -> Run {
    let t = g0_tree_inside(a, levels, budget)?;
    Ok(Rendered::ok(json!({
        "tree": to_json(&t),
        "transcript": { "silver": t.is_silver(), "explicit_blocks": t.explicit_blocks().len(), "fat": true, "inside": true },
    })))
}

fn fat_ladder(p: &BlockTree, levels: usize, budget: usize) -> Run {
    let l = ladder(p, levels, budget)?;
    let law: Vec<bool> = (0..l.top()).map(|n| l.growth_law_holds(n)).collect();
    let mut text = String::from("n\theight\tlog2|L_n|\tgrowth law\n");
    for n in 0..=l.top() {
        let holds = if n < l.top() { law[n].to_string() } else { "-".into() };
        let _ = writeln!(text, "{n}\t{}\t{}\t{holds}", l.height(n), l.log2_size(n));
    }
    let dot = l.finite_tree(l.top(), treeforce::fat::LISTED_LEVEL_LIMIT).map(|t| tree_dot(&t));
    let json = json!({ "ladder": to_json(&l), "growth_law": law });
    Ok(Rendered { text: Some(text), dot, ..Rendered::ok(json) })
}

fn generate(kind: GenerateKind, depth: usize, boxes: usize, seed: u64) -> Run {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_word = |rng: &mut ChaCha8Rng, len: usize| Word::from_bits((0..len).map(|_| rng.gen_range(0..2)).collect());
    match kind {
        GenerateKind::Graph => {
            let mut pairs = Vec::new();
            if depth > 0 {
                while pairs.len() < boxes {
                    let (u, v) = (random_word(&mut rng, depth), random_word(&mut rng, depth));
                    if u != v {
                        pairs.push((u, v));
                    }
                }
            }
            Ok(Rendered::ok(to_json(&ClopenGraph::new(depth, pairs)?)))
        }
        GenerateKind::Clopen => {
            let count = rng.gen_range(1..=boxes.max(1));
            let words: Vec<Word> = (0..count).map(|_| random_word(&mut rng, depth)).collect();
            Ok(Rendered::ok(to_json(&ClopenSet::new(depth, words)?)))
        }
        GenerateKind::Silver => {
            let pattern: Vec<Option<u8>> =
                (0..depth).map(|_| match rng.gen_range(0..3) { 0 => None, b => Some(b - 1) }).collect();
            Ok(Rendered::ok(to_json(&BlockTree::silver(&pattern))))
        }
    }
}

/// DOT form of a finite tree; vertices carry their words as labels.
pub fn tree_dot(t: &FiniteTree) -> String {
    let nodes: Vec<&Word> = t.nodes().iter().collect();
    let index = |w: &Word| nodes.binary_search(&w).expect("node");
    let mut out = String::from("digraph tree {\n");
    for (i, w) in nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{w}\"];");
    }
    for (i, w) in nodes.iter().enumerate() {
        if !w.is_empty() {
            let _ = writeln!(out, "  n{} -> n{i};", index(&w.prefix(w.len() - 1)));
        }
    }
    out.push_str("}\n");
    out
}
