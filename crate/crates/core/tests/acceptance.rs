//! Acceptance run: one PASS/FAIL line per criterion, each against its time limit.
//!
//! Expected values come from oracles written here, not from the library.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treeforce::constructions::{
    density_dichotomy, four_cycle, DichotomyOutcome, Relation, DEFAULT_CYCLE_BOUND,
};
use treeforce::fat::{fatclaim_step, g0_tree_inside, is_fat, ladder, sufficient_probe, ShiftVerdict};
use treeforce::graphs::{
    chromatic_number, clopen_independence_witness, is_proper, restrict, ClopenGraph, GraphSpec,
    DEFAULT_COLORING_BUDGET,
};
use treeforce::trees::{check_silver_law, fusion, BlockTree, FusionSequence, Tail, TreeOracle};
use treeforce::{ClopenSet, Point, Word};

type Check = fn() -> Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(usize, u64, &str, Check); 11] = [
        (1, 30, "G0 restrictions are spanning trees", c1_g0_spanning_trees),
        (2, 10, "G1 restrictions are hypercubes", c2_g1_hypercubes),
        (3, 10, "non-independence witnesses for every cylinder", c3_witnesses),
        (4, 30, "edge chain G0 => G1 => E0", c4_edge_chain),
        (5, 60, "fusion of Silver sequences", c5_fusion),
        (6, 120, "dichotomy on a box-graph catalog", c6_dichotomy),
        (7, 60, "4-cycles in agreeing graphs", c7_four_cycles),
        (8, 60, "fatclaim postconditions", c8_fatclaim),
        (9, 120, "fat trees inside clopen sets", c9_fat_inside),
        (10, 60, "ladder growth law", c10_growth_law),
        (11, 60, "fatness reduction against a direct oracle", c11_fatness_oracle),
    ];
    let mut failed = 0;
    for (id, limit, name, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        let over = took > Duration::from_secs(limit);
        let (status, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the time limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {id:>2} {status} {:>7.2}s / {limit:>3}s  {name}: {detail}", took.as_secs_f64());
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// ---- oracles ----

/// The k-th word in length-lex order: binary of k + 1 without its leading 1.
fn oracle_e(k: usize) -> Word {
    let m = k + 1;
    let bits = usize::BITS - m.leading_zeros() - 1;
    Word::from_bits((0..bits).rev().map(|i| ((m >> i) & 1) as u8).collect())
}

/// e_k padded with zeros to length k.
fn oracle_s(k: usize) -> Word {
    let mut s = oracle_e(k);
    while s.len() < k {
        s.push(0);
    }
    s
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_word(r: &mut ChaCha8Rng, len: usize) -> Word {
    Word::from_bits((0..len).map(|_| r.gen_range(0..2)).collect())
}

fn random_point(r: &mut ChaCha8Rng) -> Point {
    let (a, b) = (r.gen_range(0..12), r.gen_range(1..5));
    Point::new(random_word(r, a), random_word(r, b)).unwrap()
}

/// Nodes of length d, by walking the membership oracle.
fn oracle_nodes<T: TreeOracle>(p: &T, d: usize) -> Vec<Word> {
    let mut level = vec![Word::empty()];
    for _ in 0..d {
        level = level.iter().flat_map(|s| [s.child(0), s.child(1)]).filter(|s| p.contains(s)).collect();
    }
    level
}

fn random_pattern(r: &mut ChaCha8Rng, len: usize, free: f64) -> Vec<Option<u8>> {
    (0..len).map(|_| if r.gen_bool(free) { None } else { Some(r.gen_range(0..2)) }).collect()
}

// ---- 1, 2: finite restrictions ----

fn c1_g0_spanning_trees() -> Result<String, String> {
    for n in 1..=14 {
        let g = restrict(&GraphSpec::g0(), n).map_err(|e| e.to_string())?;
        let v = 1usize << n;
        ensure!(g.edge_count() == v - 1, "n={n}: {} edges", g.edge_count());
        let mut parent: Vec<usize> = (0..v).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, b) in g.edges() {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            ensure!(ra != rb, "n={n}: edge ({a}, {b}) closes a cycle");
            parent[ra] = rb;
        }
        let chi = chromatic_number(&g, DEFAULT_COLORING_BUDGET).map_err(|e| e.to_string())?;
        ensure!(chi.chromatic_number == 2, "n={n}: chromatic number {}", chi.chromatic_number);
    }
    Ok("n = 1..14 acyclic with 2^n - 1 edges, chi = 2".into())
}

fn c2_g1_hypercubes() -> Result<String, String> {
    for n in 1..=10 {
        let g = restrict(&GraphSpec::G1, n).map_err(|e| e.to_string())?;
        ensure!(g.edge_count() == n << (n - 1), "n={n}: {} edges", g.edge_count());
        for (a, b) in g.edges() {
            ensure!((a ^ b).count_ones() == 1, "n={n}: ({a}, {b}) is not a cube edge");
        }
        let adjacency: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect();
        let parity: Vec<usize> = (0..g.vertex_count()).map(|v| v.count_ones() as usize % 2).collect();
        ensure!(is_proper(&adjacency, &parity), "n={n}: parity coloring is improper");
        let chi = chromatic_number(&g, DEFAULT_COLORING_BUDGET).map_err(|e| e.to_string())?;
        ensure!(chi.chromatic_number == 2, "n={n}: chromatic number {}", chi.chromatic_number);
    }
    Ok("n = 1..10 with n 2^(n-1) edges, chi = 2".into())
}

// ---- 3, 4: edges ----

fn single_difference(x: &Point, y: &Point, horizon: usize) -> Option<usize> {
    let d: Vec<usize> = (0..horizon).filter(|&i| x.bit(i) != y.bit(i)).collect();
    (d.len() == 1).then(|| d[0])
}

fn c3_witnesses() -> Result<String, String> {
    let mut count = 0;
    for len in 1..=9 {
        for s in Word::all(len) {
            let a = ClopenSet::cylinder(&s);
            for g in [GraphSpec::g0(), GraphSpec::G1] {
                let wit = clopen_independence_witness(&g, &a, len)
                    .map_err(|e| e.to_string())?
                    .ok_or(format!("{} witness missing for {s}", g.name()))?;
                ensure!(a.contains_point(&wit.x) && a.contains_point(&wit.y), "witness for {s} leaves the set");
                // Both points are zero-padded words, so differences lie before the horizon.
                let horizon = wit.x.prefix().len().max(wit.y.prefix().len()) + 1;
                let k = single_difference(&wit.x, &wit.y, horizon).ok_or(format!("{s}: not one coordinate"))?;
                if g == GraphSpec::g0() {
                    ensure!(wit.x.restrict(k) == oracle_s(k), "{s}: prefix at {k} is not s_{k}");
                }
                count += 1;
            }
        }
    }
    ensure!(count == 2 * 1022, "{count} witnesses");
    Ok(format!("{count} verified witnesses"))
}

fn c4_edge_chain() -> Result<String, String> {
    let mut r = rng(4);
    let (g0, g1, e0) = (GraphSpec::g0(), GraphSpec::G1, GraphSpec::E0);
    let mut counts = [0usize; 3];
    for i in 0..10_000 {
        let x = random_point(&mut r);
        let (x, y) = match i % 4 {
            0 => (x, random_point(&mut r)),
            1 => {
                let y = x.xor_word(&Word::unit(r.gen_range(0..16)));
                (x, y)
            }
            2 => {
                let k = r.gen_range(0..12);
                let z = x.drop_front(k + 1).prepend(&Word::from_bits(vec![0])).prepend(&oracle_s(k));
                let y = z.xor_word(&Word::unit(k));
                counts[0] += 1;
                ensure!(g0.is_edge(&z, &y), "{z} and {y} should be a G0 edge");
                (z, y)
            }
            _ => {
                let y = x.xor_word(&random_word(&mut r, 10));
                (x, y)
            }
        };
        let (a, b, c) = (g0.is_edge(&x, &y), g1.is_edge(&x, &y), e0.is_edge(&x, &y));
        ensure!(!a || b, "G0 edge {x} -- {y} is not a G1 edge");
        ensure!(!b || c, "G1 edge {x} -- {y} is not an E0 edge");
        counts[1] += b as usize;
        counts[2] += c as usize;
    }
    Ok(format!("10000 pairs, {} built G0 edges, {} G1 and {} E0 edges", counts[0], counts[1], counts[2]))
}

// ---- 5: fusion ----

/// The Silver tree of `pattern` cut at its n-th free coordinate (all free past 20).
fn truncated_silver(pattern: &[Option<u8>], n: usize) -> BlockTree {
    let mut free = 0;
    let mut cut = pattern.len();
    for (c, v) in pattern.iter().enumerate() {
        if v.is_none() {
            if free == n {
                cut = c;
                break;
            }
            free += 1;
        }
    }
    BlockTree::silver(&pattern[..cut])
}

fn c5_fusion() -> Result<String, String> {
    let mut r = rng(5);
    let mut nodes = 0usize;
    for i in 0..100 {
        let pattern = random_pattern(&mut r, 20, 0.4);
        let gen = pattern.clone();
        let seq = FusionSequence::new(64, move |n| truncated_silver(&gen, n));
        let f = fusion(&seq, 20).map_err(|e| format!("sequence {i}: {e}"))?;
        let members: Vec<BlockTree> = (0..=20).map(|n| truncated_silver(&pattern, n)).collect();
        // Both sides are trees, so only the children of common nodes need checking.
        let mut level = vec![Word::empty()];
        for _ in 0..20 {
            let mut next = Vec::new();
            for s in level.iter().flat_map(|s| [s.child(0), s.child(1)]) {
                let literal = members.iter().all(|p| p.contains(&s));
                ensure!(f.contains(&s) == literal, "sequence {i}: fusion and intersection differ at {s}");
                if literal {
                    next.push(s);
                }
            }
            nodes += next.len();
            level = next;
        }
        if let Some(s) = check_silver_law(&f, 20).map_err(|e| e.to_string())? {
            return Err(format!("sequence {i}: fusion breaks the Silver law at {s}"));
        }
    }
    Ok(format!("100 sequences, {nodes} common nodes up to length 20"))
}

// ---- 6: density dichotomy ----

fn complete_graph(d: usize) -> Vec<(Word, Word)> {
    let words: Vec<Word> = Word::all(d).collect();
    let mut out = Vec::new();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            out.push((u.clone(), v.clone()));
        }
    }
    out
}

fn catalog() -> Vec<ClopenGraph> {
    let mut graphs = Vec::new();
    let mut add = |d: usize, pairs: Vec<(Word, Word)>| graphs.push(ClopenGraph::new(d, pairs).unwrap());
    for d in 1..=4 {
        add(d, vec![]);
        add(d, complete_graph(d).into_iter().filter(|(u, v)| u.bit(0) != v.bit(0)).collect());
        add(d, Word::all(d).filter(|u| u.bit(0) == 0).map(|u| (u.clone(), u.flip(0))).collect());
    }
    for d in 1..=3 {
        add(d, complete_graph(d));
    }
    for d in 2..=4 {
        add(d, vec![(Word::zeros(d), Word::zeros(d).xor(&Word::from_bits(vec![1; d])))]);
        add(d, Word::all(d).filter(|u| u.bit(d - 1) == 0).map(|u| (u.clone(), u.flip(d - 1))).collect());
    }
    let mut r = rng(6);
    while graphs.len() < 60 {
        let d = r.gen_range(2..=4);
        let density = [0.1, 0.5, 0.9][graphs.len() % 3];
        let pairs: Vec<(Word, Word)> = complete_graph(d).into_iter().filter(|_| r.gen_bool(density)).collect();
        graphs.push(ClopenGraph::new(d, pairs).unwrap());
    }
    graphs
}

/// Every split of q below `depth`, checked for related cross pairs in a box.
fn oracle_independent(q: &BlockTree, g: &ClopenGraph, rel: Relation, depth: usize) -> Result<(), String> {
    let nodes: BTreeSet<Word> = oracle_nodes(q, depth).into_iter().collect();
    let mut splits = BTreeSet::new();
    for x in &nodes {
        for h in 0..depth {
            if q.contains(&x.prefix(h).child(1 - x.bit(h))) {
                splits.insert(x.prefix(h));
            }
        }
    }
    for u in &splits {
        let side = |b: u8| -> Vec<&Word> {
            let c = u.child(b);
            nodes.range(c.clone()..).take_while(|x| c.is_prefix_of(x)).collect()
        };
        let hit = match rel {
            Relation::G1 => side(0).iter().any(|x| g.has_box(x, &x.flip(u.len()))),
            Relation::E0 => {
                // A box only sees depth-d prefixes.
                let project = |v: Vec<&Word>| -> BTreeSet<Word> { v.iter().map(|x| x.prefix(g.depth())).collect() };
                let (a, b) = (project(side(0)), project(side(1)));
                a.iter().any(|x| b.iter().any(|y| g.has_box(x, y)))
            }
        };
        ensure!(!hit, "split at {u} has a related cross pair in a box");
    }
    Ok(())
}

fn outcome_kind(o: &DichotomyOutcome) -> &'static str {
    match o {
        DichotomyOutcome::IndependentTree { .. } => "independent",
        DichotomyOutcome::CliqueEvidence { .. } => "clique",
        DichotomyOutcome::Undecided { .. } => "undecided",
    }
}

fn c6_dichotomy() -> Result<String, String> {
    let graphs = catalog();
    let mut tally = std::collections::BTreeMap::new();
    for (i, g) in graphs.iter().enumerate() {
        let rels: &[Relation] = if i % 6 == 0 { &[Relation::G1, Relation::E0] } else { &[Relation::G1] };
        for &rel in rels {
            let mut kinds = BTreeSet::new();
            for budget in [10, 1_000, 100_000] {
                let out = density_dichotomy(&BlockTree::full(), g, rel, budget, 4).map_err(|e| format!("graph {i}: {e}"))?;
                match &out {
                    DichotomyOutcome::IndependentTree { below, tree } => {
                        ensure!(tree.is_subtree_of(below), "graph {i}: tree is not below its condition");
                        oracle_independent(tree, g, rel, 12).map_err(|e| format!("graph {i}: {e}"))?;
                    }
                    DichotomyOutcome::CliqueEvidence { tree } => {
                        let leaves = tree.leaves();
                        ensure!(leaves.len() >= 2, "graph {i}: clique ladder with {} leaves", leaves.len());
                        for (j, a) in leaves.iter().enumerate() {
                            for b in &leaves[j + 1..] {
                                ensure!(g.has_box(a, b), "graph {i}: leaves {a}, {b} not in a box");
                            }
                        }
                    }
                    DichotomyOutcome::Undecided { .. } => {}
                }
                kinds.insert(outcome_kind(&out));
                if budget == 100_000 {
                    *tally.entry(outcome_kind(&out)).or_insert(0) += 1;
                }
            }
            ensure!(
                !(kinds.contains("independent") && kinds.contains("clique")),
                "graph {i}: both outcomes across budgets"
            );
        }
    }
    let summary: Vec<String> = tally.iter().map(|(k, v)| format!("{v} {k}")).collect();
    ensure!(graphs.len() >= 50, "catalog has {} graphs", graphs.len());
    Ok(format!("{} graphs, outcomes at the largest budget: {}", graphs.len(), summary.join(", ")))
}

// ---- 7: 4-cycles ----

fn c7_four_cycles() -> Result<String, String> {
    let mut r = rng(7);
    let d = 10;
    let mut phases = std::collections::BTreeMap::new();
    for i in 0..200 {
        let pattern = loop {
            let p = random_pattern(&mut r, d, 0.7);
            if p.iter().filter(|c| c.is_none()).count() >= 7 {
                break p;
            }
        };
        let tree = BlockTree::silver(&pattern);
        ensure!(tree.blocks_below(d) >= 7, "condition {i} has {} blocks below {d}", tree.blocks_below(d));
        let h = pattern.iter().position(|c| c.is_none()).unwrap();
        let mut pairs: Vec<(Word, Word)> = oracle_nodes(&tree, d).iter().map(|x| (x.clone(), x.flip(h))).collect();
        // Samples 0 e_j 1 then zeros, j = 1..18, and their copies across the root split.
        let samples: Vec<Point> = (1..=18)
            .map(|j| {
                let mut sel = Word::zeros(1).concat(&oracle_e(j));
                sel.push(1);
                tree.branch_word(&sel)
            })
            .collect();
        for a in 0..18 {
            for b in a + 1..18 {
                let (za, zb) = (&samples[a], &samples[b]);
                let pair = if r.gen_bool(0.5) {
                    (za.restrict(d), zb.restrict(d))
                } else {
                    (za.restrict(d).flip(h), zb.restrict(d).flip(h))
                };
                pairs.push(pair);
            }
        }
        let g = ClopenGraph::new(d, pairs).map_err(|e| e.to_string())?;
        let report = four_cycle(&tree, &g, DEFAULT_CYCLE_BOUND).map_err(|e| format!("condition {i}: {e}"))?;
        let c = &report.cycle;
        let distinct: BTreeSet<&Point> = c.iter().collect();
        ensure!(distinct.len() == 4, "condition {i}: repeated points");
        for j in 0..4 {
            let (x, y) = (&c[j], &c[(j + 1) % 4]);
            ensure!(g.has_box(&x.restrict(d), &y.restrict(d)), "condition {i}: {x} -- {y} is not an edge");
            ensure!(tree.contains(&x.restrict(2 * d)), "condition {i}: {x} is not a branch");
        }
        *phases.entry(format!("{:?}", report.phase)).or_insert(0) += 1;
    }
    let summary: Vec<String> = phases.iter().map(|(k, v)| format!("{v} {k}")).collect();
    Ok(format!("200 verified cycles: {}", summary.join(", ")))
}

// ---- 8: fatclaim ----

fn random_clopen(r: &mut ChaCha8Rng, max_depth: usize, max_words: usize) -> ClopenSet {
    loop {
        let d = r.gen_range(1..=max_depth);
        let n = r.gen_range(1..=max_words);
        let words: Vec<Word> = (0..n).map(|_| random_word(r, d)).collect();
        let a = ClopenSet::new(d, words).unwrap();
        if !a.is_empty() {
            return a;
        }
    }
}

fn c8_fatclaim() -> Result<String, String> {
    let mut r = rng(8);
    let (mut steps, mut skipped) = (0, 0);
    for i in 0..500 {
        let a = random_clopen(&mut r, 6, 12);
        let stem = a.stem_of().map_err(|e| e.to_string())?;
        for len in 0..=4 {
            if len < stem.len() {
                skipped += 1 << len;
                continue;
            }
            let mut s = stem.clone();
            while s.len() < len {
                s.push(0);
            }
            for t in Word::all(len) {
                let step = fatclaim_step(&a, &s, &t).map_err(|e| format!("set {i}, t={t}: {e}"))?;
                let (n, set) = (step.n, &step.set);
                let sn = oracle_s(n);
                ensure!(!set.is_empty(), "set {i}, t={t}: empty A_t");
                ensure!(set.depth() > n, "set {i}, t={t}: depth {} does not reach {n}", set.depth());
                for x in set.words() {
                    ensure!(a.contains_cylinder(x), "set {i}, t={t}: {x} not in A");
                    ensure!(a.contains_cylinder(&x.flip(n)), "set {i}, t={t}: {x} + 1_{n} not in A");
                    ensure!(sn.is_prefix_of(&x.xor(&t)), "set {i}, t={t}: s_{n} not below {x} + t");
                }
                steps += 1;
            }
        }
    }
    Ok(format!("{steps} steps verified, {skipped} shifts shorter than the stem"))
}

// ---- 9: fat trees inside clopen sets ----

fn c9_fat_inside() -> Result<String, String> {
    let mut r = rng(9);
    let mut entries = 0;
    for i in 0..100 {
        let a = random_clopen(&mut r, 6, 8);
        let p = g0_tree_inside(&a, 2, 1 << 20).map_err(|e| format!("set {i}: {e}"))?;
        ensure!(p.is_silver(), "set {i}: output is not Silver");
        ensure!(p.explicit_blocks().len() >= 2, "set {i}: fewer than 2 explicit blocks");
        for x in oracle_nodes(&p, a.depth()) {
            ensure!(a.contains_cylinder(&x), "set {i}: node {x} leaves A");
        }
        for _ in 0..50 {
            let branch = p.branch_word(&random_word(&mut r, 20));
            ensure!(a.contains_point(&branch), "set {i}: branch {branch} leaves A");
            ensure!(p.contains(&branch.restrict(20)), "set {i}: {branch} is not a branch");
        }
        let split_depth = p.split_height(p.explicit_blocks().len() - 1) + 1;
        let report = is_fat(&p, split_depth, sufficient_probe(split_depth.max(a.depth()))).map_err(|e| e.to_string())?;
        ensure!(report.is_fat(), "set {i}: not fat at {:?}", report.first_missing());
        entries += report.entries.len();
    }
    Ok(format!("100 trees, {entries} fatness entries"))
}

// ---- 10: growth law ----

fn c10_growth_law() -> Result<String, String> {
    let mut trees = vec![BlockTree::full()];
    for mask in 1..=10u32 {
        let words = Word::all(8).filter(|x| (0..4).all(|i| mask & (1 << i) == 0 || x.bit(4 + i) == 0));
        let a = ClopenSet::new(8, words).unwrap();
        trees.push(g0_tree_inside(&a, 2, 1 << 20).map_err(|e| format!("mask {mask}: {e}"))?);
    }
    for (i, p) in trees.iter().enumerate() {
        let l = ladder(p, 3, 1 << 12).map_err(|e| format!("tree {i}: {e}"))?;
        let mut levels: Vec<BTreeSet<Word>> = Vec::new();
        for n in 0..=3 {
            let words = l.level(n, 1 << 16).ok_or(format!("tree {i}: level {n} too large"))?;
            let set: BTreeSet<Word> = words.iter().cloned().collect();
            ensure!(set.len() == words.len(), "tree {i}: repeated nodes in L_{n}");
            for x in &set {
                ensure!(x.len() == l.height(n) && p.contains(x), "tree {i}: {x} is not a node at height {}", l.height(n));
                if n > 0 {
                    ensure!(levels[n - 1].contains(&x.prefix(l.height(n - 1))), "tree {i}: {x} leaves L_{}", n - 1);
                }
            }
            levels.push(set);
        }
        for n in 0..=2 {
            let expected = levels[n].len() << (1usize << l.height(n));
            ensure!(levels[n + 1].len() == expected, "tree {i}: |L_{}| = {}, want {expected}", n + 1, levels[n + 1].len());
            ensure!(l.growth_law_holds(n), "tree {i}: ladder disagrees at {n}");
            let splits: BTreeSet<usize> = l.splits(n).iter().copied().collect();
            ensure!(splits.len() == 1 << l.height(n), "tree {i}: repeated split coordinates at {n}");
        }
    }
    Ok(format!("{} trees, n = 0, 1, 2", trees.len()))
}

// ---- 11: fatness reduction ----

fn random_silver(r: &mut ChaCha8Rng) -> BlockTree {
    if r.gen_bool(0.5) {
        let len = r.gen_range(3..=10);
        return BlockTree::silver(&random_pattern(r, len, 0.5));
    }
    let block = |r: &mut ChaCha8Rng| {
        let rest = r.gen_range(0..=2);
        let u = random_word(r, rest);
        (Word::zeros(1).concat(&u), Word::from_bits(vec![1]).concat(&u))
    };
    let stem_len = r.gen_range(0..=3);
    let stem = random_word(r, stem_len);
    let blocks = (0..r.gen_range(0..=3)).map(|_| block(r)).collect();
    let cycle = (0..r.gen_range(1..=2)).map(|_| block(r)).collect();
    BlockTree::new(stem, blocks, Tail::Cycle { blocks: cycle }).unwrap()
}

/// Whether some G0 edge lies inside [p_s] + t, among depth-`probe` representatives.
fn direct_fat(
    s: &Word,
    t: &Word,
    nodes: &[(Word, Point)],
    members: &BTreeSet<Word>,
    g0: &GraphSpec,
    probe: usize,
) -> bool {
    for (y, branch) in nodes.iter().filter(|(y, _)| s.is_prefix_of(y)) {
        let x = y.xor(t);
        for k in s.len()..probe {
            if !members.contains(&y.flip(k)) || x.prefix(k) != oracle_s(k) {
                continue;
            }
            let big = branch.xor_word(t);
            if g0.is_edge(&big, &big.xor_word(&Word::unit(k))) {
                return true;
            }
        }
    }
    false
}

fn c11_fatness_oracle() -> Result<String, String> {
    let (probe, split_depth) = (12, 5);
    let mut r = rng(11);
    let g0 = GraphSpec::g0();
    let (mut fat, mut entries) = (0, 0);
    for i in 0..500 {
        let p = random_silver(&mut r);
        let report = is_fat(&p, split_depth, probe).map_err(|e| format!("tree {i}: {e}"))?;
        let nodes: Vec<(Word, Point)> = p.nodes_at(probe).into_iter().map(|(x, sel)| (x, p.branch_word(&sel))).collect();
        let members: BTreeSet<Word> = oracle_nodes(&p, probe).into_iter().collect();
        ensure!(nodes.len() == members.len() && nodes.iter().all(|(x, _)| members.contains(x)), "tree {i}: node sets differ");
        let mut expected = BTreeSet::new();
        for x in &members {
            for h in 0..split_depth.min(probe) {
                if p.contains(&x.prefix(h).child(1 - x.bit(h))) {
                    expected.extend(Word::all(h).map(|t| (x.prefix(h), t)));
                }
            }
        }
        let listed: BTreeSet<(Word, Word)> = report.entries.iter().map(|e| (e.node.clone(), e.shift.clone())).collect();
        ensure!(listed == expected, "tree {i}: entries are not all (split, shift) pairs below {split_depth}");
        for e in &report.entries {
            let direct = direct_fat(&e.node, &e.shift, &nodes, &members, &g0, probe);
            let reduced = matches!(e.verdict, ShiftVerdict::Witness { .. });
            ensure!(direct == reduced, "tree {i}: s={}, t={}: reduction {reduced}, direct {direct}", e.node, e.shift);
        }
        entries += report.entries.len();
        fat += report.is_fat() as usize;
    }
    Ok(format!("500 trees ({fat} fat), {entries} entries agree"))
}
