use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use treeforce::constructions::{density_dichotomy, four_cycle, Relation, DEFAULT_CYCLE_BOUND};
use treeforce::fat::{is_fat, ladder};
use treeforce::graphs::{chromatic_number, restrict, ClopenGraph, GraphSpec, DEFAULT_COLORING_BUDGET};
use treeforce::trees::{fusion, BlockTree, FusionSequence, TreeOracle};
use treeforce::{w, Word};
use treeforce_bench::{copy_closed_graph, odd_fixing};

fn restriction(c: &mut Criterion) {
    let mut group = c.benchmark_group("restrict");
    for n in [8, 12, 14] {
        group.bench_with_input(BenchmarkId::new("g0", n), &n, |b, &n| b.iter(|| restrict(&GraphSpec::g0(), n).unwrap()));
        group.bench_with_input(BenchmarkId::new("g1", n), &n, |b, &n| b.iter(|| restrict(&GraphSpec::G1, n).unwrap()));
    }
    group.finish();
}

fn coloring(c: &mut Criterion) {
    let mut group = c.benchmark_group("chromatic");
    for n in [6, 10] {
        let g = restrict(&GraphSpec::G1, n).unwrap();
        group.bench_with_input(BenchmarkId::new("g1", n), &g, |b, g| {
            b.iter(|| chromatic_number(g, DEFAULT_COLORING_BUDGET).unwrap())
        });
    }
    group.finish();
}

fn fusion_queries(c: &mut Criterion) {
    let seq = FusionSequence::new(64, odd_fixing);
    let f = fusion(&seq, 10).unwrap();
    let words: Vec<Word> = Word::all(14).collect();
    c.bench_function("fusion/contains_2^14", |b| b.iter(|| words.iter().filter(|s| f.contains(s)).count()));
}

fn constructions(c: &mut Criterion) {
    let g = ClopenGraph::new(3, [(w("000"), w("111")), (w("010"), w("101"))]).unwrap();
    c.bench_function("dichotomy/depth3", |b| {
        b.iter(|| density_dichotomy(black_box(&BlockTree::full()), &g, Relation::G1, 10_000, 4).unwrap())
    });
    let closed = copy_closed_graph(4);
    c.bench_function("four_cycle/depth4", |b| {
        b.iter(|| four_cycle(black_box(&BlockTree::full()), &closed, DEFAULT_CYCLE_BOUND).unwrap())
    });
}

fn fat_trees(c: &mut Criterion) {
    c.bench_function("ladder/full_3", |b| b.iter(|| ladder(black_box(&BlockTree::full()), 3, 1 << 12).unwrap()));
    let p = BlockTree::silver(&[None, Some(1), None, Some(0)]);
    c.bench_function("is_fat/split6_probe128", |b| b.iter(|| is_fat(black_box(&p), 6, 128).unwrap()));
}

criterion_group!(benches, restriction, coloring, fusion_queries, constructions, fat_trees);
criterion_main!(benches);
