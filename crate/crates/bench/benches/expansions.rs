use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fdb_core::{build_asets, enumerate_partitions, expand_chain, expand_tangent, MultiIndex};

fn partitions(c: &mut Criterion) {
    let mut g = c.benchmark_group("partitions");
    for n in [4usize, 6, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate_partitions(black_box(MultiIndex::ones(n))).len())
        });
    }
    g.finish();
}

fn asets(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_asets");
    for n in [4usize, 6, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| build_asets(black_box(MultiIndex::ones(n))).len())
        });
    }
    g.finish();
}

fn expansions(c: &mut Criterion) {
    let mut g = c.benchmark_group("expand");
    for n in [3usize, 5] {
        let alpha = MultiIndex::ones(n);
        g.bench_with_input(BenchmarkId::new("tangent", n), &alpha, |b, &a| {
            b.iter(|| expand_tangent(black_box(a)))
        });
        g.bench_with_input(BenchmarkId::new("chain", n), &alpha, |b, &a| {
            b.iter(|| expand_chain(black_box(a)))
        });
    }
    g.finish();
}

criterion_group!(benches, partitions, asets, expansions);
criterion_main!(benches);
