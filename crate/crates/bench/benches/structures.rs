use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use effectlab::interval::no_lub_witness;
use effectlab::*;

fn kalmbach(c: &mut Criterion) {
    let budget = Budget::default();
    let mut g = c.benchmark_group("kalmbach_extension");
    for n in [4usize, 6, 8] {
        let chain = Arc::new(FinBoundedPoset::chain(n));
        g.bench_with_input(BenchmarkId::new("chain", n), &chain, |b, p| {
            b.iter(|| kalmbach_extension(black_box(p), &budget).unwrap())
        });
    }
    let b3 = Arc::new(FinBoundedPoset::boolean(3));
    g.bench_function("boolean3", |b| b.iter(|| kalmbach_extension(black_box(&b3), &budget).unwrap()));
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let budget = Budget::default();
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for n in [5usize, 6] {
        g.bench_with_input(BenchmarkId::new("posets", n), &n, |b, &n| {
            b.iter(|| enumerate_bounded_posets(n, &budget).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("effect_algebras", n), &n, |b, &n| {
            b.iter(|| enumerate_effect_algebras(n, &budget).unwrap())
        });
    }
    g.bench_function("census6", |b| b.iter(|| census(6, &budget).unwrap()));
    g.finish();
}

fn checks(c: &mut Criterion) {
    let budget = Budget::default();
    let k = kalmbach_extension(&Arc::new(FinBoundedPoset::chain(6)), &budget).unwrap();
    c.bench_function("check_omp/K(chain6)", |b| b.iter(|| check_omp(black_box(k.omp()))));
    let m = FinEffectMonoid::boolean(3);
    c.bench_function("classify/2^3", |b| b.iter(|| classify_finite_em(black_box(&m)).unwrap()));
    c.bench_function("no_lub_witness/20", |b| b.iter(|| no_lub_witness(black_box(20)).unwrap()));
}

criterion_group!(benches, kalmbach, enumeration, checks);
criterion_main!(benches);
