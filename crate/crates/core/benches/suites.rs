//! Sequential against rayon-parallel runs of the property suites on the
//! reduced workload. Without the `parallel` feature both arms run
//! sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use henselkit::arith::factor_fp::DEFAULT_SEED;
use henselkit::suite::{
    conductor_suite, cover_suite, generator_suite, prepare, run_all, spectrum_suites, triple_and_reciprocal_suites,
    Mode, Sizes,
};

const MODES: [(&str, Mode); 2] = [("sequential", Mode::Sequential), ("parallel", Mode::Parallel)];

fn suites(c: &mut Criterion) {
    let sizes = Sizes::small();
    let prepared = prepare(DEFAULT_SEED, sizes.settings, Mode::Sequential);
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::new("prepare", name), &mode, |b, &m| {
            b.iter(|| prepare(black_box(DEFAULT_SEED), sizes.settings, m))
        });
        group.bench_with_input(BenchmarkId::new("generator", name), &mode, |b, &m| {
            b.iter(|| generator_suite(black_box(&prepared), m))
        });
        group.bench_with_input(BenchmarkId::new("conductor", name), &mode, |b, &m| {
            b.iter(|| conductor_suite(black_box(&prepared), &sizes, DEFAULT_SEED, m))
        });
        group.bench_with_input(BenchmarkId::new("cover", name), &mode, |b, &m| {
            b.iter(|| cover_suite(black_box(&prepared), &sizes, DEFAULT_SEED, m))
        });
        group.bench_with_input(BenchmarkId::new("triple", name), &mode, |b, &m| {
            b.iter(|| triple_and_reciprocal_suites(black_box(&prepared), &sizes, DEFAULT_SEED, m))
        });
        group.bench_with_input(BenchmarkId::new("spectra", name), &mode, |b, &m| {
            b.iter(|| spectrum_suites(black_box(&prepared), &sizes, DEFAULT_SEED, m))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("run_all");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &m| {
            b.iter(|| run_all(black_box(DEFAULT_SEED), &sizes, m))
        });
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
