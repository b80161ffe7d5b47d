use std::hint::black_box;

use apex_bench::{grid_with_k5s, planted};
use apex_core::{
    find_hex_subdivision, find_kuratowski, is_planar, run_pipeline, solve_exact, ConstantsMode,
    PipelineConfig, SearchBudget,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn planarity(c: &mut Criterion) {
    let mut group = c.benchmark_group("planarity");
    for n in [1_000, 10_000] {
        let g = planted(n, 0, 1);
        group.bench_with_input(BenchmarkId::new("is_planar", n), &g, |b, g| {
            b.iter(|| is_planar(black_box(g)))
        });
        let h = planted(n, 1, 1);
        group.bench_with_input(BenchmarkId::new("find_kuratowski", n), &h, |b, h| {
            b.iter(|| find_kuratowski(black_box(h)))
        });
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_exact");
    group.sample_size(10);
    for copies in [1, 2, 3] {
        let g = grid_with_k5s(12, copies);
        group.bench_with_input(BenchmarkId::new("grid_plus_k5s", copies), &g, |b, g| {
            b.iter(|| solve_exact(black_box(g), copies))
        });
    }
    group.finish();
}

fn grid_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("hex_search");
    group.sample_size(10);
    let g = planted(2_000, 1, 3);
    for r in [4, 8, 12] {
        group.bench_with_input(BenchmarkId::new("radius", r), &r, |b, &r| {
            b.iter(|| find_hex_subdivision(black_box(&g), r, SearchBudget::default()))
        });
    }
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    let config = PipelineConfig {
        constants: ConstantsMode::Reduced,
        ..PipelineConfig::default()
    };
    let g = planted(5_000, 2, 1);
    group.bench_function("reduced_k2_n5000", |b| {
        b.iter(|| run_pipeline(black_box(&g), 2, &config))
    });
    group.finish();
}

criterion_group!(benches, planarity, exact, grid_search, pipeline);
criterion_main!(benches);
