use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use gpss_bench::{bundles, dense, grid_points, gridlike, small_random};
use gpss_core::solvers::choose_k;
use gpss_core::{
    arrangement_vertices, collinear_triples, dense_lattice_gpss, exact_gpss, greedy_gpss,
    greedy_line_cover, line_profile, sample_delete_arrangement, sample_delete_gridlike, Rational,
    ScanOrder, Seed, Variant,
};

fn analysis(c: &mut Criterion) {
    let mut g = c.benchmark_group("analysis");
    for m in [8u64, 16, 24] {
        let s = grid_points(m);
        g.bench_with_input(BenchmarkId::new("line_profile", m * m), &s, |b, s| {
            b.iter(|| line_profile(black_box(s)))
        });
        g.bench_with_input(BenchmarkId::new("collinear_triples", m * m), &s, |b, s| {
            b.iter(|| collinear_triples(black_box(s)))
        });
        g.bench_with_input(BenchmarkId::new("greedy_line_cover", m * m), &s, |b, s| {
            b.iter(|| greedy_line_cover(black_box(s)))
        });
    }
    for n in [30usize, 60] {
        let l = bundles(n);
        g.bench_with_input(BenchmarkId::new("arrangement_vertices", n), &l, |b, l| {
            b.iter(|| arrangement_vertices(black_box(l)))
        });
    }
    g.finish();
}

fn solvers(c: &mut Criterion) {
    let mut g = c.benchmark_group("solvers");
    g.sample_size(20);
    for n in [256usize, 1024] {
        let (s, alpha) = dense(n);
        g.bench_with_input(BenchmarkId::new("dense", n), &s, |b, s| {
            b.iter(|| dense_lattice_gpss(black_box(s), &alpha).unwrap())
        });
    }
    for m in [8u64, 16] {
        let s = grid_points(m);
        g.bench_with_input(BenchmarkId::new("greedy", m * m), &s, |b, s| {
            b.iter(|| greedy_gpss(black_box(s), ScanOrder::Input, Seed(0)))
        });
    }
    for n in [16usize, 24] {
        let s = small_random(n, 6);
        g.bench_with_input(BenchmarkId::new("exact", n), &s, |b, s| {
            b.iter(|| exact_gpss(black_box(s), 2_000_000))
        });
    }
    g.finish();
}

fn sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("sampling");
    g.sample_size(10);
    let one = Rational::one();
    for n in [30usize, 60] {
        let l = bundles(n);
        let population = arrangement_vertices(&l).len();
        let plan = choose_k(Variant::Arrangement, n, Some(population), &one)
            .unwrap()
            .with_trials(10);
        g.bench_with_input(BenchmarkId::new("arrangement", n), &l, |b, l| {
            b.iter(|| sample_delete_arrangement(black_box(l), None, &plan).unwrap())
        });
    }
    for n in [256usize, 1024] {
        let s = gridlike(n);
        let plan = choose_k(Variant::GridLike, s.len(), None, &one)
            .unwrap()
            .with_trials(10);
        g.bench_with_input(BenchmarkId::new("gridlike", n), &s, |b, s| {
            b.iter(|| sample_delete_gridlike(black_box(s), &plan).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, analysis, solvers, sampling);
criterion_main!(benches);
