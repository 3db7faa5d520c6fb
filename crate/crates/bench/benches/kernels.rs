//! Criterion benchmarks of the exact kernels.

use std::hint::black_box;

use artinian::apolarity::{apolar_algebra, hilbert_function};
use artinian::commuting::tangent_space_dim;
use artinian_bench::{fixture_tuple, moment_points, power_sum, quadric_system, random_matrix};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn linear_algebra(c: &mut Criterion) {
    let mut g = c.benchmark_group("linear_algebra");
    for d in [6, 10, 14] {
        let m = random_matrix(d, d as u64);
        g.bench_with_input(BenchmarkId::new("rref", d), &m, |b, m| b.iter(|| black_box(m.rref())));
        g.bench_with_input(BenchmarkId::new("char_poly", d), &m, |b, m| b.iter(|| black_box(m.char_poly())));
    }
    g.finish();
}

fn apolarity(c: &mut Criterion) {
    let mut g = c.benchmark_group("apolarity");
    let e = quadric_system();
    g.bench_function("hilbert_function/quadrics", |b| b.iter(|| black_box(hilbert_function(&e))));
    g.bench_function("apolar_algebra/quadrics", |b| b.iter(|| black_box(apolar_algebra(&e))));
    for k in [3, 4] {
        let f = power_sum(4, k);
        g.bench_with_input(BenchmarkId::new("hilbert_function/form", k), &f, |b, f| {
            b.iter(|| black_box(hilbert_function(f)));
        });
    }
    g.finish();
}

fn commuting(c: &mut Criterion) {
    let mut g = c.benchmark_group("commuting");
    g.sample_size(10);
    let t = fixture_tuple("prop_smooth1nr1");
    g.bench_function("tangent_space_dim/d10", |b| b.iter(|| black_box(tangent_space_dim(&t, None))));
    g.finish();
}

fn ideals(c: &mut Criterion) {
    let mut g = c.benchmark_group("ideals");
    for count in [4, 8] {
        let pts = moment_points(3, count);
        g.bench_with_input(BenchmarkId::new("intersect_points", count), &pts, |b, pts| {
            b.iter(|| black_box(pts[1..].iter().try_fold(pts[0].clone(), |acc, p| acc.intersect(p))));
        });
    }
    g.finish();
}

criterion_group!(kernels, linear_algebra, apolarity, commuting, ideals);
criterion_main!(kernels);
