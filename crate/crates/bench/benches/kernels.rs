use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dirseries::matrix::build_rd;
use dirseries::series::{dir_inverse, dir_mul, dir_pow_param};
use dirseries::DirSeries;
use dirseries_bench::{tail_series, unit_series};

fn convolution(c: &mut Criterion) {
    let mut g = c.benchmark_group("dir_mul");
    for n in [256, 1024, 4096] {
        let (a, b) = (unit_series(n, 1), unit_series(n, 2));
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| dir_mul(black_box(&a), black_box(&b)))
        });
    }
    g.finish();
}

fn inverse(c: &mut Criterion) {
    let mut g = c.benchmark_group("dir_inverse");
    for n in [256, 1024, 4096] {
        let a = unit_series(n, 3);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| bench.iter(|| dir_inverse(black_box(&a))));
    }
    g.finish();
}

fn parametric_power(c: &mut Criterion) {
    let mut g = c.benchmark_group("dir_pow_param");
    g.sample_size(20);
    for n in [32, 64, 128] {
        let a = unit_series(n, 4);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| bench.iter(|| dir_pow_param(black_box(&a))));
    }
    g.finish();
}

fn rd_matrix(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_rd");
    g.sample_size(20);
    for n in [16, 32, 64] {
        let b = unit_series(n, 5);
        let a = &DirSeries::identity(n) + &tail_series(n, 6);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| build_rd(black_box(&b), black_box(&a), n))
        });
    }
    g.finish();
}

criterion_group!(kernels, convolution, inverse, parametric_power, rd_matrix);
criterion_main!(kernels);
