//! Parallel vs sequential throughput on the three exhaustive kernels:
//! Chebyshev center search, pattern-space enumeration of the expected
//! radius functional, and the verifier's ball search.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zerorate::budget::Budget;
use zerorate::code::Symbol;
use zerorate::distributions::SimplexPoint;
use zerorate::radii::{chebyshev_radius, chebyshev_radius_seq};
use zerorate::rational::ratio;
use zerorate::thresholds::{expected_weighted_radius, expected_weighted_radius_seq};
use zerorate::verifier::{is_list_recoverable, is_list_recoverable_seq};

fn bench_chebyshev(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let q = 3u8;
    let n = 10;
    let rows: Vec<Vec<Symbol>> = (0..5)
        .map(|_| (0..n).map(|_| rng.gen_range(1..=q)).collect())
        .collect();
    let views: Vec<&[Symbol]> = rows.iter().map(|r| r.as_slice()).collect();
    let budget = Budget { centers: 100_000_000, ..Budget::default() };

    let mut group = c.benchmark_group("chebyshev_radius");
    group.bench_function("parallel", |b| {
        b.iter(|| chebyshev_radius(q, black_box(&views), 1, &budget).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| chebyshev_radius_seq(q, black_box(&views), 1, &budget).unwrap())
    });
    group.finish();
}

fn bench_expected_radius(c: &mut Criterion) {
    let p = SimplexPoint::exact(vec![
        ratio(5, 16),
        ratio(5, 16),
        ratio(3, 16),
        ratio(3, 16),
    ])
    .unwrap();
    let omega = SimplexPoint::exact(vec![
        ratio(3, 16),
        ratio(3, 16),
        ratio(2, 16),
        ratio(2, 16),
        ratio(2, 16),
        ratio(2, 16),
        ratio(1, 16),
        ratio(1, 16),
    ])
    .unwrap();
    let budget = Budget::default();

    let mut group = c.benchmark_group("expected_weighted_radius");
    group.bench_function("parallel", |b| {
        b.iter(|| expected_weighted_radius(black_box(&p), black_box(&omega), 1, &budget).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            expected_weighted_radius_seq(black_box(&p), black_box(&omega), 1, &budget).unwrap()
        })
    });
    group.finish();
}

fn bench_verifier(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let q = 3u8;
    let n = 9;
    let rows: Vec<Vec<Symbol>> = (0..8)
        .map(|_| (0..n).map(|_| rng.gen_range(1..=q)).collect())
        .collect();
    let code = zerorate::Codebook::new(q, n, rows).unwrap();
    let p = ratio(1, 9);
    let budget = Budget { centers: 100_000_000, ..Budget::default() };

    let mut group = c.benchmark_group("list_recoverability");
    group.bench_function("parallel", |b| {
        b.iter(|| is_list_recoverable(black_box(&code), &p, 1, 3, &budget).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| is_list_recoverable_seq(black_box(&code), &p, 1, 3, &budget).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_chebyshev, bench_expected_radius, bench_verifier);
criterion_main!(benches);
