//! Benchmarks for the counting kernels: the rational enumeration that
//! backs the large-scale census, the primitive-circle sum, and the two
//! exact-arithmetic pair counters.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use farey_core::arith::SplitMix64;
use farey_core::bianchi::{count_k_farey_pairs, is_k_farey, ProjectivePoint};
use farey_core::quadfield::{QuadField, QuadInt};
use farey_core::quaternion::{count_quat_farey_pairs, euclidean_reduce, sample_hurwitz};
use farey_core::rat::Rat;
use farey_core::rational::{count_farey_pairs, count_modular_symbols, sum_r_prim, SymbolMode};
use std::hint::black_box;

fn rational_counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("rational");
    group.sample_size(20);
    group.bench_function("count_pairs_1e5", |b| {
        b.iter(|| count_farey_pairs(black_box(100_000), None, 1).unwrap())
    });
    group.bench_function("count_pairs_1e5_threads4", |b| {
        b.iter(|| count_farey_pairs(black_box(100_000), None, 4).unwrap())
    });
    group.bench_function("sum_r_prim_1e5", |b| {
        b.iter(|| sum_r_prim(black_box(100_000), 1))
    });
    group.bench_function("symbols_reciprocal_T_2ln300", |b| {
        let t = 2.0 * 300f64.ln();
        b.iter(|| count_modular_symbols(black_box(t), SymbolMode::Reciprocal))
    });
    group.finish();
}

fn field_counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("field");
    group.sample_size(20);
    let k = QuadField::new(-1).unwrap();
    group.bench_function("count_pairs_eps_1_16", |b| {
        b.iter(|| count_k_farey_pairs(k, Rat::new(1, 256), 1).unwrap())
    });
    let k5 = QuadField::new(-5).unwrap();
    let mut rng = SplitMix64::new(11);
    let point = |rng: &mut SplitMix64| loop {
        let num = QuadInt::new(rng.range_i64(-9, 9) as i128, rng.range_i64(-9, 9) as i128);
        let den = QuadInt::new(rng.range_i64(-9, 9) as i128, rng.range_i64(-9, 9) as i128);
        if num.is_zero() && den.is_zero() {
            continue;
        }
        break ProjectivePoint::new(k5, num, den).unwrap();
    };
    let pairs: Vec<_> = (0..256)
        .map(|_| (point(&mut rng), point(&mut rng)))
        .filter(|(x, y)| !x.same_point(y))
        .collect();
    group.bench_function("is_k_farey_batch", |b| {
        b.iter(|| {
            let mut hits = 0u32;
            for (x, y) in &pairs {
                if is_k_farey(x, y).unwrap() {
                    hits += 1;
                }
            }
            black_box(hits)
        })
    });
    group.finish();
}

fn quaternion_counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("quaternion");
    group.sample_size(20);
    group.bench_function("count_pairs_eps_1_8", |b| {
        b.iter(|| count_quat_farey_pairs(Rat::new(1, 8), 1).unwrap())
    });
    group.bench_function("euclidean_reduce", |b| {
        let mut rng = SplitMix64::new(3);
        b.iter_batched(
            || (sample_hurwitz(&mut rng, 400), sample_hurwitz(&mut rng, 400)),
            |(p, q)| euclidean_reduce(&p, &q).unwrap().steps,
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

criterion_group!(
    benches,
    rational_counting,
    field_counting,
    quaternion_counting
);
criterion_main!(benches);
