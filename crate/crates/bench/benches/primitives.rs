use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rqcs::quasi_cyclic::rot_product;
use rqcs::rank::sample_rank_vector;
use rqcs::{BitMatrix, Field, RkVector};

fn field_ops(c: &mut Criterion) {
    let mut group = c.benchmark_group("field");
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    for m in [89, 121, 139] {
        let f = Field::standard(m).unwrap();
        let (a, b) = (f.random(&mut rng), f.random(&mut rng));
        group.bench_with_input(BenchmarkId::new("mul", m), &m, |bch, _| {
            bch.iter(|| f.mul(black_box(a), black_box(b)))
        });
        group.bench_with_input(BenchmarkId::new("inv", m), &m, |bch, _| {
            bch.iter(|| f.inv(black_box(a)))
        });
    }
    group.finish();
}

fn linear_algebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("linalg");
    group.sample_size(20);
    let mut rng = ChaCha20Rng::seed_from_u64(2);
    // the step-2 system shape at the smallest published instance
    let a = BitMatrix::random(89 * 67, 2 * 5 * 67, &mut rng);
    let rhs: Vec<bool> = (0..a.rows()).map(|i| i % 3 == 0).collect();
    group.bench_function("rref 5963x670", |b| b.iter(|| black_box(&a).rref()));
    group.bench_function("solve 5963x670", |b| b.iter(|| black_box(&a).solve(&rhs)));
    group.finish();
}

fn rank_metric(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    let f = Field::standard(89).unwrap();
    let x = sample_rank_vector(&f, 67, 5, &mut rng).unwrap();
    let h = RkVector::random(&f, 67, &mut rng);
    group.bench_function("rank_weight n=67 m=89", |b| {
        b.iter(|| black_box(&h).rank_weight())
    });
    group.bench_function("rot_product n=67 m=89", |b| {
        b.iter(|| rot_product(black_box(&h), &x))
    });
    group.bench_function("sample w=5 n=67 m=89", |b| {
        b.iter(|| sample_rank_vector(&f, 67, 5, &mut rng).unwrap())
    });
    group.finish();
}

criterion_group!(benches, field_ops, linear_algebra, rank_metric);
criterion_main!(benches);
