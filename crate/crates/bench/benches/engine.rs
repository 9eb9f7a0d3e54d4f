//! Benchmarks of the operations that dominate grid verification: sparse
//! polynomial products and powers, structured gcds, the exact verifier,
//! the randomized verifier, and the derivation pipeline.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use cbid_bench::sum_of_vars;
use cbid_core::{
    build_cb, build_inverse_n, build_n_powers, derive_inverse_identity, fuzz_verify, gcd,
    verify_exact, FuzzConfig, SparsePoly,
};

fn bench_poly_ops(c: &mut Criterion) {
    let s4 = sum_of_vars(4);
    let s4_6 = s4.pow(6);
    c.bench_function("poly_pow sum4^10", |b| {
        b.iter(|| black_box(&s4).pow(10));
    });
    c.bench_function("poly_mul sum4^6 * sum4^6", |b| {
        b.iter(|| black_box(&s4_6).mul(black_box(&s4_6)));
    });
}

fn bench_gcd(c: &mut Criterion) {
    let s = sum_of_vars(3);
    let x = SparsePoly::variable(3, 0);
    let y = SparsePoly::variable(3, 1);
    let a = x.pow(3).mul(&y).mul(&s.pow(7));
    let b = y.pow(2).mul(&s.pow(5));
    c.bench_function("gcd monomial*power shapes", |bch| {
        bch.iter(|| gcd::gcd(black_box(&a), black_box(&b)));
    });
}

fn bench_verify(c: &mut Criterion) {
    let cb = build_cb(8, 8);
    c.bench_function("verify_exact cb(8,8)", |b| {
        b.iter(|| verify_exact(black_box(&cb)).unwrap());
    });

    let powers = build_n_powers(&[2, 2, 2]);
    c.bench_function("verify_exact n_powers(2,2,2)", |b| {
        b.iter(|| verify_exact(black_box(&powers)).unwrap());
    });

    let inverse = build_inverse_n(&[2, 2, 2]);
    c.bench_function("verify_exact inverse_n(2,2,2)", |b| {
        b.iter(|| verify_exact(black_box(&inverse)).unwrap());
    });

    let cfg = FuzzConfig::default();
    c.bench_function("fuzz_verify n_powers(2,2,2) 64 trials", |b| {
        b.iter(|| fuzz_verify(black_box(&powers), black_box(&cfg)).unwrap());
    });
}

fn bench_derivation(c: &mut Criterion) {
    c.bench_function("derive_inverse_identity (2,2)", |b| {
        b.iter(|| derive_inverse_identity(black_box(&[2, 2])));
    });
}

criterion_group!(
    benches,
    bench_poly_ops,
    bench_gcd,
    bench_verify,
    bench_derivation
);
criterion_main!(benches);
