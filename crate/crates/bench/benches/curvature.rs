use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use liecurv_core::{
    matrix_exp, quartic, quartic_from_definition, sectional, CartanStructure, OrthonormalBasis, Sampler, Seed,
};
use std::hint::black_box;

fn closed_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("quartic");
    for n in [2, 3, 4, 8] {
        let s = CartanStructure::gl_real(n);
        let mut sm = Sampler::new(Seed(1));
        let (u, v) = (s.random_element(&mut sm), s.random_element(&mut sm));
        group.bench_with_input(BenchmarkId::new("closed_form", n), &n, |b, _| {
            b.iter(|| quartic(&s, black_box(&u), black_box(&v)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sectional", n), &n, |b, _| {
            b.iter(|| sectional(&s, black_box(&u), black_box(&v)).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    for n in [2, 3, 4] {
        let s = CartanStructure::gl_real(n);
        let basis = OrthonormalBasis::standard(&s).unwrap();
        let mut sm = Sampler::new(Seed(2));
        let (u, v) = (s.random_element(&mut sm), s.random_element(&mut sm));
        group.bench_with_input(BenchmarkId::new("definitional", n), &n, |b, _| {
            b.iter(|| quartic_from_definition(&s, black_box(&u), black_box(&v), &basis).unwrap())
        });
    }
    group.finish();
}

fn exponential(c: &mut Criterion) {
    let mut group = c.benchmark_group("matrix_exp");
    for n in [3, 8, 16] {
        let s = CartanStructure::gl_real(n);
        let u = s.random_element(&mut Sampler::new(Seed(3))).scale(2.0);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| matrix_exp(black_box(&u)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, closed_form, oracle, exponential);
criterion_main!(benches);
