use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use witt_bench::operands;
use witt_core::{
    generates_criterion, maximal_vectors, parse_derivation, submodule_m, truncated_closure,
    verify_products,
};

fn bracket(c: &mut Criterion) {
    let mut group = c.benchmark_group("bracket");
    for n in [2, 3] {
        let (a, b) = operands(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &(a, b), |bench, (a, b)| {
            bench.iter(|| black_box(a).bracket(black_box(b)).unwrap())
        });
    }
    group.finish();
}

fn divergence_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("submodule_m");
    for (n, m) in [(2, 5), (3, 3), (4, 2)] {
        group.bench_function(format!("n{n}_m{m}"), |b| {
            b.iter(|| submodule_m(n, black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn highest_weight(c: &mut Criterion) {
    let mut group = c.benchmark_group("maximal_vectors");
    group.sample_size(20);
    for (n, m) in [(2, 4), (3, 3), (4, 2)] {
        group.bench_function(format!("n{n}_m{m}"), |b| {
            b.iter(|| maximal_vectors(n, black_box(m), None).unwrap())
        });
    }
    group.finish();
}

fn products(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_products");
    group.sample_size(10);
    group.bench_function("n2_max4", |b| {
        b.iter(|| verify_products(2, black_box(4)).unwrap())
    });
    group.bench_function("n3_max3", |b| {
        b.iter(|| verify_products(3, black_box(3)).unwrap())
    });
    group.finish();
}

fn generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("generation");
    group.sample_size(10);
    for (n, text) in [(2, "x1^2 d1"), (2, "x1*E"), (3, "x1^2 d1"), (3, "x1^3 d2")] {
        let d = parse_derivation(text, n).unwrap();
        group.bench_function(format!("criterion/n{n}/{text}"), |b| {
            b.iter(|| generates_criterion(black_box(&d)).unwrap())
        });
        let t = d.top_degree().unwrap() + 3;
        group.bench_function(format!("closure/n{n}/{text}"), |b| {
            b.iter(|| truncated_closure(black_box(&d), t).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bracket,
    divergence_kernel,
    highest_weight,
    products,
    generation
);
criterion_main!(benches);
