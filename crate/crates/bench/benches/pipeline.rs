use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mazurtate_core::curves::{count_points, find_curve};
use mazurtate_core::mazurtate::{theta, Form};
use mazurtate_core::modsymb::ManinSymbolSpace;
use mazurtate_core::qseries::delta_qexp;

fn qseries(c: &mut Criterion) {
    c.bench_function("delta_qexp/10000", |b| b.iter(|| delta_qexp(black_box(10_000))));
}

fn point_counts(c: &mut Criterion) {
    let e = find_curve("27a1").unwrap();
    c.bench_function("count_points/27a1/997", |b| b.iter(|| count_points(&e, black_box(997)).unwrap()));
}

fn spaces(c: &mut Criterion) {
    let mut group = c.benchmark_group("space");
    for (level, weight) in [(1u64, 12u32), (99, 2), (441, 2)] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("N{level}k{weight}")), &(level, weight), |b, &(n, k)| {
            b.iter(|| ManinSymbolSpace::new(n, k))
        });
    }
    group.finish();
}

fn thetas(c: &mut Criterion) {
    let mut group = c.benchmark_group("theta");
    group.sample_size(10);
    let cases = [(Form::Delta, 3u64, 3u32), (Form::Delta, 7, 2), (Form::Curve(find_curve("27a1").unwrap()), 3, 4)];
    for (form, p, n) in cases {
        let phi = form.eigen_symbol().unwrap();
        group.bench_function(format!("{}/p{p}/n{n}", form.label()), |b| b.iter(|| theta(&phi, p, n).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, qseries, point_counts, spaces, thetas);
criterion_main!(benches);
