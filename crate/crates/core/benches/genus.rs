use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use toric_elliptic::fans;
use toric_elliptic::genus::{ell_pair, ell_pair_equivariant};
use toric_elliptic::toric::{low_weight_subgroup, PairCoefficients};

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        ("single", rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("pool", rayon::ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn bench_genus(c: &mut Criterion) {
    let fan = fans::p1cubed();
    let pair = PairCoefficients::from_ints(&fan, &[1, 0, 2, -2, 0, 1]).unwrap();
    let mut group = c.benchmark_group("ell_pair_p1cubed_q4");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| ell_pair(&fan, &pair, 4).unwrap()))
        });
    }
    group.finish();
}

fn bench_equivariant(c: &mut Criterion) {
    let fan = fans::p2();
    let pair = PairCoefficients::from_ints(&fan, &[1, -2, 0]).unwrap();
    let xi = low_weight_subgroup(&fan).unwrap().xi;
    let mut group = c.benchmark_group("equivariant_p2_q4");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| ell_pair_equivariant(&fan, &pair, &xi, 4, 3).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_genus, bench_equivariant);
criterion_main!(benches);
