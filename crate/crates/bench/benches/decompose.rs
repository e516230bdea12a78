use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use mdtree::decompose;
use mdtree_bench::{cograph, gnp_avg_degree};

fn sparse_gnp(c: &mut Criterion) {
    let mut group = c.benchmark_group("gnp-avg-degree-10");
    group.sample_size(10);
    for n in [10_000usize, 40_000, 160_000] {
        let g = gnp_avg_degree(n, 10.0, 7);
        group.throughput(Throughput::Elements((n + g.edge_count()) as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| decompose(black_box(g)))
        });
    }
    group.finish();
}

fn dense_cograph(c: &mut Criterion) {
    let mut group = c.benchmark_group("cograph");
    group.sample_size(10);
    for n in [10_000usize, 100_000] {
        let g = cograph(n, 7);
        group.throughput(Throughput::Elements((n + g.edge_count()) as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| decompose(black_box(g)))
        });
    }
    group.finish();
}

criterion_group!(benches, sparse_gnp, dense_cograph);
criterion_main!(benches);
