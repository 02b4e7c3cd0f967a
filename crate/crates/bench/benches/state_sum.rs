use std::hint::black_box;

use confblocks::{brute_force_dim, catalog, dim_blocks, dim_tensor, DecompositionGraph, Label, Surface};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn closed_surfaces(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed");
    for name in ["ising", "su2_4"] {
        let data = catalog(name).unwrap();
        let ring = data.ring();
        for g in [2u32, 3, 4] {
            let d = DecompositionGraph::canonical(&Surface::standard(g, 0));
            group.bench_with_input(BenchmarkId::new(format!("planned/{name}"), g), &d, |b, d| {
                b.iter(|| dim_blocks(ring, black_box(d), &[]).unwrap())
            });
            if g <= 3 {
                group.bench_with_input(BenchmarkId::new(format!("brute/{name}"), g), &d, |b, d| {
                    b.iter(|| brute_force_dim(ring, black_box(d), &[], 12).unwrap())
                });
            }
        }
    }
    group.finish();
}

fn tensors(c: &mut Criterion) {
    let mut group = c.benchmark_group("tensor");
    let data = catalog("su2_3").unwrap();
    for (g, n) in [(0u32, 4usize), (1, 3), (2, 2)] {
        let d = DecompositionGraph::canonical(&Surface::standard(g, n));
        group.bench_with_input(BenchmarkId::new("dim_tensor", format!("{g}_{n}")), &d, |b, d| {
            b.iter(|| dim_tensor(data.ring(), black_box(d)).unwrap())
        });
        let labels = vec![Label(1); n];
        group.bench_with_input(BenchmarkId::new("dim_blocks", format!("{g}_{n}")), &d, |b, d| {
            b.iter(|| dim_blocks(data.ring(), black_box(d), &labels).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, closed_surfaces, tensors);
criterion_main!(benches);
