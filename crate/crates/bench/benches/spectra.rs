use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use realign_bench::realigned_ginibre;
use realign_core::criteria::spa_pt;
use realign_core::families::random_ginibre_state;
use realign_core::linalg::HERMITIAN_TOL;
use realign_core::{hermitian_eigenvalues, min_singular_value, partial_transpose, singular_values};

const FIXTURES: usize = 16;

fn singular_paths(c: &mut Criterion) {
    let mut group = c.benchmark_group("realigned_spectrum");
    for d in [2usize, 3, 4] {
        let ms = realigned_ginibre(d, FIXTURES, 42);
        group.bench_with_input(BenchmarkId::new("full_trace_norm", d), &ms, |b, ms| {
            b.iter(|| {
                ms.iter()
                    .map(|m| singular_values(black_box(m)).sum())
                    .sum::<f64>()
            })
        });
        group.bench_with_input(BenchmarkId::new("min_only", d), &ms, |b, ms| {
            b.iter(|| {
                ms.iter()
                    .map(|m| min_singular_value(black_box(m)))
                    .sum::<f64>()
            })
        });
    }
    group.finish();
}

fn partial_transpose_spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("pt_spectrum");
    for d in [2usize, 3, 4] {
        let rho = random_ginibre_state(d, d, 7).unwrap();
        group.bench_with_input(BenchmarkId::new("ppt", d), &rho, |b, rho| {
            b.iter(|| {
                hermitian_eigenvalues(&partial_transpose(black_box(rho)), HERMITIAN_TOL)
                    .unwrap()
                    .min()
            })
        });
        group.bench_with_input(BenchmarkId::new("spa_pt", d), &rho, |b, rho| {
            b.iter(|| spa_pt(black_box(rho)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, singular_paths, partial_transpose_spectrum);
criterion_main!(benches);
