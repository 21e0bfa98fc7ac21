//! Sequential vs parallel exhaustive sweeps.
//!
//! `workers = 1` takes the sequential path; the parallel rows use every
//! available core. Build with `--no-default-features` to compare against the
//! rayon-free fallback.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperbi::enumerate::{collect_structures, search_problem, Budget, Dedup, EnumerationSpec, Filter};
use hyperbi::laws::{verify_exhaustive, HarnessConfig};
use hyperbi::Shape;

fn worker_counts() -> Vec<usize> {
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut counts = vec![1, cores];
    counts.dedup();
    counts
}

fn label(workers: usize) -> String {
    if workers == 1 {
        "sequential".into()
    } else {
        format!("parallel-{workers}")
    }
}

fn law_sweeps(c: &mut Criterion) {
    let budget = Budget::default();
    let config = HarnessConfig::default();
    let mut group = c.benchmark_group("verify_exhaustive");
    group.sample_size(10);
    for shape in [Shape::Hyper { n: 2 }, Shape::Gamma { n: 2, k: 3 }, Shape::Gamma { n: 3, k: 1 }] {
        for workers in worker_counts() {
            group.bench_with_input(BenchmarkId::new(shape.to_string(), label(workers)), &workers, |b, &w| {
                b.iter(|| verify_exhaustive(shape, &budget, &config, w).unwrap())
            });
        }
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let budget = Budget::default();
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    let spec = EnumerationSpec {
        shape: Shape::Gamma { n: 3, k: 1 },
        filter: Filter::SemigroupsOnly,
        dedup: Dedup::UpToIsomorphism,
    };
    for workers in worker_counts() {
        group.bench_with_input(BenchmarkId::new("gamma n=3 k=1 classes", label(workers)), &workers, |b, &w| {
            b.iter(|| collect_structures(spec, &budget, w).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("problem search n=1..2", label(workers)), &workers, |b, &w| {
            b.iter(|| search_problem(1, 2, Dedup::Raw, &budget, w))
        });
    }
    group.finish();
}

criterion_group!(benches, law_sweeps, enumeration);
criterion_main!(benches);
