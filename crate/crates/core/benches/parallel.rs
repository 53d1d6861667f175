//! Sequential against rayon scheduling on the two batch workloads: the sextic grid search and
//! classification of a batch of Salem-type polynomials.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pseudoauto::lattice::chi_ell;
use pseudoauto::numclass::classify;
use pseudoauto::par::{map_slice, Execution};
use pseudoauto::torus3::search;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn torus_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("torus-search");
    group.sample_size(10);
    for bound in [2, 3] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, bound), &bound, |b, &bound| b.iter(|| search(black_box(bound), exec)));
        }
    }
    group.finish();
}

fn classify_batch(c: &mut Criterion) {
    let polys: Vec<_> = (2..=10).map(chi_ell).collect();
    let mut group = c.benchmark_group("classify-chi");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| map_slice(exec, black_box(&polys), |p| classify(p).map(|c| c.verdict))));
    }
    group.finish();
}

criterion_group!(benches, torus_search, classify_batch);
criterion_main!(benches);
