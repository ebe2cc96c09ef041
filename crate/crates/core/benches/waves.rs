use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sylvester_core::oracle::dp_count;
use sylvester_core::par::with_workers;
use sylvester_core::waves::{partition_quasipoly, sylvester_waves, GeneratorSet};
use sylvester_core::DEFAULT_ENUMERATION_CAP;

const SETS: [&str; 3] = ["1,2,3,4,5", "6,10,15", "2,3,5,7"];

/// Quasipolynomial construction on the default pool against a single worker.
/// Without the `parallel` feature both arms are sequential.
fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construction");
    group.sample_size(20);
    for d in SETS {
        let g: GeneratorSet = d.parse().unwrap();
        group.bench_with_input(BenchmarkId::new("pool", d), &g, |b, g| {
            b.iter(|| sylvester_waves(black_box(g), DEFAULT_ENUMERATION_CAP).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("single-worker", d), &g, |b, g| {
            with_workers(1, || {
                b.iter(|| sylvester_waves(black_box(g), DEFAULT_ENUMERATION_CAP).unwrap())
            })
        });
    }
    group.finish();
}

/// One closed-form evaluation against running the recurrence up to s.
fn closed_form_vs_dp(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed-form-vs-dp");
    group.sample_size(10);
    let d = [1u64, 2, 3, 4, 5];
    let w = partition_quasipoly(&GeneratorSet::new(d.to_vec()).unwrap()).unwrap();
    for s in [1_000u64, 10_000, 100_000] {
        group.bench_with_input(BenchmarkId::new("closed-form", s), &s, |b, &s| {
            b.iter(|| w.eval(black_box(s)))
        });
        group.bench_with_input(BenchmarkId::new("dp", s), &s, |b, &s| {
            b.iter(|| dp_count(black_box(s), &d).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, construction, closed_form_vs_dp);
criterion_main!(benches);
