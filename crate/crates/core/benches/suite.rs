use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ellitri::dunkl::{run_dunkl, DunklThresholds};
use ellitri::identities::{run_suite, SamplePlan};
use ellitri::par::Exec;
use ellitri::SeriesPolicy;

fn executors() -> [(&'static str, Exec); 2] {
    [
        ("sequential", Exec::Sequential),
        ("parallel", Exec::Parallel { threads: 0 }),
    ]
}

fn bench_suite(c: &mut Criterion) {
    let policy = SeriesPolicy::default();
    let mut group = c.benchmark_group("verify_suite");
    group.sample_size(20);
    for samples in [20, 100] {
        let plan = SamplePlan::new(SamplePlan::DEFAULT_SEED, samples);
        for (name, exec) in executors() {
            group.bench_with_input(BenchmarkId::new(name, samples), &plan, |b, plan| {
                b.iter(|| run_suite(black_box(plan), 1e-8, &policy, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_dunkl(c: &mut Criterion) {
    let policy = SeriesPolicy::default();
    let plan = SamplePlan::new(SamplePlan::DEFAULT_SEED, 50);
    let thresholds = DunklThresholds::default();
    let mut group = c.benchmark_group("dunkl");
    group.sample_size(10);
    for (name, exec) in executors() {
        group.bench_function(name, |b| {
            b.iter(|| run_dunkl(black_box(&plan), &thresholds, &policy, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_suite, bench_dunkl);
criterion_main!(benches);
