use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};

use gosset_core::apposition::JACOBI_SEED;
use gosset_core::verify::{pipeline, verify_sweep, VerifyOptions};
use gosset_core::LieType;

type Workload = Box<dyn Fn() + Sync>;

fn workloads() -> Vec<(&'static str, Workload)> {
    let e7: LieType = "E7".parse().unwrap();
    let small = LieType::sweep(5);
    vec![
        (
            "pipeline_E7",
            Box::new(move || {
                black_box(pipeline(e7, JACOBI_SEED).unwrap());
            }),
        ),
        (
            "verify_sweep_rank5",
            Box::new(move || {
                black_box(verify_sweep(&small, &VerifyOptions::default()));
            }),
        ),
    ]
}

#[cfg(feature = "parallel")]
fn modes(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let pooled = rayon::ThreadPoolBuilder::new().build().unwrap();
    for (name, work) in workloads() {
        let mut group = c.benchmark_group(name);
        group
            .sample_size(10)
            .measurement_time(Duration::from_secs(10));
        group.bench_function(criterion::BenchmarkId::new("single_thread", 1), |b| {
            b.iter(|| single.install(&work))
        });
        group.bench_function(
            criterion::BenchmarkId::new("default_pool", pooled.current_num_threads()),
            |b| b.iter(|| pooled.install(&work)),
        );
        group.finish();
    }
}

#[cfg(not(feature = "parallel"))]
fn modes(c: &mut Criterion) {
    for (name, work) in workloads() {
        let mut group = c.benchmark_group(name);
        group
            .sample_size(10)
            .measurement_time(Duration::from_secs(10));
        group.bench_function("sequential", |b| b.iter(&work));
        group.finish();
    }
}

criterion_group!(benches, modes);
criterion_main!(benches);
