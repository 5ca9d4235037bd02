//! Exhaustive sweep on one worker against all cores. Without the `parallel`
//! feature both arms run sequentially.

use ait_core::complexity::{enumerate_halting, SweepParams};
use ait_core::machines::MachineId;
use ait_core::par::default_workers;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_sd_48");
    group.sample_size(10);
    for (name, workers) in [("sequential", 1), ("parallel", default_workers().max(2))] {
        let params = SweepParams::new(MachineId::Sd, 48, 10_000).workers(workers);
        group.bench_with_input(BenchmarkId::new(name, workers), &params, |b, p| {
            b.iter(|| enumerate_halting(p).len())
        });
    }
    group.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
