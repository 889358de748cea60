use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qsum::identities::{registry, sweep, SweepOptions, VerificationReport};
use qsum::parallel::{par_map, seq_map, with_workers};
use qsum::EvalConfig;

const ROWS: [&str; 6] = ["ramanujan_1psi1", "first_extension", "theta_relation_N", "askey", "third_extension", "dougall_alpha"];

fn one(id: &str, cfg: &EvalConfig) -> VerificationReport {
    sweep(id, &SweepOptions { count: 8, seed: 1, ..Default::default() }, cfg).expect("known row")
}

fn rows(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut g = c.benchmark_group("sweep_rows");
    g.sample_size(10);
    g.bench_function("sequential", |b| b.iter(|| with_workers(1, || seq_map(&ROWS, |id| one(id, &cfg)))));
    g.bench_function("parallel", |b| b.iter(|| with_workers(threads, || par_map(&ROWS, |id| one(id, &cfg)))));
    g.finish();
}

fn full_registry(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    let ids: Vec<&str> = registry().iter().map(|d| d.id).collect();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut g = c.benchmark_group("sweep_all");
    g.sample_size(10);
    g.bench_function("sequential", |b| b.iter(|| with_workers(1, || black_box(seq_map(&ids, |id| one(id, &cfg))))));
    g.bench_function("parallel", |b| b.iter(|| with_workers(threads, || black_box(par_map(&ids, |id| one(id, &cfg))))));
    g.finish();
}

criterion_group!(benches, rows, full_registry);
criterion_main!(benches);
