use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use otto_bench::reference_config;
use otto_core::stats::{default_eta_grid, ldf, sample_trajectories, TpmChain};
use otto_core::thermo::{efficiency_bounds, simulate};
use otto_core::{build_propagator, solve_limit_cycle, Stroke};

fn propagator(c: &mut Criterion) {
    let mut group = c.benchmark_group("propagator");
    for tau_dri in [1e-4, 5e-4, 1e-2] {
        let cfg = reference_config().with_tau_dri(tau_dri);
        group.bench_with_input(BenchmarkId::from_parameter(tau_dri), &cfg, |b, cfg| {
            b.iter(|| build_propagator(black_box(cfg), Stroke::Compression).unwrap())
        });
    }
    group.finish();
}

fn cycle(c: &mut Criterion) {
    let cfg = reference_config();
    c.bench_function("limit_cycle", |b| {
        b.iter(|| solve_limit_cycle(black_box(&cfg)).unwrap())
    });
    c.bench_function("simulate", |b| {
        b.iter(|| simulate(black_box(&cfg)).unwrap())
    });
}

fn statistics(c: &mut Criterion) {
    let cycle = solve_limit_cycle(&reference_config()).unwrap();
    let chain = TpmChain::from_cycle(&cycle);
    let (_, eta_c_gen, _) = efficiency_bounds(&cycle.cfg);
    let grid = default_eta_grid(eta_c_gen);
    c.bench_function("ldf_400", |b| {
        b.iter(|| ldf(black_box(&chain), &grid).unwrap())
    });
    c.bench_function("sample_100k", |b| {
        b.iter(|| sample_trajectories(black_box(&chain), 100_000, 1))
    });
}

criterion_group!(benches, propagator, cycle, statistics);
criterion_main!(benches);
