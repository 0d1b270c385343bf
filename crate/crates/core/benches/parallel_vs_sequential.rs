use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use posetrep::differentiation::{nu_count_with, NuConfig, Strategy};
use posetrep::oracle::{EnumConfig, Oracle};
use posetrep::par::Execution;
use posetrep::poset::Poset;
use posetrep::verify::{run_suite, DEFAULT_SEED};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn census(c: &mut Criterion) {
    let p = Arc::new(Poset::new(&["x", "y", "u", "v"], &[("u", "v")]).unwrap());
    let mut g = c.benchmark_group("oracle-census-112-dim3");
    g.sample_size(10);
    for (name, execution) in MODES {
        let cfg = EnumConfig {
            execution,
            ..EnumConfig::new(2, 3)
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| Oracle::new(p.clone(), *cfg).unwrap().census().unwrap().total_indecomposable())
        });
    }
    g.finish();
}

fn nu_all_paths(c: &mut Criterion) {
    // (1,2,2): a point and two 2-chains
    let p = Arc::new(Poset::new(&["x", "a", "b", "c", "d"], &[("a", "b"), ("c", "d")]).unwrap());
    let mut g = c.benchmark_group("nu-all-paths-122");
    for (name, execution) in MODES {
        let cfg = NuConfig {
            strategy: Strategy::AllPaths,
            execution,
            ..NuConfig::default()
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| b.iter(|| nu_count_with(black_box(&p), *cfg).nu));
    }
    g.finish();
}

fn verify_suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify-suite-20-cases");
    g.sample_size(10);
    for (name, execution) in MODES {
        g.bench_function(name, |b| b.iter(|| run_suite(DEFAULT_SEED, 20, execution).passed()));
    }
    g.finish();
}

criterion_group!(benches, census, nu_all_paths, verify_suite);
criterion_main!(benches);
