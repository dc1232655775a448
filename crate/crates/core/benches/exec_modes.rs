//! Sequential against rayon-parallel execution of the same sweeps.
//!
//! Without the `parallel` feature both modes run on one thread, which gives
//! the baseline for the overhead of the parallel code path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use krcomb::fermionic::m_polynomial_with;
use krcomb::kleber::kleber_tree_with;
use krcomb::verify::{self, Budget};
use krcomb::{AffineType, Exec, TensorSpec, Weight};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn ty(s: &str) -> AffineType {
    s.parse().expect("valid type")
}

fn verify_quick(c: &mut Criterion) {
    let budget = Budget::quick();
    let mut g = c.benchmark_group("verify_quick");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify::run(&budget, exec).expect("quick budget runs"))
        });
    }
    g.finish();
}

fn kleber_d4(c: &mut Criterion) {
    let d4 = ty("D4~1");
    let l = TensorSpec::from_factors(&[(1, 2), (2, 1), (3, 1), (4, 1), (1, 1)]);
    let mut g = c.benchmark_group("kleber_tree_d4");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| kleber_tree_with(d4, &l, None, exec).expect("D4 tree"))
        });
    }
    g.finish();
}

fn m_polynomial_c3(c: &mut Criterion) {
    let c3 = ty("C3~1");
    let l = TensorSpec::from_factors(&[(1, 1), (1, 1), (2, 1), (3, 1), (1, 2)]);
    let lambda = Weight(vec![1, 0, 0]);
    let mut g = c.benchmark_group("m_polynomial_c3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| m_polynomial_with(c3, &l, &lambda, exec).expect("C3 polynomial"))
        });
    }
    g.finish();
}

criterion_group!(benches, verify_quick, kleber_d4, m_polynomial_c3);
criterion_main!(benches);
