//! Sequential vs parallel on the three data-parallel kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use so3wb_core::exforms::{self, lie_action};
use so3wb_core::liealg::casimir_isotypes;
use so3wb_core::torsion::{sample_cases, DEFAULT_SEED};
use so3wb_core::{Exec, Workbench};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn pencil(c: &mut Criterion) {
    let wb = Workbench::reference();
    let p = wb.gamma_pencil(2).unwrap();
    let mut g = c.benchmark_group("pencil_scan");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| exforms::pencil_scan(&p, e).unwrap())
        });
    }
    g.finish();
}

fn sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("sample_cases");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| sample_cases(10_000, DEFAULT_SEED, e))
        });
    }
    g.finish();
}

fn casimir(c: &mut Criterion) {
    let wb = Workbench::reference();
    let gens: Vec<_> = wb.model.g_gens.iter().map(|m| lie_action(m, 3).unwrap()).collect();
    let mut g = c.benchmark_group("casimir_lambda3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| casimir_isotypes(&gens, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, pencil, sampling, casimir);
criterion_main!(benches);
