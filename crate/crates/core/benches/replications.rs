use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use epigraph::graph::{generate, GraphKind};
use epigraph::sim::{builtin_policy, estimate_extinction, PolicyKind, SimCaps};
use epigraph::verify::{run_suite, Scope, SuiteConfig};
use epigraph::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn replications(c: &mut Criterion) {
    let g = generate(GraphKind::Complete, 4, None).unwrap();
    let policy = builtin_policy(PolicyKind::RandomInfected, None).unwrap();
    let mut group = c.benchmark_group("estimate_extinction_k4");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                estimate_extinction(&g, g.vertices(), &policy, 1.0, 2_000, 7, SimCaps::default(), exec)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn graph_sweep(c: &mut Criterion) {
    let cfg = SuiteConfig {
        exhaustive_max_n: 5,
        random_graphs: 20,
        ..SuiteConfig::default()
    };
    let mut group = c.benchmark_group("verify_lemmas_n5");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_suite(Scope::Lemmas, &cfg, None, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, replications, graph_sweep);
criterion_main!(benches);
