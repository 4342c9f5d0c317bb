use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use statman_core::decide::Relation;
use statman_core::par::Execution;
use statman_core::syntax::parse_type;
use statman_core::synth::witness;
use statman_core::verify::{check_injective, collision_search, indiscernible_catalog, indiscernibility_suite, VerifyConfig};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn injectivity(c: &mut Criterion) {
    let cert = witness(Relation::Head, &parse_type("[0,[2]]").unwrap(), &parse_type("[[0,0],0]").unwrap()).unwrap();
    let mut g = c.benchmark_group("check_injective");
    g.sample_size(10);
    for (name, execution) in MODES {
        let cfg = VerifyConfig { execution, ..VerifyConfig::default() };
        g.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| b.iter(|| check_injective(&cert, cfg)));
    }
    g.finish();
}

fn indiscernibility(c: &mut Criterion) {
    let case = &indiscernible_catalog(3)[0];
    let mut g = c.benchmark_group("indiscernibility_suite");
    g.sample_size(10);
    for (name, execution) in MODES {
        let cfg = VerifyConfig { execution, ..VerifyConfig::default() };
        g.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| b.iter(|| indiscernibility_suite(case, cfg)));
    }
    g.finish();
}

fn collisions(c: &mut Criterion) {
    let mut g = c.benchmark_group("collision_search");
    for (name, execution) in MODES {
        g.bench_function(name, |b| b.iter(|| collision_search(9, 8, execution)));
    }
    g.finish();
}

criterion_group!(benches, injectivity, indiscernibility, collisions);
criterion_main!(benches);
