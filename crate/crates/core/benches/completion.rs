use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ncgb::envelope::{builtin_operation, builtin_system, envelope_presentation};
use ncgb::par::Execution;
use ncgb::quotient::Quotient;
use ncgb::{complete, CompletionConfig, Presentation};

fn envelope(system: &str, op: &str) -> Presentation {
    let (sys, _) = builtin_system(system).unwrap();
    envelope_presentation(&sys, &builtin_operation(op).unwrap()).unwrap()
}

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn completion(c: &mut Criterion) {
    let cases = [
        ("tetrad", envelope("m2-units", "tetrad")),
        ("a(1,2) cyclic-sum", envelope("a(1,2)", "cyclic-sum")),
        ("a(1,3) jordan-inf", envelope("a(1,3)", "jordan-inf")),
    ];
    let mut group = c.benchmark_group("completion");
    group.sample_size(10);
    for (name, p) in &cases {
        for (mode, exec) in MODES {
            let cfg = CompletionConfig { execution: exec, ..CompletionConfig::default() };
            group.bench_with_input(BenchmarkId::new(mode, name), p, |b, p| b.iter(|| complete(black_box(p), &cfg)));
        }
    }
    group.finish();
}

fn multiplication_table(c: &mut Criterion) {
    let r = complete(&envelope("a(1,3)", "jordan-inf"), &CompletionConfig::default());
    let q = Quotient::new(&r).unwrap();
    let mut group = c.benchmark_group("multiplication table, a(1,3) jordan-inf");
    group.sample_size(10);
    for (mode, exec) in MODES {
        group.bench_function(mode, |b| b.iter(|| q.multiplication_table_with(exec).unwrap()));
    }
    let table = q.multiplication_table().unwrap();
    for (mode, exec) in MODES {
        group.bench_function(format!("associativity/{mode}"), |b| b.iter(|| table.is_associative(exec)));
    }
    group.finish();
}

criterion_group!(benches, completion, multiplication_table);
criterion_main!(benches);
