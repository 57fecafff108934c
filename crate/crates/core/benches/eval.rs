//! Sequential against parallel evaluation.
//!
//! `cargo bench -p dimlab --bench eval`. Built without the `parallel`
//! feature, both variants run on one thread.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dimlab::formula::{at_top, delta_formula, dg_formula, eval_with, Assignment};
use dimlab::interval::{default_base, default_depth, run_demo};
use dimlab::{Exec, Lattice};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn lattice_formulas(c: &mut Criterion) {
    let cases = [
        (
            "delta1/powerset4",
            Lattice::powerset(4).unwrap(),
            delta_formula(1).unwrap(),
        ),
        (
            "dg0/powerset5",
            Lattice::powerset(5).unwrap(),
            at_top(&dg_formula(0).unwrap()),
        ),
    ];
    let asn = Assignment::new();
    let mut group = c.benchmark_group("lattice");
    group.sample_size(10);
    for (name, l, f) in &cases {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(*name, mode), &exec, |b, &exec| {
                b.iter(|| eval_with(black_box(l), black_box(f), &asn, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn interval_demo(c: &mut Criterion) {
    let base = default_base("base33").unwrap();
    let depth = default_depth(&base);
    let mut group = c.benchmark_group("interval");
    group.sample_size(10);
    for (mode, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("base33-demo", mode), &exec, |b, &exec| {
            b.iter(|| run_demo(black_box(&base), depth, 0, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, lattice_formulas, interval_demo);
criterion_main!(benches);
