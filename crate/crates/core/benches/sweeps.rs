//! Parallel (`Exec::Auto`) against sequential sweeps. Build with
//! `--no-default-features` to compare against a rayon-free binary.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gzb_core::exact_algebra::hilbert_bruteforce_many;
use gzb_core::par::{self, Exec};
use gzb_core::torsion_core::{Group, Truncation};

const MODES: [(&str, Exec); 2] = [("auto", Exec::Auto), ("sequential", Exec::Sequential)];

fn hilbert_sweep(c: &mut Criterion) {
    let cases: Vec<(i64, i64, u64)> = (-12i64..=12)
        .filter(|&a| a != 0)
        .flat_map(|a| {
            (-12i64..=12)
                .filter(|&b| b != 0)
                .flat_map(move |b| [2u64, 3, 5, 7].map(|p| (a, b, p)))
        })
        .collect();
    let mut g = c.benchmark_group("hilbert_bruteforce");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &cases, |b, cases| {
            b.iter(|| black_box(hilbert_bruteforce_many(exec, cases)))
        });
    }
    g.finish();
}

fn height_sweep(c: &mut Criterion) {
    let group = Group::parse("C1+C3+G1+P").expect("descriptor");
    let els = group.torsion_elements(5, 2).expect("torsion");
    let t = Truncation::for_elements(group.descriptor(), 12, &els).expect("truncation");
    let mut g = c.benchmark_group("height_oracle");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                black_box(par::map(exec, &els, |x| {
                    (group.height(x).expect("height"), t.height(x).expect("oracle"))
                }))
            })
        });
    }
    g.finish();
}

criterion_group! {
    name = sweeps;
    config = Criterion::default().sample_size(10);
    targets = hilbert_sweep, height_sweep
}
criterion_main!(sweeps);
