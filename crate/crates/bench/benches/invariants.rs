use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use germ_core::corpus::{corpus, find};
use germ_core::implicit::{implicitize_curve, milnor_implicit};
use germ_core::invariants::{analyze, cokernel_dimension, delta_total};
use germ_core::randgen::{random_germ, SplitMix64};
use germ_core::semigroup::value_semigroup;
use germ_core::{Branch, Limits};

fn bench_value_semigroup(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("value_semigroup");
    for (a, b) in [(2usize, 3usize), (3, 5), (4, 7), (5, 7)] {
        let branch = Branch::monomial_pair(format!("t{a}-t{b}"), a, b);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{a}_{b}")),
            &branch,
            |bench, branch| bench.iter(|| value_semigroup(black_box(branch), &limits).unwrap()),
        );
    }
    group.finish();
}

fn bench_delta_routes(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("delta");
    for name in ["cusp", "e8", "quadruple-point"] {
        let entry = find(name).expect("corpus entry");
        group.bench_with_input(
            BenchmarkId::new("combinatorial", name),
            &entry.germ,
            |bench, germ| bench.iter(|| delta_total(black_box(germ), &limits).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("cokernel", name),
            &entry.germ,
            |bench, germ| bench.iter(|| cokernel_dimension(black_box(germ), &limits).unwrap()),
        );
    }
    group.finish();
}

fn bench_implicit_oracle(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("implicit_oracle");
    for name in ["cusp", "e8", "quadruple-point"] {
        let entry = find(name).expect("corpus entry");
        let g = implicitize_curve(&entry.germ).unwrap().g;
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |bench, g| {
            bench.iter(|| milnor_implicit(black_box(g), &limits).unwrap())
        });
    }
    group.finish();
}

fn bench_full_analysis(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("analyze");
    group.sample_size(20);
    for entry in corpus() {
        if !["node", "e8", "quadruple-point"].contains(&entry.name) {
            continue;
        }
        group.bench_with_input(
            BenchmarkId::from_parameter(entry.name),
            &entry.germ,
            |bench, germ| bench.iter(|| analyze(black_box(germ), &limits, true).unwrap()),
        );
    }
    // one mid-size random germ, pinned by seed: the 15th draw of the stream
    let mut rng = SplitMix64::new(20240808);
    let mut germ = random_germ(&mut rng, &limits);
    for _ in 1..15 {
        germ = random_germ(&mut rng, &limits);
    }
    group.bench_with_input(
        BenchmarkId::from_parameter("random-14"),
        &germ,
        |bench, germ| bench.iter(|| analyze(black_box(germ), &limits, true).unwrap()),
    );
    group.finish();
}

criterion_group!(
    benches,
    bench_value_semigroup,
    bench_delta_routes,
    bench_implicit_oracle,
    bench_full_analysis
);
criterion_main!(benches);
