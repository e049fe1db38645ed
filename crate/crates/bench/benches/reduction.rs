use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use symcalc::analyzer::{build_graph, sn_check, sweep_verdicts};
use symcalc::lbar::{Lbar, LbarRule};
use symcalc::lmu::{Lmu, LmuRule};
use symcalc::rewrite::{normalize, Calculus, Strategy};
use symcalc_bench::{lbar_witness, lmu_corpus, lmu_mixed, restricted_corpus};

fn single_terms(c: &mut Criterion) {
    let lbar = Lbar::new(LbarRule::mu_mutilde());
    let w = lbar_witness();
    c.bench_function("lbar witness graph", |b| b.iter(|| build_graph(&lbar, black_box(&w), 1000)));

    let lmu = Lmu::new(LmuRule::beta_mu_mu_prime());
    let m = lmu_mixed();
    c.bench_function("lmu redexes", |b| b.iter(|| lmu.redexes(black_box(&m))));
    c.bench_function("lmu leftmost normalize", |b| {
        b.iter(|| normalize(&lmu, black_box(&m), &Strategy::LeftmostOutermost, 1000))
    });
    c.bench_function("lmu sn_check", |b| b.iter(|| sn_check(&lmu, black_box(&m), 100_000)));
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let restricted = restricted_corpus(9);
    let lbar = Lbar::new(LbarRule::mu_mutilde());
    group.bench_function("restricted lbar cxty<=9", |b| {
        b.iter(|| sweep_verdicts(&lbar, black_box(&restricted), 100_000))
    });
    let terms = lmu_corpus(5);
    let lmu = Lmu::new(LmuRule::mu_mu_prime());
    group.bench_function("lmu cxty<=5", |b| b.iter(|| sweep_verdicts(&lmu, black_box(&terms), 100_000)));
    group.finish();
}

criterion_group!(benches, single_terms, sweeps);
criterion_main!(benches);
