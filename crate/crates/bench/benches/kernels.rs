use std::hint::black_box;

use ajf_bench::{angles, labels_descending, span_function};
use ajf_core::ladders::{casimir_apply, Casimir};
use ajf_core::transforms::gram;
use ajf_core::{ajf, analyze, d_matrix, run_suite, Suite};
use criterion::{criterion_group, criterion_main, Criterion};

fn construction(c: &mut Criterion) {
    let labels = labels_descending(8);
    c.bench_function("ajf window 2j<=8", |b| {
        b.iter(|| labels.iter().map(|t| ajf(black_box(t))).count())
    });
}

fn casimir(c: &mut Criterion) {
    let labels = labels_descending(5);
    c.bench_function("su22 casimir closed 2j<=5", |b| {
        b.iter(|| labels.iter().filter(|t| casimir_apply(Casimir::Su22, black_box(t)).is_ok()).count())
    });
}

fn ladders(c: &mut Criterion) {
    c.bench_function("diffclosed suite 2j<=3", |b| b.iter(|| run_suite(Suite::DiffClosed, black_box(3))));
}

fn wigner(c: &mut Criterion) {
    let betas = angles(16);
    c.bench_function("d_matrix 2j=8", |b| {
        b.iter(|| betas.iter().map(|&beta| d_matrix(8, black_box(beta)).unwrap()).count())
    });
}

fn transforms(c: &mut Criterion) {
    let f = span_function(1, 1, 9);
    c.bench_function("gram m=q=0 2j<=8", |b| b.iter(|| gram(0, 0, black_box(8)).unwrap()));
    c.bench_function("analyze m=q=1/2 2j<=9", |b| b.iter(|| analyze(black_box(&f), 1, 1, 9).unwrap()));
}

criterion_group!(benches, construction, casimir, ladders, wigner, transforms);
criterion_main!(benches);
