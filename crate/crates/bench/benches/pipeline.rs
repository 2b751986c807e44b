use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ince_vortex::*;

fn ince(c: &mut Criterion) {
    c.bench_function("build_eigensystem p=9 even eps=2", |b| {
        b.iter(|| build_eigensystem(black_box(9), Parity::Even, black_box(2.0)).unwrap())
    });
}

fn decompose(c: &mut Criterion) {
    c.bench_function("coefficients (5,1,2)", |b| b.iter(|| coefficients(black_box(5), 1, black_box(2.0)).unwrap()));
}

fn fock(c: &mut Criterion) {
    let coeffs = coefficients(9, 1, 2.0).unwrap();
    let initial = initial_state(&coeffs).unwrap();
    c.bench_function("evolve N=9", |b| b.iter(|| evolve(black_box(&initial), ConverterSpec::vortex()).unwrap()));
    c.bench_function("closed_form_state N=9", |b| b.iter(|| closed_form_state(black_box(&coeffs)).unwrap()));
}

fn wigner(c: &mut Criterion) {
    let coeffs = coefficients(5, 1, 2.0).unwrap();
    let state = evolve(&initial_state(&coeffs).unwrap(), ConverterSpec::vortex()).unwrap();
    let axes = AxisPair::new(PhaseAxis::X, PhaseAxis::Py).unwrap();
    let grid = SliceGrid::square(4.0, 101);
    c.bench_function("wigner slice diagonal 101x101", |b| {
        b.iter(|| slice(SliceInput::Paper { coeffs: &coeffs, sigma: SIGMA_OSCILLATOR }, axes, [0.0, 0.0], grid).unwrap())
    });
    let small = SliceGrid::square(4.0, 21);
    c.bench_function("wigner slice exact 21x21", |b| {
        b.iter(|| slice(SliceInput::Exact { state: &state }, axes, [0.0, 0.0], small).unwrap())
    });
}

fn entropy(c: &mut Criterion) {
    let ns: Vec<u32> = (1..=9).collect();
    c.bench_function("entropy sweep m=1 N<=9", |b| {
        b.iter(|| entropy_sweep(1, black_box(2.0), &ns, LogBase::Natural).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = ince, decompose, fock, wigner, entropy
}
criterion_main!(benches);
