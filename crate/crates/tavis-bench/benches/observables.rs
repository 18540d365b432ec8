//! End-to-end cost of the user-facing pipeline: evolving an ensemble and
//! extracting each diagnostic, plus the full time-series sweep.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tavis_bench::{grid, reference_init, reference_params};
use tavis_core::{
    atom1_reduce, atom_field_density, evolve, negativity, prepare_ensemble, series, Method,
};

fn bench_single_state(c: &mut Criterion) {
    let params = reference_params();
    let state = evolve(
        &prepare_ensemble(&reference_init()).unwrap(),
        &params,
        4.0,
        Method::Spectral,
    )
    .unwrap();

    let mut group = c.benchmark_group("per_state");
    group.bench_function("evolve_one_step_spectral", |b| {
        b.iter(|| evolve(black_box(&state), black_box(&params), 0.0125, Method::Spectral).unwrap())
    });
    group.bench_function("evolve_one_step_closed_form", |b| {
        b.iter(|| evolve(black_box(&state), black_box(&params), 0.0125, Method::Analytic).unwrap())
    });
    group.bench_function("atom1_reduction", |b| {
        b.iter(|| atom1_reduce(black_box(&state)))
    });
    let rho = atom_field_density(&state);
    group.bench_function("atom_field_density", |b| {
        b.iter(|| atom_field_density(black_box(&state)))
    });
    group.bench_function("negativity", |b| {
        b.iter(|| negativity(black_box(&rho)).unwrap())
    });
    group.finish();
}

fn bench_series(c: &mut Criterion) {
    let params = reference_params();
    let init = reference_init();
    let t_grid = grid(25.0, 201);

    let mut group = c.benchmark_group("time_series_201_points");
    group.sample_size(20);
    group.bench_function("spectral", |b| {
        b.iter(|| series(black_box(&init), black_box(&params), &t_grid, Method::Spectral).unwrap())
    });
    group.bench_function("closed_form", |b| {
        b.iter(|| series(black_box(&init), black_box(&params), &t_grid, Method::Analytic).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_single_state, bench_series);
criterion_main!(benches);
