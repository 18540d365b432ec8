//! How expensive is each propagation backend, split into its setup cost
//! (per parameter set) and its per-time cost (per evaluation point)?

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tavis_bench::reference_params;
use tavis_core::{
    analytic_matrix, build_sector, compute_coefficients, rk_integrate, sector_hamiltonian,
    SpectralDecomposition,
};

fn bench_setup(c: &mut Criterion) {
    let params = reference_params();
    let h = sector_hamiltonian(&build_sector(3), &params);

    let mut group = c.benchmark_group("setup_per_parameter_set");
    group.bench_function("closed_form_coefficients", |b| {
        b.iter(|| compute_coefficients(black_box(&params), black_box(1)).unwrap())
    });
    group.bench_function("spectral_decomposition", |b| {
        b.iter(|| SpectralDecomposition::new(black_box(&h)))
    });
    group.finish();
}

fn bench_per_time(c: &mut Criterion) {
    let params = reference_params();
    let coeffs = compute_coefficients(&params, 1).unwrap();
    let h = sector_hamiltonian(&build_sector(3), &params);
    let sd = SpectralDecomposition::new(&h);

    let mut group = c.benchmark_group("matrix_per_time_point");
    group.bench_function("closed_form", |b| {
        b.iter(|| coeffs.matrix(black_box(7.3)))
    });
    group.bench_function("spectral", |b| b.iter(|| sd.propagator(black_box(7.3))));
    group.bench_function("closed_form_with_setup", |b| {
        b.iter(|| analytic_matrix(black_box(&params), black_box(1), black_box(7.3)).unwrap())
    });
    group.finish();
}

fn bench_integrator(c: &mut Criterion) {
    let params = reference_params();
    let h = sector_hamiltonian(&build_sector(3), &params);
    let psi0 = [
        tavis_core::C64::new(0.5, 0.0),
        tavis_core::C64::new(0.0, 0.5),
        tavis_core::C64::new(0.5, 0.0),
        tavis_core::C64::new(0.0, 0.5),
    ];
    let grid = tavis_bench::grid(5.0, 6);

    c.bench_function("runge_kutta_five_units_of_time", |b| {
        b.iter(|| rk_integrate(black_box(&h), black_box(&psi0), black_box(&grid), 1e-3).unwrap())
    });
}

criterion_group!(benches, bench_setup, bench_per_time, bench_integrator);
criterion_main!(benches);
