//! Sweep throughput: the crate's grid-parallel sweep driver against an
//! explicit sequential loop over the same pure per-point operations.
//!
//! With the default `parallel` feature the driver fans out over rayon, so
//! the two series show the parallel speedup; with
//! `--no-default-features` both are sequential and should coincide.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use mzparity::{
    coherent_vacuum, measure, mzi, phi_grid, pinned_twin_fock_config, sweep_signal, twin_fock,
    CoherentSpec, MziConfig, Observable, TwoModeState,
};

#[cfg(feature = "parallel")]
const DRIVER_LABEL: &str = "sweep_driver_rayon";
#[cfg(not(feature = "parallel"))]
const DRIVER_LABEL: &str = "sweep_driver_sequential";

fn sequential_reference(
    prepare: impl Fn(f64) -> mzparity::Result<TwoModeState>,
    grid: &[f64],
    observable: Observable,
) -> Vec<(f64, f64)> {
    grid.iter()
        .map(|&phi| {
            let r = measure(&prepare(phi).unwrap(), observable).unwrap();
            (r.mean, r.variance)
        })
        .collect()
}

fn bench_coherent_intensity(c: &mut Criterion) {
    let input = coherent_vacuum(CoherentSpec::new(Complex64::new(20.0_f64.sqrt(), 0.0))).unwrap();
    let grid = phi_grid(0.0, 2.0 * std::f64::consts::PI, 256).unwrap();
    // Warm the sector-matrix cache so both series measure steady-state cost.
    mzi(&input, 0.1, MziConfig::default()).unwrap();

    let mut group = c.benchmark_group("coherent_n20_j_256pts");
    group.sample_size(10);
    group.bench_with_input(BenchmarkId::new(DRIVER_LABEL, 256), &grid, |b, grid| {
        b.iter(|| {
            sweep_signal(
                |phi| mzi(&input, phi, MziConfig::default()),
                grid,
                Observable::J,
                "coherent",
            )
            .unwrap()
        });
    });
    group.bench_with_input(BenchmarkId::new("explicit_sequential", 256), &grid, |b, grid| {
        b.iter(|| {
            sequential_reference(
                |phi| mzi(&input, phi, MziConfig::default()),
                grid,
                Observable::J,
            )
        });
    });
    group.finish();
}

fn bench_twin_fock_parity(c: &mut Criterion) {
    let n = 15u32;
    let input = twin_fock(n).unwrap();
    let config = pinned_twin_fock_config();
    let grid = phi_grid(0.0, 2.0 * std::f64::consts::PI, 512).unwrap();
    mzi(&input, 0.1, config).unwrap();

    let mut group = c.benchmark_group("twin_fock_n15_parity_512pts");
    group.sample_size(10);
    group.bench_with_input(BenchmarkId::new(DRIVER_LABEL, 512), &grid, |b, grid| {
        b.iter(|| {
            sweep_signal(
                |phi| mzi(&input, phi, config),
                grid,
                Observable::ParityB,
                "twin",
            )
            .unwrap()
        });
    });
    group.bench_with_input(BenchmarkId::new("explicit_sequential", 512), &grid, |b, grid| {
        b.iter(|| sequential_reference(|phi| mzi(&input, phi, config), grid, Observable::ParityB));
    });
    group.finish();
}

criterion_group!(benches, bench_coherent_intensity, bench_twin_fock_parity);
criterion_main!(benches);
