use std::f64::consts::PI;
use std::sync::Arc;

use anisoflow::dynamics::step;
use anisoflow::noise::{burn_in, NoiseSeries, WienerPath};
use anisoflow::spectral::{check_assumption, leray_project, nonlinear_term};
use anisoflow::{make_grid, Complex64, EvolutionKind, EvolutionSpec, SimParams, SpectralField};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

const SIZES: [usize; 3] = [32, 64, 128];

fn spectral_ops(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral");
    for n in SIZES {
        let g = make_grid(n, 2.0 * PI).unwrap();
        let v = SpectralField::random(&g, n as f64 / 4.0, 1.0, 1).unwrap();
        group.bench_with_input(BenchmarkId::new("nonlinear_term", n), &v, |b, v| {
            b.iter(|| nonlinear_term(black_box(v)))
        });
        group.bench_with_input(BenchmarkId::new("leray_project", n), &v, |b, v| {
            b.iter(|| leray_project(black_box(v)))
        });
    }
    group.finish();
}

fn time_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("step");
    for n in SIZES {
        let g = make_grid(n, 2.0 * PI).unwrap();
        let h = SpectralField::random(&g, 3.0, 1.0, 1).unwrap();
        let ratio = check_assumption(&h, 1.0, 0.25).ratio;
        let p = Arc::new(SimParams {
            nu: 1.0,
            delta: 0.25,
            dt: 1e-3,
            horizon: 1.0,
            forcing: SpectralField::single_mode(&g, 1, 1, Complex64::new(0.5, 0.0)).unwrap(),
            intensity: h.scaled(0.5 / ratio),
            seed: 1,
            noise_dt: 1e-3,
            force: false,
        });
        let path = WienerPath::sample(1, -burn_in(p.delta), 1.0, p.noise_dt).unwrap();
        let series = Arc::new(NoiseSeries::from_path(&path, p.delta, 0.0).unwrap());
        let spec = EvolutionSpec::new(EvolutionKind::ColoredV, p.clone(), Some(series)).unwrap();
        let v = SpectralField::random(&g, n as f64 / 4.0, 1.0, 2).unwrap();
        group.bench_with_input(BenchmarkId::new("colored", n), &v, |b, v| {
            b.iter(|| step(black_box(v), 0.5, p.dt, &spec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, spectral_ops, time_step);
criterion_main!(benches);
