use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use usptrace::distribution::{charfn, f_tau_g2, f_tau_slice, moments, Character, TauMethod};
use usptrace::frobenius::{scan_curves, weil_data, HyperellipticCurve, ScanMode, ScanOptions};
use usptrace::specfun::{bessel_j, elliptic_ke, gauss_2f1, hyp1f2};
use usptrace::weyl;

fn special_functions(c: &mut Criterion) {
    let mut g = c.benchmark_group("specfun");
    g.bench_function("bessel_j2", |b| b.iter(|| bessel_j(2, black_box(7.3))));
    g.bench_function("elliptic_ke", |b| b.iter(|| elliptic_ke(black_box(0.97))));
    g.bench_function("2f1_near_one", |b| b.iter(|| gauss_2f1(1.5, 2.5, 5.0, black_box(0.99))));
    g.bench_function("1f2_large", |b| b.iter(|| hyp1f2(1.5, 3.0, 4.0, black_box(-400.0))));
    g.finish();
}

fn densities(c: &mut Criterion) {
    let mut g = c.benchmark_group("f_tau_g2");
    for m in [
        TauMethod::Hypergeometric,
        TauMethod::Legendre,
        TauMethod::Elliptic,
        TauMethod::Meijer,
        TauMethod::Slice,
    ] {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| b.iter(|| f_tau_g2(black_box(1.3), m)));
    }
    g.finish();
    c.bench_function("f_tau_slice_g3", |b| b.iter(|| f_tau_slice(3, black_box(1.3), 1e-9)));
    c.bench_function("charfn_tau_g3", |b| b.iter(|| charfn(Character::TauG3, black_box(2.5))));
    c.bench_function("moments_tau_g3_60", |b| b.iter(|| moments(Character::TauG3, black_box(60))));
}

fn sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("weyl_sample_10k");
    g.sample_size(20);
    for rank in 1..=3 {
        g.bench_with_input(BenchmarkId::from_parameter(rank), &rank, |b, &r| b.iter(|| weyl::sample(r, 10_000, 1)));
    }
    g.finish();
}

fn curves(c: &mut Criterion) {
    let curve = HyperellipticCurve::new(13, &[3, 1, 4, 1, 5, 9, 2]).unwrap();
    c.bench_function("weil_data_p13", |b| b.iter(|| weil_data(black_box(&curve))));
    let mut g = c.benchmark_group("scan");
    g.sample_size(10);
    g.bench_function("exhaustive_p5", |b| {
        b.iter(|| scan_curves(5, ScanMode::Exhaustive, 0, 0, &ScanOptions::default()))
    });
    g.finish();
}

criterion_group!(benches, special_functions, densities, sampling, curves);
criterion_main!(benches);
