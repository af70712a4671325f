use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use terarad_bench::{frequency_axis, mmwave_deployment, thz_deployment};
use terarad_core::{
    coverage_probability_with, crane_rain_attenuation, fog_attenuation, fspl,
    itu_rain_attenuation, DistanceM, Execution, FogConditions, FrequencyHz, PathGeometry,
    Polarization,
};

fn propagation(c: &mut Criterion) {
    let grid = frequency_axis(200);
    let freqs: Vec<FrequencyHz> = grid.points().iter().map(|f| FrequencyHz::new(*f).unwrap()).collect();
    let km = DistanceM::new(1000.0).unwrap();
    let pol = Polarization::horizontal();
    let flat = PathGeometry::horizontal();

    c.bench_function("fspl_200", |b| {
        b.iter(|| freqs.iter().map(|f| fspl(*f, km).unwrap()).sum::<f64>())
    });
    c.bench_function("itu_rain_200", |b| {
        b.iter(|| {
            freqs
                .iter()
                .map(|f| itu_rain_attenuation(*f, black_box(20.0), km, pol, flat).unwrap())
                .sum::<f64>()
        })
    });
    c.bench_function("crane_rain_200", |b| {
        b.iter(|| {
            freqs
                .iter()
                .map(|f| crane_rain_attenuation(*f, black_box(20.0), km, pol).unwrap())
                .sum::<f64>()
        })
    });
    let fog = FogConditions::new(15.0, 0.5).unwrap();
    let fog_freqs: Vec<_> = freqs.iter().filter(|f| f.ghz() >= 10.0).copied().collect();
    c.bench_function("fog_200", |b| {
        b.iter(|| {
            fog_freqs
                .iter()
                .map(|f| fog_attenuation(*f, fog, km).unwrap())
                .sum::<f64>()
        })
    });
}

fn coverage(c: &mut Criterion) {
    let mut group = c.benchmark_group("coverage_2000_trials");
    group.sample_size(10);
    for (name, cfg) in [("mmwave", mmwave_deployment().unwrap()), ("thz", thz_deployment().unwrap())] {
        for exec in [Execution::Sequential, Execution::Parallel] {
            group.bench_with_input(BenchmarkId::new(name, format!("{exec:?}")), &exec, |b, exec| {
                b.iter(|| coverage_probability_with(&cfg, 2000, 7, *exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, propagation, coverage);
criterion_main!(benches);
