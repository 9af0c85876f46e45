use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use fuchsia::check::{region_violations, sample_region};
use fuchsia::exec::Execution;
use fuchsia::flute::{build_flute_with, SequenceSpec, Tail};
use fuchsia::tess::{enumerate_orbit_with, GroupPresentation, OrbitConfig};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn orbit(c: &mut Criterion) {
    let spec = SequenceSpec::new(vec![1.0], Tail::Constant { c: 1.0 }).unwrap();
    let pres =
        GroupPresentation::from_flute(&build_flute_with(&spec, 3, Execution::Sequential).unwrap());
    let mut group = c.benchmark_group("enumerate_orbit/depth5");
    group.sample_size(10);
    for (name, exec) in MODES {
        let config = OrbitConfig {
            exec,
            ..OrbitConfig::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| enumerate_orbit_with(black_box(&pres), 5, &config).unwrap())
        });
    }
    group.finish();
}

fn flute(c: &mut Criterion) {
    let spec = SequenceSpec::new(vec![1.0], Tail::Harmonic { scale: 1.0 }).unwrap();
    let mut group = c.benchmark_group("build_flute/10000");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| build_flute_with(black_box(&spec), 10_000, exec).unwrap())
        });
    }
    group.finish();
}

fn region(c: &mut Criterion) {
    let spec = SequenceSpec::new(vec![1.0], Tail::Constant { c: 1.0 }).unwrap();
    let pres =
        GroupPresentation::from_flute(&build_flute_with(&spec, 3, Execution::Sequential).unwrap());
    let points = sample_region(pres.domain(), -8.0, 8.0, 8.0, 2000);
    let mut group = c.benchmark_group("region_violations/depth3");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| region_violations(black_box(&pres), &points, 3, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, orbit, flute, region);
criterion_main!(benches);
