use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use tensegrity_core::linking::{linking_matrix, persistence_certificate, IntersectionFormulas, DEFAULT_MARGIN};
use tensegrity_core::par::{self, Execution};
use tensegrity_core::tensegrity::Construction;
use tensegrity_core::trajectory::{build_curves, trajectory_samples};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn realization_sweep(c: &mut Criterion) {
    let construction = Construction::new().unwrap();
    let xs = par::linspace(0.01, 0.99, 2000);
    let mut group = c.benchmark_group("realize_and_link_2000");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                par::map(exec, &xs, |&x| {
                    let fw = construction.realize(x).unwrap();
                    linking_matrix(&fw, DEFAULT_MARGIN).unwrap().is_mutual_hopf_link()
                })
            })
        });
    }
    group.finish();
}

fn trajectory(c: &mut Criterion) {
    let curves = build_curves().unwrap();
    let f = IntersectionFormulas::printed();
    let mut group = c.benchmark_group("trajectory_5000");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| trajectory_samples(&curves, &f, black_box(5000), exec).unwrap())
        });
    }
    group.finish();
}

fn certificate(c: &mut Criterion) {
    let f = IntersectionFormulas::printed();
    let mut group = c.benchmark_group("persistence_certificate");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| persistence_certificate(&f, exec).unwrap().verdict)
        });
    }
    group.finish();
}

criterion_group!(benches, realization_sweep, trajectory, certificate);
criterion_main!(benches);
