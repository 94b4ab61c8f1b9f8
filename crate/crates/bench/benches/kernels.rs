use std::hint::black_box;

use cechsnap::geometry::min_enclosing_radius;
use cechsnap::harness::{generate_random, Model};
use cechsnap::persistence::reduce;
use cechsnap::simplicial::{build_filtration, BuildOptions};
use cechsnap::snap::snap_complex;
use cechsnap::{Flavor, GridPartition, PointCloud};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn cloud(n: usize, d: usize) -> PointCloud {
    generate_random(Model::UniformCube { side: 4.0 }, n, d, 42).unwrap()
}

fn miniball(c: &mut Criterion) {
    let mut group = c.benchmark_group("miniball");
    for d in [2, 3, 5] {
        let pts: Vec<Vec<f64>> = cloud(d + 1, d)
            .points()
            .iter()
            .map(|p| p.coords().to_vec())
            .collect();
        group.bench_with_input(BenchmarkId::from_parameter(d), &pts, |b, pts| {
            b.iter(|| min_enclosing_radius(black_box(pts)).unwrap())
        });
    }
    group.finish();
}

fn filtration(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_filtration");
    group.sample_size(20);
    for flavor in [Flavor::Cech, Flavor::Rips] {
        let pts = cloud(60, 2);
        group.bench_function(flavor.to_string(), |b| {
            b.iter(|| build_filtration(black_box(&pts), flavor, 2, 1.2, &BuildOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn persistence(c: &mut Criterion) {
    let pts = cloud(60, 2);
    let f = build_filtration(&pts, Flavor::Cech, 2, 1.2, &BuildOptions::default()).unwrap();
    c.bench_function("reduce", |b| b.iter(|| reduce(black_box(&f))));
}

fn snap(c: &mut Criterion) {
    let pts = cloud(60, 2);
    let f = build_filtration(&pts, Flavor::Cech, 2, 1.2, &BuildOptions::default()).unwrap();
    let grid = GridPartition::new(0.2, 2).unwrap();
    let mut group = c.benchmark_group("snap");
    group.bench_function("complex", |b| b.iter(|| snap_complex(black_box(&f), &pts, 1.0, &grid).unwrap()));
    let q = snap_complex(&f, &pts, 1.0, &grid).unwrap();
    group.bench_function("betti_1", |b| b.iter(|| black_box(&q).betti(1)));
    group.finish();
}

criterion_group!(benches, miniball, filtration, persistence, snap);
criterion_main!(benches);
