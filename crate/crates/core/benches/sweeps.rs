//! Compares the rayon-backed sweeps against their sequential twins and
//! times the heavier closed-form computations. Build with and without
//! `--no-default-features` to see the scaling difference; with the
//! `parallel` feature off, the two entry points collapse to one path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rankcov::bounds::refined_upper_bound;
use rankcov::exactcodes::{
    construction_code, covering_radius, covering_radius_seq, enumerate_sphere_intersections,
    enumerate_sphere_intersections_seq, union_ball_volume, union_ball_volume_seq,
};
use rankcov::geometry::IntersectionTable;
use rankcov::qcombinat::SpaceParams;

const BUDGET: u64 = 1 << 24;

fn bench_covering_radius(c: &mut Criterion) {
    let mut group = c.benchmark_group("covering_radius");
    for (m, n, rho) in [(3u32, 3u32, 2u32), (4, 4, 3)] {
        let params = SpaceParams::new(2, m, n).unwrap();
        let code = construction_code(&params, rho, BUDGET).unwrap();
        let label = format!("m{m}n{n}r{rho}");
        group.bench_with_input(BenchmarkId::new("parallel", &label), &code, |b, code| {
            b.iter(|| covering_radius(code, BUDGET).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", &label), &code, |b, code| {
            b.iter(|| covering_radius_seq(code, BUDGET).unwrap())
        });
    }
    group.finish();
}

fn bench_union_volume(c: &mut Criterion) {
    let mut group = c.benchmark_group("union_ball_volume");
    let params = SpaceParams::new(2, 4, 4).unwrap();
    let centers: Vec<u64> = (0..24).map(|i| i * 2_741).collect();
    group.bench_function("parallel", |b| {
        b.iter(|| union_ball_volume(&params, 2, &centers, BUDGET).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| union_ball_volume_seq(&params, 2, &centers, BUDGET).unwrap())
    });
    group.finish();
}

fn bench_sphere_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("sphere_enumeration");
    group.sample_size(10);
    let params = SpaceParams::new(2, 3, 3).unwrap();
    group.bench_function("parallel", |b| {
        b.iter(|| enumerate_sphere_intersections(&params, BUDGET).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| enumerate_sphere_intersections_seq(&params, BUDGET).unwrap())
    });
    group.finish();
}

fn bench_closed_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed_form");
    group.sample_size(10);
    group.bench_function("intersection_table_7_7", |b| {
        let params = SpaceParams::new(2, 7, 7).unwrap();
        b.iter(|| IntersectionTable::build(&params).unwrap())
    });
    group.bench_function("refined_recursion_6_6_3", |b| {
        let params = SpaceParams::new(2, 6, 6).unwrap();
        b.iter(|| refined_upper_bound(&params, 3, 10_000_000).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_covering_radius,
    bench_union_volume,
    bench_sphere_enumeration,
    bench_closed_forms
);
criterion_main!(benches);
