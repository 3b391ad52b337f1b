use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use convexa_core::atlas::{default_atlas, AtlasConfig};
use convexa_core::factorization::{examples, DEFAULT_DEPTH};
use convexa_core::lgp::{momentum_demo, LgpConfig};
use convexa_core::paths::{straighten, LinePath, StraightenConfig};
use convexa_core::rational::{int, ratio};
use convexa_core::sampling::sample_points;
use convexa_core::{check_axioms, convex_hull, filtered_quotient, models, segment, Point};

fn segments(c: &mut Criterion) {
    let tree = models::branching_tree(4, 2).unwrap();
    let pts = sample_points(&tree, 32, 1);
    c.bench_function("tree segments, 32 x 32", |b| {
        b.iter(|| {
            for x in &pts {
                for y in &pts {
                    black_box(segment(&tree, x, y).unwrap());
                }
            }
        })
    });
    c.bench_function("tree hull of 32 points", |b| b.iter(|| black_box(convex_hull(&tree, &pts).unwrap())));
}

fn axioms(c: &mut Criterion) {
    let space = models::simplex(2).unwrap();
    let atlas = default_atlas(&space, &AtlasConfig::default()).unwrap();
    let samples = sample_points(&space, 12, 7);
    c.bench_function("axiom suite, simplex, 12 samples", |b| {
        b.iter(|| black_box(check_axioms(&space, &atlas, &samples).unwrap()))
    });
}

fn straightening(c: &mut Criterion) {
    let plane = models::make_euclidean(2, None).unwrap();
    let cfg = AtlasConfig::with_granularity(ratio(1, 2)).with_extent(&[int(-1), int(-1)], &[int(2), int(2)]);
    let atlas = default_atlas(&plane, &cfg).unwrap();
    let zigzag: Vec<Point> =
        (0..=8).map(|k| Point::Vector(vec![ratio(k, 8), if k % 2 == 0 { int(0) } else { ratio(1, 8) }])).collect();
    let path = LinePath::through(&plane, &atlas, zigzag).unwrap();
    c.bench_function("straighten 8-leg zigzag", |b| {
        b.iter(|| black_box(straighten(&plane, &atlas, &path, &StraightenConfig::default()).unwrap()))
    });
}

fn factorization(c: &mut Criterion) {
    let map = examples::projection_grid(8).unwrap();
    c.bench_function("filtered quotient, projection grid 8", |b| {
        b.iter(|| black_box(filtered_quotient(&map, DEFAULT_DEPTH).unwrap()))
    });
}

fn momentum(c: &mut Criterion) {
    let mut g = c.benchmark_group("momentum");
    g.sample_size(10);
    g.bench_function("n = 2, resolution 16", |b| {
        b.iter(|| black_box(momentum_demo(2, 16, &LgpConfig::default()).unwrap()))
    });
    g.finish();
}

criterion_group!(benches, segments, axioms, straightening, factorization, momentum);
criterion_main!(benches);
