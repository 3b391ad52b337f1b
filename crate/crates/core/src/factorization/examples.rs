//! Shipped sampled maps.

use std::collections::BTreeSet;

use crate::atlas::AtlasConfig;
use crate::error::{ConvexError, Result};
use crate::graph::GraphEdge;
use crate::models;
use crate::point::Point;
use crate::rational::{int, ratio, Q};

use super::sampled::SampledMap;

fn path_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

fn unit_cycle(n: usize) -> Vec<GraphEdge> {
    cycle_edges(n).into_iter().map(|(u, v)| GraphEdge { u, v, length: int(1) }).collect()
}

fn grid_index(m: usize) -> impl Fn(usize, usize) -> usize {
    move |i, j| i * (m + 1) + j
}

/// (x, y) ↦ x on the (m+1)² grid of [0,1]² with king-move adjacency.
pub fn projection_grid(m: usize) -> Result<SampledMap> {
    let id = grid_index(m);
    let mut values = Vec::new();
    let mut edges = Vec::new();
    for i in 0..=m {
        for j in 0..=m {
            values.push(Point::Scalar(ratio(i as i64, m as i64)));
            for (di, dj) in [(1i64, 0i64), (0, 1), (1, 1), (1, -1)] {
                let (a, b) = (i as i64 + di, j as i64 + dj);
                if a <= m as i64 && b >= 0 && b <= m as i64 {
                    edges.push((id(i, j), id(a as usize, b as usize)));
                }
            }
        }
    }
    SampledMap::new(models::make_interval(int(0), int(1))?, values, &edges, Vec::new(), BTreeSet::new())
}

/// Identity of the path grid of [0,1] with m+1 vertices.
pub fn identity_interval(m: usize) -> Result<SampledMap> {
    let values = (0..=m).map(|i| Point::Scalar(ratio(i as i64, m as i64))).collect();
    SampledMap::new(models::make_interval(int(0), int(1))?, values, &path_edges(m + 1), Vec::new(), BTreeSet::new())
}

/// Angle doubling i ↦ 2i on a cycle of odd length n over the unit-edge n-cycle.
pub fn doubling(n: usize) -> Result<SampledMap> {
    if n < 5 || n % 2 == 0 {
        return Err(ConvexError::Parse("doubling needs an odd cycle of length at least 5".into()));
    }
    let target = models::make_polyhedral(n, unit_cycle(n), 0)?;
    let values = (0..n).map(|i| Point::vertex(2 * i % n)).collect();
    SampledMap::new(target, values, &cycle_edges(n), Vec::new(), BTreeSet::new())
}

/// Rational points in counterclockwise order near the unit circle (a convex polygon).
fn circle_points(n: usize) -> Vec<Point> {
    (0..n)
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / n as f64;
            let r = |x: f64| ratio((x * 1000.0).round() as i64, 1000);
            Point::Vector(vec![r(a.cos()), r(a.sin())])
        })
        .collect()
}

/// Angle doubling with values on a polygonal circle in the plane.
pub fn doubling_planar(n: usize) -> Result<SampledMap> {
    let pts = circle_points(n);
    let values = (0..n).map(|i| pts[2 * i % n].clone()).collect();
    SampledMap::new(models::make_euclidean(2, None)?, values, &cycle_edges(n), Vec::new(), BTreeSet::new())
}

/// x ↦ x³ − 3x on the grid of [-2, 2] with spacing 1/den.
pub fn cubic(den: usize) -> Result<SampledMap> {
    let xs = cubic_grid(den);
    let values = xs.iter().map(|x| Point::Scalar(x * x * x - int(3) * x)).collect();
    SampledMap::new(models::make_interval(int(-3), int(3))?, values, &path_edges(xs.len()), Vec::new(), BTreeSet::new())
}

/// x ↦ (x, x³ − 3x) on the same grid.
pub fn cubic_embedding(den: usize) -> Result<SampledMap> {
    let xs = cubic_grid(den);
    let values = xs.iter().map(|x| Point::Vector(vec![x.clone(), x * x * x - int(3) * x])).collect();
    SampledMap::new(models::make_euclidean(2, None)?, values, &path_edges(xs.len()), Vec::new(), BTreeSet::new())
}

pub fn cubic_grid(den: usize) -> Vec<Q> {
    let d = den as i64;
    (-2 * d..=2 * d).map(|k| ratio(k, d)).collect()
}

/// The constant map of a path with n vertices.
pub fn constant(n: usize) -> Result<SampledMap> {
    let values = vec![Point::Scalar(int(0)); n];
    SampledMap::new(models::make_interval(int(-1), int(1))?, values, &path_edges(n), Vec::new(), BTreeSet::new())
}

/// On [0,2] with spacing 1/8: x on [0, 1/2], 1 − x after; the fiber over 0 is {0, 1}.
pub fn split_fiber() -> Result<SampledMap> {
    let values = (0..=16)
        .map(|k| {
            let x = ratio(k, 8);
            Point::Scalar(if k <= 4 { x } else { int(1) - x })
        })
        .collect();
    SampledMap::new(models::make_interval(int(-1), int(1))?, values, &path_edges(17), Vec::new(), BTreeSet::new())
}

/// A 2k-cycle run once around each loop of a figure-eight made of two k-cycles sharing vertex 0.
pub fn figure_eight(k: usize) -> Result<SampledMap> {
    if k < 5 {
        return Err(ConvexError::Parse("figure-eight loops need at least 5 edges".into()));
    }
    let loop_b = |j: usize| if j == 0 { 0 } else { k - 1 + j };
    let mut edges: Vec<GraphEdge> = unit_cycle(k);
    edges.extend((0..k).map(|j| GraphEdge { u: loop_b(j), v: loop_b((j + 1) % k), length: int(1) }));
    let target = models::make_polyhedral(2 * k - 1, edges, 0)?;
    let values = (0..2 * k).map(|i| Point::vertex(if i < k { i } else { loop_b(i - k) })).collect();
    SampledMap::new(target, values, &cycle_edges(2 * k), Vec::new(), BTreeSet::new())
}

/// Kuhn triangulation of the lattice points kept by `keep`, mapped identically into the plane.
pub fn triangulated_region(m: usize, scale: i64, keep: impl Fn(usize, usize) -> bool) -> Result<SampledMap> {
    let mut index = std::collections::BTreeMap::new();
    let mut values = Vec::new();
    for i in 0..=m {
        for j in 0..=m {
            if keep(i, j) {
                index.insert((i, j), values.len());
                values.push(Point::Vector(vec![ratio(i as i64 * scale, m as i64), ratio(j as i64 * scale, m as i64)]));
            }
        }
    }
    let mut cells = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let get = |a, b| index.get(&(a, b)).copied();
            if let (Some(p), Some(q), Some(r), Some(s)) = (get(i, j), get(i + 1, j), get(i + 1, j + 1), get(i, j + 1)) {
                cells.push(vec![p, q, r]);
                cells.push(vec![p, r, s]);
            }
        }
    }
    SampledMap::new(models::make_euclidean(2, None)?, values, &[], cells, BTreeSet::new())
}

/// The unit square, triangulated on an m × m grid.
pub fn square_inclusion(m: usize) -> Result<SampledMap> {
    triangulated_region(m, 1, |_, _| true)
}

/// The L-shaped union [0,2]² minus the open upper-right quarter, on a 2m × 2m grid.
pub fn l_shape_inclusion(m: usize) -> Result<SampledMap> {
    triangulated_region(2 * m, 2, move |i, j| i <= m || j <= m)
}

/// Atlas suited to each shipped map's target.
pub fn suggested_atlas(name: &str) -> AtlasConfig {
    match name {
        "doubling" => AtlasConfig::with_granularity(ratio(5, 2)),
        "figure-eight" => AtlasConfig::with_granularity(ratio(5, 4)),
        // Stars of width one grid step must fit a chart around every vertex.
        "projection-grid" | "identity" => AtlasConfig::with_granularity(ratio(1, 2)),
        "square" => {
            AtlasConfig::with_granularity(ratio(3, 4)).with_extent(&[int(-3), int(-3)], &[int(3), int(3)])
        }
        // Half-unit grid: stars are a unit wide, so charts need radius above 1.
        "l-shape" => {
            AtlasConfig::with_granularity(ratio(5, 4)).with_extent(&[int(-3), int(-3)], &[int(3), int(3)])
        }
        "doubling-planar" | "cubic-embedding" => AtlasConfig::with_granularity(ratio(1, 2))
            .with_extent(&[int(-3), int(-3)], &[int(3), int(3)]),
        _ => AtlasConfig::default(),
    }
}

/// Shipped map by name; `size` overrides the resolution where it applies.
pub fn preset(name: &str, size: Option<usize>) -> Result<SampledMap> {
    match name {
        "projection-grid" => projection_grid(size.unwrap_or(8)),
        "identity" => identity_interval(size.unwrap_or(16)),
        "doubling" => doubling(size.unwrap_or(11)),
        "doubling-planar" => doubling_planar(size.unwrap_or(11)),
        "cubic" => cubic(size.unwrap_or(100)),
        "cubic-embedding" => cubic_embedding(size.unwrap_or(100)),
        "constant" => constant(size.unwrap_or(8)),
        "split-fiber" => split_fiber(),
        "figure-eight" => figure_eight(size.unwrap_or(6)),
        "square" => square_inclusion(size.unwrap_or(4)),
        "l-shape" => l_shape_inclusion(size.unwrap_or(2)),
        other => Err(ConvexError::Parse(format!("unknown map preset {other:?}"))),
    }
}

pub const PRESETS: [&str; 11] = [
    "projection-grid",
    "identity",
    "doubling",
    "doubling-planar",
    "cubic",
    "cubic-embedding",
    "constant",
    "split-fiber",
    "figure-eight",
    "square",
    "l-shape",
];
