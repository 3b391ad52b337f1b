use serde::Serialize;

use crate::point::Point;
use crate::space::SpaceModel;

use super::neighborhoods::level_radius;
use super::sampled::SampledMap;

/// Where openness onto the image fails: no level around `vertex` works, and
/// in the smallest one `at` sees image point `intruder` that its own 1-ring misses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpennessWitness {
    pub vertex: usize,
    pub level: usize,
    pub at: usize,
    pub intruder: usize,
}

/// Per-vertex verdicts plus the first failure.
#[derive(Clone, Debug, Serialize)]
pub struct OpennessReport {
    pub open: bool,
    pub failing_vertices: Vec<usize>,
    pub witness: Option<OpennessWitness>,
}

/// Discrete openness onto the image.
///
/// Inside U, the relative neighborhood of f(x') is everything of f(U) strictly
/// closer than the nearest distinct neighbor image. Level j = depth is the
/// 1-ring, the smallest N_j, so passing it passes every coarser level.
pub fn is_locally_open_onto_image(map: &SampledMap, depth: usize) -> OpennessReport {
    let depth = depth.max(1);
    let mut failing = Vec::new();
    let mut witness = None;
    for x in 0..map.vertex_count() {
        if let Err(w) = open_at(map, x, depth) {
            failing.push(x);
            witness.get_or_insert(w);
        }
    }
    OpennessReport { open: failing.is_empty(), failing_vertices: failing, witness }
}

/// Ok if some level U = N_k(x) passes; tries the smallest first.
pub fn open_at(map: &SampledMap, x: usize, depth: usize) -> Result<(), OpennessWitness> {
    let mut first_failure = None;
    for k in (0..=depth).rev() {
        let u = map.hop_ball(x, level_radius(depth, k));
        match failure_in(map, &u) {
            None => return Ok(()),
            Some((at, intruder)) => {
                first_failure.get_or_insert(OpennessWitness { vertex: x, level: k, at, intruder });
            }
        }
    }
    Err(first_failure.expect("at least one level"))
}

fn failure_in(map: &SampledMap, u: &[usize]) -> Option<(usize, usize)> {
    match (&map.target, map.int_coords()) {
        // Max-norm comparisons are unchanged by the common scaling.
        (SpaceModel::Euclidean { .. }, Some(pts)) => failure_with(map, u, |a, b| {
            pts[a].iter().zip(&pts[b]).map(|(x, y)| (x - y).abs()).max().unwrap_or(0)
        }),
        _ => failure_with(map, u, |a, b| map.target.distance(map.value(a), map.value(b))),
    }
}

fn failure_with<D: Ord>(map: &SampledMap, u: &[usize], dist: impl Fn(usize, usize) -> D) -> Option<(usize, usize)> {
    for &xp in u {
        let fx = map.value(xp);
        let ring: Vec<usize> =
            map.neighbors(xp).iter().copied().filter(|v| u.binary_search(v).is_ok()).collect();
        let radius: Option<D> = ring.iter().filter(|&&y| map.value(y) != fx).map(|&y| dist(xp, y)).min();
        let Some(radius) = radius else { continue };
        let covered = |p: &Point| p == fx || ring.iter().any(|&y| map.value(y) == p);
        for &z in u {
            if !covered(map.value(z)) && dist(xp, z) < radius {
                return Some((xp, z));
            }
        }
    }
    None
}
