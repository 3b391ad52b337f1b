use std::collections::BTreeSet;

use serde::Serialize;

use crate::point::Point;

use super::sampled::SampledMap;

/// Hop-ball chain N_0(x) ⊇ … ⊇ N_d(x) with N_k(x) of hop radius d − k + 1,
/// so N_d(x) is the closed 1-ring.
#[derive(Clone, Debug, Serialize)]
pub struct NeighborhoodFamily {
    pub vertex: usize,
    pub depth: usize,
    pub levels: Vec<Vec<usize>>,
    pub images: Vec<BTreeSet<Point>>,
}

pub fn level_radius(depth: usize, k: usize) -> usize {
    depth - k + 1
}

impl NeighborhoodFamily {
    pub fn of(map: &SampledMap, x: usize, depth: usize) -> NeighborhoodFamily {
        // One BFS to the outer radius; inner levels filter by hop distance.
        let outer = level_radius(depth, 0);
        let dist = hop_distances(map, x, outer);
        let levels: Vec<Vec<usize>> = (0..=depth)
            .map(|k| {
                let r = level_radius(depth, k);
                dist.iter().filter(|(_, d)| *d <= r).map(|(v, _)| *v).collect()
            })
            .collect();
        let images =
            levels.iter().map(|l| l.iter().map(|&v| map.value(v).clone()).collect()).collect();
        NeighborhoodFamily { vertex: x, depth, levels, images }
    }

    /// The key deciding filtered equivalence: the value and every level image.
    pub fn key(&self, map: &SampledMap) -> (Point, Vec<BTreeSet<Point>>) {
        (map.value(self.vertex).clone(), self.images.clone())
    }
}

/// Sorted (vertex, hop distance) pairs within `radius`.
pub fn hop_distances(map: &SampledMap, x: usize, radius: usize) -> Vec<(usize, usize)> {
    let mut dist = std::collections::BTreeMap::new();
    dist.insert(x, 0usize);
    let mut frontier = vec![x];
    for d in 1..=radius {
        let mut next = Vec::new();
        for v in frontier {
            for &w in map.neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d);
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    dist.into_iter().collect()
}
