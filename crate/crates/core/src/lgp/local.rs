use serde::Serialize;

use crate::atlas::Atlas;
use crate::axioms::shrink_around;
use crate::error::Result;
use crate::factorization::cells::{image_is_convex, image_region};
use crate::factorization::openness::open_at;
use crate::factorization::SampledMap;
use crate::point::Point;
use crate::region::Region;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalWitness {
    pub vertex: usize,
    pub image: Point,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalConvexityReport {
    pub locally_convex: bool,
    pub vertices_checked: usize,
    /// Vertices whose star image was also checked inside a shrunk chart.
    pub shrink_checks: usize,
    pub witness: Option<LocalWitness>,
}

/// Every vertex needs an open-onto-image neighborhood whose image is convex and
/// sits in a chart; the neighborhood is the closed star. A second, nested level
/// intersects that image with a shrunk chart around the vertex image and checks
/// the vertex image survives.
pub fn is_locally_convex_map(map: &SampledMap, atlas: &Atlas, depth: usize) -> Result<LocalConvexityReport> {
    let depth = depth.max(1);
    let n = map.vertex_count();
    let fail = |vertex: usize, reason: &str| LocalConvexityReport {
        locally_convex: false,
        vertices_checked: n,
        shrink_checks: 0,
        witness: Some(LocalWitness { vertex, image: map.value(vertex).clone(), reason: reason.into() }),
    };
    if n == 1 {
        return Ok(LocalConvexityReport { locally_convex: true, vertices_checked: 1, shrink_checks: 0, witness: None });
    }
    let mut shrink_checks = 0;
    for x in 0..n {
        if open_at(map, x, depth).is_err() {
            return Ok(fail(x, "not open onto its image"));
        }
        let star = map.star(x);
        if !image_is_convex(map, &star)? {
            return Ok(fail(x, "star image is not convex"));
        }
        let Some(c) = chart_for_star(map, atlas, x, &star)? else {
            return Ok(fail(x, "star image fits no chart"));
        };
        // f(x) lies in the star image, so the nested level hinges on the shrunk chart.
        let small = shrink_around(&map.target, atlas, c, map.value(x))?;
        shrink_checks += 1;
        if !small.contains(map.value(x)) {
            return Ok(fail(x, "shrunk neighborhood image misses the vertex image"));
        }
    }
    Ok(LocalConvexityReport { locally_convex: true, vertices_checked: n, shrink_checks, witness: None })
}

/// Lowest chart around `f(x)` holding the star image. Single-part charts are
/// convex, so holding every vertex image is enough.
fn chart_for_star(map: &SampledMap, atlas: &Atlas, x: usize, star: &[&[usize]]) -> Result<Option<usize>> {
    let verts = map.star_vertices(x);
    let mut region: Option<Region> = None;
    for c in atlas.charts_containing(map.value(x)) {
        let chart = &atlas.chart(c).region;
        let fits = match chart {
            Region::Polytopes(ps) if ps.len() == 1 => {
                verts.iter().all(|&v| map.value(v).vector().is_some_and(|p| ps[0].contains(p)))
            }
            Region::Intervals(set) if set.parts().len() == 1 => verts.iter().all(|&v| chart.contains(map.value(v))),
            _ => {
                if region.is_none() {
                    region = Some(image_region(map, star)?);
                }
                region.as_ref().unwrap().is_subset(chart)
            }
        };
        if fits {
            return Ok(Some(c));
        }
    }
    Ok(None)
}
