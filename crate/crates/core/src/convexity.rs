//! Convexity tests, hulls and stars.
//!
//! In graph models with cycles a segment is undefined where two shortest paths
//! tie; such pairs impose no constraint on convexity or hulls.

use serde::{Deserialize, Serialize};

use crate::error::{ConvexError, Result};
use crate::graph::{GraphPoint, GraphRegion};
use crate::interval_set::{Interval, IntervalSet};
use crate::linalg;
use crate::point::Point;
use crate::polytope::Polytope;
use crate::rational::{self, Q};
use crate::region::Region;
use crate::segment::{segment, Segment};
use crate::space::SpaceModel;

/// A pair whose segment leaves the region, or `None` when the region is convex.
pub fn convexity_witness(space: &SpaceModel, r: &Region) -> Result<Option<(Point, Point)>> {
    match (space, r) {
        (SpaceModel::Interval { .. }, Region::Intervals(s)) => Ok(if s.components() > 1 {
            let a = s.parts()[0].representative();
            let b = s.parts()[1].representative();
            Some((Point::Scalar(a), Point::Scalar(b)))
        } else {
            None
        }),
        (SpaceModel::Tree(g), Region::Graph(gr)) => {
            // Subtrees are exactly the connected subsets.
            let comps = gr.components(g);
            Ok((comps.len() > 1).then(|| {
                let pick = |c: &GraphRegion| Point::Graph(c.critical_points(g)[0].clone());
                (pick(&comps[0]), pick(&comps[1]))
            }))
        }
        (SpaceModel::Polyhedral { graph, .. }, Region::Graph(gr)) => {
            let pts = gr.critical_points(graph);
            for (i, x) in pts.iter().enumerate() {
                let paths = graph.shortest_paths_from(x, &pts[i + 1..]);
                for (y, p) in pts[i + 1..].iter().zip(paths) {
                    match p {
                        Ok(p) => {
                            if !graph.path_region(&p).is_subset(gr) {
                                return Ok(Some((Point::Graph(x.clone()), Point::Graph(y.clone()))));
                            }
                        }
                        Err(ConvexError::NonUniqueGeodesic { .. }) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
            Ok(None)
        }
        (SpaceModel::Euclidean { .. }, Region::Polytopes(ps)) => {
            if ps.len() <= 1 {
                return Ok(None);
            }
            let pts = r.critical_points(space);
            for (i, x) in pts.iter().enumerate() {
                for y in &pts[i + 1..] {
                    let (Point::Vector(a), Point::Vector(b)) = (x, y) else { unreachable!() };
                    if !union_covers_segment(ps, a, b) {
                        return Ok(Some((x.clone(), y.clone())));
                    }
                }
            }
            Ok(None)
        }
        _ => Err(ConvexError::ModelMismatch("region does not belong to the space".into())),
    }
}

pub fn is_convex(space: &SpaceModel, r: &Region) -> Result<bool> {
    Ok(convexity_witness(space, r)?.is_none())
}

/// Whether `[a,b]` lies in the union of the polytopes.
pub fn union_covers_segment(ps: &[Polytope], a: &[Q], b: &[Q]) -> bool {
    let mut cover = IntervalSet::empty();
    for p in ps {
        cover = cover.union(&p.segment_params(a, b));
    }
    IntervalSet::from_interval(Interval::closed(rational::zero(), rational::one())).is_subset(&cover)
}

pub fn closure(space: &SpaceModel, r: &Region) -> Region {
    r.closure(space)
}

/// Rounds of segment closure allowed before a graph hull is declared unrepresentable.
pub const HULL_BUDGET: usize = 32;

pub fn convex_hull(space: &SpaceModel, pts: &[Point]) -> Result<Region> {
    if pts.is_empty() {
        return Err(ConvexError::EmptyInput("convex hull of no points".into()));
    }
    for p in pts {
        space.validate(p)?;
    }
    match space {
        SpaceModel::Interval { .. } => {
            let lo = pts.iter().filter_map(Point::scalar).min().unwrap().clone();
            let hi = pts.iter().filter_map(Point::scalar).max().unwrap().clone();
            Ok(Region::Intervals(IntervalSet::from_interval(Interval::closed(lo, hi))))
        }
        SpaceModel::Tree(g) => {
            let root = pts[0].graph().unwrap();
            let targets: Vec<GraphPoint> = pts.iter().map(|p| p.graph().unwrap().clone()).collect();
            let mut r = GraphRegion::default();
            r.insert_point(root);
            for p in g.shortest_paths_from(root, &targets) {
                r = r.union(&g.path_region(&p?));
            }
            Ok(Region::Graph(r))
        }
        SpaceModel::Euclidean { .. } => {
            let vs: Vec<Vec<Q>> = pts.iter().map(|p| p.vector().unwrap().to_vec()).collect();
            Ok(Region::Polytopes(vec![Polytope::hull(vs, false)?]))
        }
        SpaceModel::Polyhedral { graph, .. } => {
            let mut r = GraphRegion::default();
            for p in pts {
                r.insert_point(p.graph().unwrap());
            }
            graph_hull_from(graph, r).map(Region::Graph)
        }
    }
}

/// Closes a graph region under defined segments between its critical points.
pub fn graph_hull_from(graph: &crate::graph::MetricGraph, mut r: GraphRegion) -> Result<GraphRegion> {
    for _ in 0..HULL_BUDGET {
        let pts = r.critical_points(graph);
        let mut next = r.clone();
        for (i, x) in pts.iter().enumerate() {
            for p in graph.shortest_paths_from(x, &pts[i + 1..]) {
                match p {
                    Ok(p) => next = next.union(&graph.path_region(&p)),
                    Err(ConvexError::NonUniqueGeodesic { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        if next == r {
            return Ok(r);
        }
        r = next;
    }
    Err(ConvexError::HullNotFinitelyRepresentable { budget: HULL_BUDGET })
}

/// Union of segments from a center, meeting pairwise only at the center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub center: Point,
    pub ends: Vec<Point>,
    pub arms: Vec<Segment>,
}

impl Star {
    pub fn end_count(&self) -> usize {
        self.ends.len()
    }
}

/// Whether two arms from the same center share a point other than the center.
fn arms_overlap(space: &SpaceModel, a: &Segment, b: &Segment) -> Result<bool> {
    Ok(match (space, &a.x, &a.y, &b.y) {
        (SpaceModel::Interval { .. }, Point::Scalar(c), Point::Scalar(z1), Point::Scalar(z2)) => {
            (z1 > c) == (z2 > c)
        }
        (SpaceModel::Euclidean { .. }, Point::Vector(c), Point::Vector(z1), Point::Vector(z2)) => {
            let d1 = linalg::sub(z1, c);
            let d2 = linalg::sub(z2, c);
            // Overlap iff the directions are positively parallel.
            linalg::rank(vec![d1.clone(), d2.clone()], d1.len()) == 1 && linalg::dot(&d1, &d2) > rational::zero()
        }
        _ => {
            let ra = a.region(space);
            let rb = b.region(space);
            let mut center = GraphRegion::default();
            center.insert_point(a.x.graph().unwrap());
            ra.intersection(&rb)? != Region::Graph(center)
        }
    })
}

pub fn build_star(space: &SpaceModel, center: &Point, ends: &[Point]) -> Result<Star> {
    if ends.is_empty() {
        return Err(ConvexError::EmptyInput("star without ends".into()));
    }
    if ends.contains(center) {
        return Err(ConvexError::InvalidPoint("star ends must differ from the center".into()));
    }
    let arms: Vec<Segment> = ends.iter().map(|z| segment(space, center, z)).collect::<Result<_>>()?;
    for i in 0..arms.len() {
        for j in i + 1..arms.len() {
            if arms_overlap(space, &arms[i], &arms[j])? {
                return Err(ConvexError::ArmsOverlap { first: ends[i].to_string(), second: ends[j].to_string() });
            }
        }
    }
    Ok(Star { center: center.clone(), ends: ends.to_vec(), arms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::rational::{int, ratio};

    fn vp(xs: &[i64]) -> Point {
        Point::Vector(xs.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn l_shape_is_not_convex() {
        let sp = models::make_euclidean(2, None).unwrap();
        let a = Polytope::boxed(vec![int(0), int(0)], vec![int(2), int(1)], false).unwrap();
        let b = Polytope::boxed(vec![int(0), int(0)], vec![int(1), int(2)], false).unwrap();
        let w = convexity_witness(&sp, &Region::Polytopes(vec![a.clone(), b])).unwrap();
        let (x, y) = w.expect("witness");
        let mid = linalg::lerp(x.vector().unwrap(), y.vector().unwrap(), &ratio(1, 2));
        assert!(!(mid[0] <= int(2) && mid[1] <= int(1)) || !(mid[0] <= int(1) && mid[1] <= int(2)));
        let c = Polytope::boxed(vec![int(2), int(0)], vec![int(3), int(1)], false).unwrap();
        assert!(is_convex(&sp, &Region::Polytopes(vec![a, c])).unwrap());
    }

    #[test]
    fn star_with_four_branches() {
        let t = models::branching_tree(3, 1).unwrap();
        let SpaceModel::Tree(g) = &t else { panic!() };
        let ends: Vec<Point> = g.neighbors(1).iter().map(|&(_, w)| Point::vertex(w)).collect();
        let s = build_star(&t, &Point::vertex(1), &ends).unwrap();
        assert_eq!(s.end_count(), 4);
    }

    #[test]
    fn collinear_ends_overlap() {
        let sp = models::make_euclidean(2, None).unwrap();
        let err = build_star(&sp, &vp(&[0, 0]), &[vp(&[1, 1]), vp(&[2, 2])]).unwrap_err();
        assert!(matches!(err, ConvexError::ArmsOverlap { .. }));
        assert!(build_star(&sp, &vp(&[0, 0]), &[vp(&[1, 1]), vp(&[-2, -2])]).is_ok());
    }

    #[test]
    fn polyhedral_hull_of_far_arc_is_whole_cycle() {
        let sp = models::triangle_boundary(0).unwrap();
        let g = sp.graph().unwrap();
        let mid = g.point_on_edge(0, ratio(1, 2)).unwrap();
        let h = convex_hull(&sp, &[Point::vertex(0), Point::Graph(mid)]).unwrap();
        let Region::Graph(r) = &h else { panic!() };
        assert_eq!(r.vertices.len(), 1);
        let h = convex_hull(&sp, &[Point::vertex(0), Point::vertex(1), Point::vertex(2)]).unwrap();
        assert_eq!(Some(h.clone()), sp.whole());
        assert!(is_convex(&sp, &h).unwrap());
    }
}
