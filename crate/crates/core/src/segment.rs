//! Segments `C(x,y)` and their linear order.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{ConvexError, Result};
use crate::graph::GraphPath;
use crate::interval_set::{Interval, IntervalSet};
use crate::linalg;
use crate::point::Point;
use crate::polytope::Polytope;
use crate::region::Region;
use crate::space::{gp, SpaceModel};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentRep {
    /// Order interval between the endpoints.
    Interval,
    /// Unique graph path from `x` to `y`.
    Path(GraphPath),
    /// Straight segment between the endpoints.
    Straight,
}

/// `C(x,y)` oriented so that `x` is the order minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub x: Point,
    pub y: Point,
    pub rep: SegmentRep,
}

pub fn segment(space: &SpaceModel, x: &Point, y: &Point) -> Result<Segment> {
    space.validate(x)?;
    space.validate(y)?;
    let rep = match space {
        SpaceModel::Interval { .. } => SegmentRep::Interval,
        SpaceModel::Tree(g) | SpaceModel::Polyhedral { graph: g, .. } => {
            SegmentRep::Path(g.shortest_path(gp(x), gp(y))?)
        }
        SpaceModel::Euclidean { .. } => SegmentRep::Straight,
    };
    Ok(Segment { x: x.clone(), y: y.clone(), rep })
}

impl Segment {
    /// Position of `z` measured from `x`: distance for intervals, arc length
    /// for graphs, the affine parameter in `[0,1]` for straight segments.
    pub fn position(&self, space: &SpaceModel, z: &Point) -> Option<crate::rational::Q> {
        match (&self.rep, &self.x, &self.y, z) {
            (SegmentRep::Interval, Point::Scalar(a), Point::Scalar(b), Point::Scalar(c)) => {
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                (lo <= c && c <= hi).then(|| crate::rational::abs(&(c - a)))
            }
            (SegmentRep::Path(p), _, _, Point::Graph(c)) => space.expect_graph().position(p, c),
            (SegmentRep::Straight, Point::Vector(a), Point::Vector(b), Point::Vector(c)) => {
                straight_param(a, b, c)
            }
            _ => None,
        }
    }

    pub fn contains(&self, space: &SpaceModel, z: &Point) -> bool {
        self.position(space, z).is_some()
    }

    pub fn is_degenerate(&self) -> bool {
        self.x == self.y
    }

    /// The point set as a region.
    pub fn region(&self, space: &SpaceModel) -> Region {
        match (&self.rep, &self.x, &self.y) {
            (SegmentRep::Interval, Point::Scalar(a), Point::Scalar(b)) => {
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                Region::Intervals(IntervalSet::from_interval(Interval::closed(lo.clone(), hi.clone())))
            }
            (SegmentRep::Path(p), _, _) => Region::Graph(space.expect_graph().path_region(p)),
            (SegmentRep::Straight, Point::Vector(a), Point::Vector(b)) => Region::Polytopes(vec![
                Polytope::hull(vec![a.clone(), b.clone()], false).expect("nonempty"),
            ]),
            _ => unreachable!("segment representation matches its endpoints"),
        }
    }

    /// The segment with endpoints swapped; same point set, reversed order.
    pub fn reversed(&self, space: &SpaceModel) -> Segment {
        let rep = match &self.rep {
            SegmentRep::Path(p) => SegmentRep::Path(space.expect_graph().reverse(p)),
            r => r.clone(),
        };
        Segment { x: self.y.clone(), y: self.x.clone(), rep }
    }

    /// Point at a position in the units of [`Segment::position`].
    pub fn point_at(&self, space: &SpaceModel, s: &crate::rational::Q) -> Point {
        match (&self.rep, &self.x, &self.y) {
            (SegmentRep::Interval, Point::Scalar(a), Point::Scalar(b)) => {
                Point::Scalar(if a <= b { a + s } else { a - s })
            }
            (SegmentRep::Path(p), _, _) => Point::Graph(space.expect_graph().point_at(p, s)),
            (SegmentRep::Straight, Point::Vector(a), Point::Vector(b)) => Point::Vector(linalg::lerp(a, b, s)),
            _ => unreachable!("segment representation matches its endpoints"),
        }
    }

    /// Total extent in position units.
    pub fn extent(&self, space: &SpaceModel) -> crate::rational::Q {
        self.position(space, &self.y).expect("endpoint lies on its segment")
    }
}

/// Affine parameter of `c` on `[a,b]`, if `c` lies there.
pub fn straight_param(a: &[crate::rational::Q], b: &[crate::rational::Q], c: &[crate::rational::Q]) -> Option<crate::rational::Q> {
    let d = linalg::sub(b, a);
    let e = linalg::sub(c, a);
    let Some(k) = d.iter().position(|x| !x.is_zero()) else {
        return e.iter().all(|x| x.is_zero()).then(crate::rational::zero);
    };
    let t = &e[k] / &d[k];
    if t < crate::rational::zero() || t > crate::rational::one() {
        return None;
    }
    d.iter().zip(&e).all(|(di, ei)| di * &t == *ei).then_some(t)
}

/// Order of `z` and `t` on the segment, with `seg.x` minimal.
pub fn segment_order(space: &SpaceModel, seg: &Segment, z: &Point, t: &Point) -> Result<Ordering> {
    let pz = seg.position(space, z).ok_or_else(|| ConvexError::PointNotOnSegment(z.to_string()))?;
    let pt = seg.position(space, t).ok_or_else(|| ConvexError::PointNotOnSegment(t.to_string()))?;
    Ok(pz.cmp(&pt))
}

/// `(C(x,z), C(z,y))` for `z` on the segment.
pub fn split(space: &SpaceModel, seg: &Segment, z: &Point) -> Result<(Segment, Segment)> {
    let pos = seg.position(space, z).ok_or_else(|| ConvexError::PointNotOnSegment(z.to_string()))?;
    Ok(match &seg.rep {
        SegmentRep::Path(p) => {
            let g = space.expect_graph();
            let total = g.path_length(p);
            let mut left = g.subpath(p, &crate::rational::zero(), &pos);
            let mut right = g.subpath(p, &pos, &total);
            left.start = seg.x.graph().cloned().expect("graph endpoint");
            left.end = z.graph().cloned().expect("graph point");
            right.start = left.end.clone();
            right.end = seg.y.graph().cloned().expect("graph endpoint");
            (
                Segment { x: seg.x.clone(), y: z.clone(), rep: SegmentRep::Path(left) },
                Segment { x: z.clone(), y: seg.y.clone(), rep: SegmentRep::Path(right) },
            )
        }
        rep => (
            Segment { x: seg.x.clone(), y: z.clone(), rep: rep.clone() },
            Segment { x: z.clone(), y: seg.y.clone(), rep: rep.clone() },
        ),
    })
}
