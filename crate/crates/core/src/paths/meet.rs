use num_traits::Zero;

use crate::graph::GraphRegion;
use crate::linalg;
use crate::point::Point;
use crate::rational::{self, Q};
use crate::region::Region;
use crate::segment::Segment;
use crate::space::SpaceModel;

/// Extreme points of `a ∩ b`: the whole intersection when it is finite,
/// otherwise the ends of its pieces.
pub fn leg_meet(space: &SpaceModel, a: &Segment, b: &Segment) -> Vec<Point> {
    let mut out = match (&a.x, &a.y, &b.x, &b.y) {
        (Point::Vector(p0), Point::Vector(p1), Point::Vector(q0), Point::Vector(q1)) => {
            straight_meet(p0, p1, q0, q1).into_iter().map(Point::Vector).collect()
        }
        _ => match (a.region(space), b.region(space)) {
            (Region::Intervals(x), Region::Intervals(y)) => {
                let m = x.intersection(&y);
                m.parts()
                    .iter()
                    .flat_map(|iv| [iv.lo.clone(), iv.hi.clone()])
                    .map(Point::Scalar)
                    .collect()
            }
            (Region::Graph(x), Region::Graph(y)) => graph_extremes(&x.intersection(&y)),
            _ => Vec::new(),
        },
    };
    out.sort();
    out.dedup();
    out
}

fn graph_extremes(r: &GraphRegion) -> Vec<Point> {
    let mut out: Vec<Point> = r.vertices.iter().map(|v| Point::vertex(*v)).collect();
    for (e, set) in &r.edges {
        for iv in set.parts() {
            for (t, closed) in [(&iv.lo, iv.lo_closed), (&iv.hi, iv.hi_closed)] {
                if closed {
                    out.push(Point::Graph(crate::graph::GraphPoint::Edge { edge: *e, t: t.clone() }));
                }
            }
        }
    }
    out
}

/// Intersection of two closed straight segments in any dimension, as its
/// extreme points.
pub fn straight_meet(p0: &[Q], p1: &[Q], q0: &[Q], q1: &[Q]) -> Vec<Vec<Q>> {
    let d = linalg::sub(p1, p0);
    let e = linalg::sub(q1, q0);
    let w = linalg::sub(q0, p0);
    let n = d.len();
    let d_zero = d.iter().all(Zero::is_zero);
    let e_zero = e.iter().all(Zero::is_zero);
    if d_zero {
        return match crate::segment::straight_param(q0, q1, p0) {
            Some(_) => vec![p0.to_vec()],
            None => Vec::new(),
        };
    }
    if e_zero {
        return match crate::segment::straight_param(p0, p1, q0) {
            Some(_) => vec![q0.to_vec()],
            None => Vec::new(),
        };
    }
    if linalg::rank(vec![d.clone(), e.clone()], n) == 2 {
        // p0 + s d = q0 + t e.
        let rows: Vec<Vec<Q>> = (0..n).map(|i| vec![d[i].clone(), -e[i].clone(), w[i].clone()]).collect();
        let (r, pivots) = linalg::rref(rows, 3);
        if pivots.contains(&2) {
            return Vec::new();
        }
        let (s, t) = (r[0][2].clone(), r[1][2].clone());
        let unit = |x: &Q| *x >= rational::zero() && *x <= rational::one();
        return if unit(&s) && unit(&t) { vec![linalg::lerp(p0, p1, &s)] } else { Vec::new() };
    }
    // Parallel: collinear only if w is parallel to d.
    if linalg::rank(vec![d.clone(), w.clone()], n) == 2 {
        return Vec::new();
    }
    let dd = linalg::norm2(&d);
    let s0 = linalg::dot(&w, &d) / &dd;
    let s1 = linalg::dot(&linalg::sub(q1, p0), &d) / &dd;
    let lo = rational::max(&rational::zero(), &rational::min(&s0, &s1));
    let hi = rational::min(&rational::one(), &rational::max(&s0, &s1));
    if lo > hi {
        return Vec::new();
    }
    let mut out = vec![linalg::lerp(p0, p1, &lo)];
    if lo != hi {
        out.push(linalg::lerp(p0, p1, &hi));
    }
    out
}
