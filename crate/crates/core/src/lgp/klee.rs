use num_traits::One;
use serde::Serialize;

use crate::convexity::convexity_witness;
use crate::error::{ConvexError, Result};
use crate::linalg;
use crate::point::Point;
use crate::polytope::{point_segment_dist_sq, Polytope};
use crate::rational::{self, Q};
use crate::region::Region;
use crate::space::SpaceModel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum KleeVerdict {
    Convex,
    /// Hypotheses hold in a space without linear structure; only weak convexity follows.
    WeaklyConvex,
    NotLocallyConvex { witness: Point },
    NotClosed,
    NotConnected,
    /// Hypotheses hold yet a segment leaves the region. Never expected.
    NotConvex { x: Point, y: Point },
}

impl KleeVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            KleeVerdict::Convex => "convex",
            KleeVerdict::WeaklyConvex => "weakly_convex",
            KleeVerdict::NotLocallyConvex { .. } => "not_locally_convex",
            KleeVerdict::NotClosed => "not_closed",
            KleeVerdict::NotConnected => "not_connected",
            KleeVerdict::NotConvex { .. } => "not_convex",
        }
    }
}

/// Checks closedness, connectedness and local convexity of `r`, then convexity.
pub fn klee_check(space: &SpaceModel, r: &Region) -> Result<KleeVerdict> {
    if r.is_empty() {
        return Ok(KleeVerdict::Convex);
    }
    if !r.is_closed(space) {
        return Ok(KleeVerdict::NotClosed);
    }
    if r.component_count(space) != 1 {
        return Ok(KleeVerdict::NotConnected);
    }
    if let Some(c) = local_witness(space, r)? {
        return Ok(KleeVerdict::NotLocallyConvex { witness: c });
    }
    Ok(match (convexity_witness(space, r)?, space) {
        (None, _) => KleeVerdict::Convex,
        (Some(_), SpaceModel::Tree(_) | SpaceModel::Polyhedral { .. }) => KleeVerdict::WeaklyConvex,
        (Some((x, y)), _) => KleeVerdict::NotConvex { x, y },
    })
}

/// A critical point at which the region is not locally convex.
///
/// Away from critical points the region is locally a half-space, a slab or
/// the whole space, so those are the only places to look. The probe radius
/// keeps each probe clear of every other critical point and non-incident edge.
pub fn local_witness(space: &SpaceModel, r: &Region) -> Result<Option<Point>> {
    let crit = r.critical_points(space);
    let mut rho = Q::one();
    for (i, a) in crit.iter().enumerate() {
        for b in &crit[i + 1..] {
            let d = space.distance(a, b) / rational::int(4);
            if d < rho {
                rho = d;
            }
        }
    }
    if let Some(g) = space.graph() {
        for e in g.edges() {
            let d = &e.length / rational::int(4);
            if d < rho {
                rho = d;
            }
        }
    }
    for c in &crit {
        let probe = match (space, c) {
            (SpaceModel::Interval { .. }, _) => return Ok(None),
            (SpaceModel::Euclidean { n, .. }, Point::Vector(v)) => {
                let Region::Polytopes(parts) = r else { unreachable!() };
                let rho = clear_radius(v, parts, rho.clone(), *n);
                let lo = v.iter().map(|x| x - &rho).collect();
                let hi = v.iter().map(|x| x + &rho).collect();
                Region::Polytopes(vec![Polytope::boxed(lo, hi, false)?])
            }
            (_, Point::Graph(p)) => Region::Graph(space.expect_graph().ball(p, &rho).closure(space.expect_graph())),
            _ => return Err(ConvexError::ModelMismatch("critical point outside the model".into())),
        };
        if convexity_witness(space, &r.intersection(&probe)?)?.is_some() {
            return Ok(Some(c.clone()));
        }
    }
    Ok(None)
}

/// Halves `rho` until the box of that radius around `c` misses every edge not through `c`.
fn clear_radius(c: &[Q], parts: &[Polytope], mut rho: Q, n: usize) -> Q {
    let dim = rational::int(4 * n as i64);
    for p in parts {
        let vs = p.vertices();
        let edges: Vec<(usize, usize)> = if p.dim() <= 1 && vs.len() == 2 { vec![(0, 1)] } else { p.edges() };
        for (i, j) in edges {
            let d2 = point_segment_dist_sq(c, &vs[i], &vs[j]);
            let on_edge = d2 == Q::from_integer(0.into());
            if on_edge {
                continue;
            }
            while &rho * &rho * &dim >= d2 {
                rho /= rational::int(2);
            }
        }
        for v in vs {
            let d2 = linalg::norm2(&linalg::sub(c, v));
            if d2 == Q::from_integer(0.into()) {
                continue;
            }
            while &rho * &rho * &dim >= d2 {
                rho /= rational::int(2);
            }
        }
    }
    rho
}
