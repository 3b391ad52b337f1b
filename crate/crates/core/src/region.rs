//! Finite exact representations of subsets, one family per model.

use serde::{Deserialize, Serialize};

use crate::error::{ConvexError, Result};
use crate::graph::GraphRegion;
use crate::interval_set::IntervalSet;
use crate::linalg;
use crate::point::Point;
use crate::polytope::{self, Polytope};
use crate::rational::{self, Q};
use crate::space::SpaceModel;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Intervals(IntervalSet),
    Graph(GraphRegion),
    /// Finite union of polytopes.
    Polytopes(Vec<Polytope>),
}

fn mismatch() -> ConvexError {
    ConvexError::ModelMismatch("regions of different model families".into())
}

impl Region {
    pub fn is_empty(&self) -> bool {
        match self {
            Region::Intervals(s) => s.is_empty(),
            Region::Graph(g) => g.is_empty(),
            Region::Polytopes(ps) => ps.is_empty(),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (Region::Intervals(s), Point::Scalar(x)) => s.contains(x),
            (Region::Graph(g), Point::Graph(x)) => g.contains(x),
            (Region::Polytopes(ps), Point::Vector(x)) => ps.iter().any(|q| q.contains(x)),
            _ => false,
        }
    }

    pub fn union(&self, other: &Region) -> Result<Region> {
        Ok(match (self, other) {
            (Region::Intervals(a), Region::Intervals(b)) => Region::Intervals(a.union(b)),
            (Region::Graph(a), Region::Graph(b)) => Region::Graph(a.union(b)),
            (Region::Polytopes(a), Region::Polytopes(b)) => {
                let mut parts = a.clone();
                for p in b {
                    if !parts.iter().any(|q| p.is_subset(q)) {
                        parts.push(p.clone());
                    }
                }
                Region::Polytopes(parts)
            }
            _ => return Err(mismatch()),
        })
    }

    /// Exact intersection. Polytope unions are supported for boxes and planar parts.
    pub fn intersection(&self, other: &Region) -> Result<Region> {
        Ok(match (self, other) {
            (Region::Intervals(a), Region::Intervals(b)) => Region::Intervals(a.intersection(b)),
            (Region::Graph(a), Region::Graph(b)) => Region::Graph(a.intersection(b)),
            (Region::Polytopes(a), Region::Polytopes(b)) => {
                let mut parts = Vec::new();
                for p in a {
                    for q in b {
                        if let Some(r) = intersect_polytopes(p, q)? {
                            parts.push(r);
                        }
                    }
                }
                Region::Polytopes(parts)
            }
            _ => return Err(mismatch()),
        })
    }

    /// Inclusion test. Exact except for polytope unions on the right, where a
    /// full-dimensional left part must fit inside a single right part.
    pub fn is_subset(&self, other: &Region) -> bool {
        match (self, other) {
            (Region::Intervals(a), Region::Intervals(b)) => a.is_subset(b),
            (Region::Graph(a), Region::Graph(b)) => a.is_subset(b),
            (Region::Polytopes(a), Region::Polytopes(b)) => a.iter().all(|p| {
                b.iter().any(|q| p.is_subset(q))
                    || (p.dim() <= 1 && {
                        let vs = p.vertices();
                        crate::convexity::union_covers_segment(b, &vs[0], &vs[vs.len() - 1])
                    })
            }),
            _ => false,
        }
    }

    pub fn closure(&self, space: &SpaceModel) -> Region {
        match self {
            Region::Intervals(s) => Region::Intervals(s.closure()),
            Region::Graph(g) => Region::Graph(g.closure(space.expect_graph())),
            Region::Polytopes(ps) => Region::Polytopes(ps.iter().map(Polytope::closure).collect()),
        }
    }

    pub fn is_closed(&self, space: &SpaceModel) -> bool {
        match self {
            Region::Intervals(s) => s.is_closed(),
            Region::Graph(g) => g.is_closed(space.expect_graph()),
            Region::Polytopes(ps) => ps.iter().all(|p| !p.is_open()),
        }
    }

    /// Number of connected components.
    pub fn component_count(&self, space: &SpaceModel) -> usize {
        match self {
            Region::Intervals(s) => s.components(),
            Region::Graph(g) => g.components(space.expect_graph()).len(),
            Region::Polytopes(ps) => {
                let n = ps.len();
                let mut parent: Vec<usize> = (0..n).collect();
                fn find(p: &mut [usize], mut x: usize) -> usize {
                    while p[x] != x {
                        p[x] = p[p[x]];
                        x = p[x];
                    }
                    x
                }
                for i in 0..n {
                    for j in i + 1..n {
                        if polytopes_touch(&ps[i], &ps[j]) {
                            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                            parent[a] = b;
                        }
                    }
                }
                (0..n).filter(|&i| find(&mut parent, i) == i).count()
            }
        }
    }

    /// Finite sample on which pairwise segment tests decide convexity.
    pub fn critical_points(&self, space: &SpaceModel) -> Vec<Point> {
        match self {
            Region::Intervals(s) => {
                let mut out = Vec::new();
                for iv in s.parts() {
                    let w = &iv.hi - &iv.lo;
                    let quarter = rational::ratio(1, 4);
                    out.push(if iv.lo_closed { iv.lo.clone() } else { &iv.lo + &w * &quarter });
                    out.push(if iv.hi_closed { iv.hi.clone() } else { &iv.hi - &w * &quarter });
                    out.push(iv.representative());
                }
                out.sort();
                out.dedup();
                out.into_iter().map(Point::Scalar).collect()
            }
            Region::Graph(g) => g
                .critical_points(space.expect_graph())
                .into_iter()
                .map(Point::Graph)
                .collect(),
            Region::Polytopes(ps) => polytope_sample(ps).into_iter().map(Point::Vector).collect(),
        }
    }
}

/// Pulls a point of an open polytope slightly towards its centroid.
fn nudge(p: &Polytope, v: &[Q]) -> Vec<Q> {
    if p.is_open() {
        linalg::lerp(v, &p.centroid(), &rational::ratio(1, 1024))
    } else {
        v.to_vec()
    }
}

fn polytope_sample(ps: &[Polytope]) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = Vec::new();
    let mut segs: Vec<(Vec<Q>, Vec<Q>)> = Vec::new();
    for p in ps {
        let vs = p.vertices();
        for v in vs {
            out.push(nudge(p, v));
        }
        out.push(p.centroid());
        for (i, j) in p.edges() {
            let mid = linalg::lerp(&vs[i], &vs[j], &rational::half());
            out.push(nudge(p, &mid));
            segs.push((vs[i].clone(), vs[j].clone()));
        }
    }
    // Planar edge crossings are where the boundary of a union can turn.
    if ps.first().is_some_and(|p| p.ambient_dim() == 2) {
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                if let Some(x) = segment_crossing(&segs[i].0, &segs[i].1, &segs[j].0, &segs[j].1) {
                    if ps.iter().any(|p| p.closure().contains(&x)) {
                        let owner = ps.iter().find(|p| p.closure().contains(&x)).unwrap();
                        out.push(nudge(owner, &x));
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Unique crossing point of two planar segments, if any.
pub fn segment_crossing(a: &[Q], b: &[Q], c: &[Q], d: &[Q]) -> Option<Vec<Q>> {
    let r = linalg::sub(b, a);
    let s = linalg::sub(d, c);
    let denom = &r[0] * &s[1] - &r[1] * &s[0];
    if num_traits::Zero::is_zero(&denom) {
        return None;
    }
    let ca = linalg::sub(c, a);
    let t = (&ca[0] * &s[1] - &ca[1] * &s[0]) / &denom;
    let u = (&ca[0] * &r[1] - &ca[1] * &r[0]) / &denom;
    let unit = |x: &Q| *x >= rational::zero() && *x <= rational::one();
    (unit(&t) && unit(&u)).then(|| linalg::lerp(a, b, &t))
}

fn intersect_polytopes(p: &Polytope, q: &Polytope) -> Result<Option<Polytope>> {
    // A convex set holding every vertex of the other holds its closure.
    if p.vertices().iter().all(|v| q.contains(v)) {
        return Ok(Some(p.clone()));
    }
    if q.vertices().iter().all(|v| p.contains(v)) {
        return Ok(Some(q.clone()));
    }
    if let (Some((plo, phi)), Some((qlo, qhi))) = (p.box_bounds(), q.box_bounds()) {
        let lo: Vec<Q> = plo.iter().zip(qlo).map(|(a, b)| rational::max(a, b)).collect();
        let hi: Vec<Q> = phi.iter().zip(qhi).map(|(a, b)| rational::min(a, b)).collect();
        if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
            return Ok(None);
        }
        return Polytope::boxed(lo, hi, p.is_open() || q.is_open()).map(Some);
    }
    if p.ambient_dim() == 2 {
        let open = p.is_open() || q.is_open();
        return Ok(match polytope::intersect_2d(p, q) {
            Some(vs) => {
                let h = Polytope::hull(vs, false)?;
                if open {
                    h.interior()
                } else {
                    Some(h)
                }
            }
            None => None,
        });
    }
    Err(ConvexError::Unsupported("polytope intersection above two dimensions".into()))
}

/// Whether two polytopes share a point (closures for closed parts; open parts
/// must overlap in an open set or meet a closed part).
fn polytopes_touch(p: &Polytope, q: &Polytope) -> bool {
    match intersect_polytopes(&p.closure(), &q.closure()) {
        Ok(Some(i)) => {
            if !p.is_open() && !q.is_open() {
                return true;
            }
            i.vertices().iter().chain(std::iter::once(&i.centroid())).any(|v| p.contains(v) && q.contains(v))
        }
        Ok(None) => false,
        Err(_) => p.vertices().iter().any(|v| q.contains(v)) || q.vertices().iter().any(|v| p.contains(v)),
    }
}
