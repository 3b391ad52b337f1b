//! Convex polytopes in vertex representation with a derived exact
//! halfspace description.
//!
//! A polytope stores its extreme points, the equalities of its affine hull and
//! facet inequalities `a.x <= b` valid on that hull. Open polytopes are
//! interiors in the ambient space and must be full-dimensional.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ConvexError, Result};
use crate::interval_set::{Interval, IntervalSet};
use crate::linalg::{dot, nullspace, normalize_direction, rank, rref, sub};
use crate::rational::{self, Q};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "PolytopeRepr", into = "PolytopeRepr")]
pub struct Polytope {
    vertices: Vec<Vec<Q>>,
    open: bool,
    dim: usize,
    eqs: Vec<(Vec<Q>, Q)>,
    ineqs: Vec<(Vec<Q>, Q)>,
    bounds: Option<(Vec<Q>, Vec<Q>)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeRepr {
    pub vertices: Vec<VecQ>,
    #[serde(default)]
    pub open: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VecQ(#[serde(with = "rational::serde_qvec")] pub Vec<Q>);

impl TryFrom<PolytopeRepr> for Polytope {
    type Error = ConvexError;
    fn try_from(r: PolytopeRepr) -> Result<Self> {
        Polytope::hull(r.vertices.into_iter().map(|v| v.0).collect(), r.open)
    }
}

impl From<Polytope> for PolytopeRepr {
    fn from(p: Polytope) -> Self {
        PolytopeRepr { vertices: p.vertices.into_iter().map(VecQ).collect(), open: p.open }
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.open == other.open && self.vertices == other.vertices
    }
}
impl Eq for Polytope {}

impl std::hash::Hash for Polytope {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.open.hash(state);
        self.vertices.hash(state);
    }
}

/// Andrew's monotone chain; counter-clockwise, collinear points dropped.
pub fn hull_2d(points: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut pts: Vec<Vec<Q>> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: &[Q], a: &[Q], b: &[Q]| {
        (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
    };
    let mut lower: Vec<Vec<Q>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= Q::zero() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<Q>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= Q::zero() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn subsets(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > m {
        return;
    }
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + m - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Facets `c.y <= d` of the full-dimensional hull of `pts` in `R^k`.
fn facets_full(pts: &[Vec<Q>], k: usize) -> Vec<(Vec<Q>, Q)> {
    let mut out: BTreeSet<(Vec<Q>, Q)> = BTreeSet::new();
    if k == 1 {
        let lo = pts.iter().map(|p| &p[0]).min().unwrap().clone();
        let hi = pts.iter().map(|p| &p[0]).max().unwrap().clone();
        out.insert((vec![Q::one()], hi));
        out.insert((vec![-Q::one()], -lo));
        return out.into_iter().collect();
    }
    if k == 2 {
        let h = hull_2d(pts);
        for i in 0..h.len() {
            let a = &h[i];
            let b = &h[(i + 1) % h.len()];
            // Counter-clockwise order puts the interior on the left.
            let normal = vec![&b[1] - &a[1], &a[0] - &b[0]];
            let normal = normalize_direction(&normal);
            let rhs = dot(&normal, a);
            out.insert((normal, rhs));
        }
        return out.into_iter().collect();
    }
    subsets(pts.len(), k, |idx| {
        let base = &pts[idx[0]];
        let rows: Vec<Vec<Q>> = idx[1..].iter().map(|&i| sub(&pts[i], base)).collect();
        let ns = nullspace(rows, k);
        if ns.len() != 1 {
            return;
        }
        let mut c = normalize_direction(&ns[0]);
        let mut d = dot(&c, base);
        let (mut above, mut below) = (false, false);
        for p in pts {
            let v = dot(&c, p);
            if v > d {
                above = true;
            } else if v < d {
                below = true;
            }
            if above && below {
                return;
            }
        }
        if above {
            c = c.iter().map(|x| -x).collect();
            d = -d;
        }
        out.insert((c, d));
    });
    out.into_iter().collect()
}

impl Polytope {
    /// Convex hull of a finite nonempty point set.
    pub fn hull(points: Vec<Vec<Q>>, open: bool) -> Result<Polytope> {
        let Some(first) = points.first() else {
            return Err(ConvexError::EmptyInput("polytope without vertices".into()));
        };
        let n = first.len();
        if points.iter().any(|p| p.len() != n) {
            return Err(ConvexError::InvalidPoint("mixed dimensions in vertex list".into()));
        }
        let mut pts: Vec<Vec<Q>> = points;
        pts.sort();
        pts.dedup();
        let origin = pts[0].clone();
        let diffs: Vec<Vec<Q>> = pts[1..].iter().map(|p| sub(p, &origin)).collect();
        let (basis, pivots) = rref(diffs, n);
        let dim = pivots.len();
        if open && dim < n {
            return Err(ConvexError::DegenerateBounds(
                "an open polytope must be full-dimensional".into(),
            ));
        }
        let eqs: Vec<(Vec<Q>, Q)> = nullspace(basis, n)
            .into_iter()
            .map(|a| {
                let a = normalize_direction(&a);
                let b = dot(&a, &origin);
                (a, b)
            })
            .collect();
        let project = |p: &Vec<Q>| -> Vec<Q> { pivots.iter().map(|&c| p[c].clone()).collect() };
        let (ineqs, vertices) = if dim == 0 {
            (Vec::new(), vec![origin.clone()])
        } else {
            let proj: Vec<Vec<Q>> = pts.iter().map(project).collect();
            let facets = facets_full(&proj, dim);
            let lift = |c: &Vec<Q>| {
                let mut a = vec![Q::zero(); n];
                for (j, &pc) in pivots.iter().enumerate() {
                    a[pc] = c[j].clone();
                }
                a
            };
            let ineqs: Vec<(Vec<Q>, Q)> = facets.iter().map(|(c, d)| (lift(c), d.clone())).collect();
            let vertices: Vec<Vec<Q>> = pts
                .iter()
                .zip(&proj)
                .filter(|(_, y)| {
                    let tight: Vec<Vec<Q>> =
                        facets.iter().filter(|(c, d)| dot(c, y) == *d).map(|(c, _)| c.clone()).collect();
                    rank(tight, dim) == dim
                })
                .map(|(p, _)| p.clone())
                .collect();
            (ineqs, vertices)
        };
        Ok(Polytope { vertices, open, dim, eqs, ineqs, bounds: None })
    }

    /// The axis-aligned box `[lo, hi]` (or its interior).
    pub fn boxed(lo: Vec<Q>, hi: Vec<Q>, open: bool) -> Result<Polytope> {
        let n = lo.len();
        if hi.len() != n || lo.iter().zip(&hi).any(|(a, b)| a >= b) {
            return Err(ConvexError::DegenerateBounds("box needs lo < hi in every coordinate".into()));
        }
        let mut vertices = Vec::with_capacity(1 << n.min(20));
        for mask in 0..(1usize << n) {
            vertices.push((0..n).map(|i| if mask >> i & 1 == 1 { hi[i].clone() } else { lo[i].clone() }).collect());
        }
        vertices.sort();
        let mut ineqs = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut a = vec![Q::zero(); n];
            a[i] = Q::one();
            ineqs.push((a.clone(), hi[i].clone()));
            a[i] = -Q::one();
            ineqs.push((a, -lo[i].clone()));
        }
        Ok(Polytope { vertices, open, dim: n, eqs: Vec::new(), ineqs, bounds: Some((lo, hi)) })
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn is_open(&self) -> bool {
        self.open
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[(Vec<Q>, Q)] {
        &self.ineqs
    }

    pub fn box_bounds(&self) -> Option<&(Vec<Q>, Vec<Q>)> {
        self.bounds.as_ref()
    }

    pub fn closure(&self) -> Polytope {
        Polytope { open: false, ..self.clone() }
    }

    /// The interior; `None` when the polytope is not full-dimensional.
    pub fn interior(&self) -> Option<Polytope> {
        (self.dim == self.ambient_dim()).then(|| Polytope { open: true, ..self.clone() })
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        if let Some((lo, hi)) = &self.bounds {
            return x.iter().zip(lo).zip(hi).all(|((v, l), h)| {
                if self.open {
                    l < v && v < h
                } else {
                    l <= v && v <= h
                }
            });
        }
        self.eqs.iter().all(|(a, b)| dot(a, x) == *b)
            && self.ineqs.iter().all(|(a, b)| {
                let v = dot(a, x);
                if self.open {
                    v < *b
                } else {
                    v <= *b
                }
            })
    }

    /// Parameters `t in [0,1]` with `p + t (q - p)` inside the polytope.
    pub fn segment_params(&self, p: &[Q], q: &[Q]) -> IntervalSet {
        let d = sub(q, p);
        let mut lo = Q::zero();
        let mut hi = Q::one();
        let (mut lo_closed, mut hi_closed) = (true, true);
        for (a, b) in &self.eqs {
            if dot(a, p) != *b || !dot(a, &d).is_zero() {
                // A segment meets a lower-dimensional hull in at most one point.
                let ad = dot(a, &d);
                if ad.is_zero() {
                    return IntervalSet::empty();
                }
                let t = (b - dot(a, p)) / ad;
                if t < Q::zero() || t > Q::one() {
                    return IntervalSet::empty();
                }
                let x = crate::linalg::lerp(p, q, &t);
                return if self.contains(&x) {
                    IntervalSet::from_interval(Interval::point(t))
                } else {
                    IntervalSet::empty()
                };
            }
        }
        let strict_closed = !self.open;
        for (a, b) in &self.ineqs {
            let ad = dot(a, &d);
            let slack = b - dot(a, p);
            if ad.is_zero() {
                if slack < Q::zero() || (self.open && slack.is_zero()) {
                    return IntervalSet::empty();
                }
                continue;
            }
            let t = &slack / &ad;
            if ad > Q::zero() {
                if t < hi {
                    hi = t;
                    hi_closed = strict_closed;
                } else if t == hi {
                    hi_closed = hi_closed && strict_closed;
                }
            } else if t > lo {
                lo = t;
                lo_closed = strict_closed;
            } else if t == lo {
                lo_closed = lo_closed && strict_closed;
            }
        }
        IntervalSet::from_interval(Interval::new(lo, hi, lo_closed, hi_closed))
    }

    /// Exact inclusion `self ⊆ other`.
    pub fn is_subset(&self, other: &Polytope) -> bool {
        if other.open && !self.open {
            self.vertices.iter().all(|v| other.contains(v))
        } else {
            let hull = other.closure();
            self.vertices.iter().all(|v| hull.contains(v))
        }
    }

    pub fn centroid(&self) -> Vec<Q> {
        let n = self.ambient_dim();
        let m = Q::from_integer(self.vertices.len().into());
        (0..n)
            .map(|i| self.vertices.iter().fold(Q::zero(), |acc, v| acc + &v[i]) / &m)
            .collect()
    }

    /// Vertex pairs whose joining segment is an edge of the polytope.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let m = self.vertices.len();
        if self.dim <= 1 {
            return if m == 2 { vec![(0, 1)] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let tight: Vec<Vec<Q>> = self
                    .ineqs
                    .iter()
                    .filter(|(a, b)| dot(a, &self.vertices[i]) == *b && dot(a, &self.vertices[j]) == *b)
                    .map(|(a, _)| a.clone())
                    .collect();
                if rank(tight, self.ambient_dim()) + 1 == self.dim {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Counter-clockwise vertex cycle of a two-dimensional polytope in the plane.
    pub fn polygon(&self) -> Vec<Vec<Q>> {
        hull_2d(&self.vertices)
    }

    pub fn diameter_sq(&self) -> Q {
        let mut best = Q::zero();
        for a in &self.vertices {
            for b in &self.vertices {
                let d = crate::linalg::norm2(&sub(a, b));
                if d > best {
                    best = d;
                }
            }
        }
        best
    }
}

/// Clips a closed convex polygon (counter-clockwise) to `a.x <= b`.
pub fn clip_polygon(poly: &[Vec<Q>], a: &[Q], b: &Q) -> Vec<Vec<Q>> {
    let mut out = Vec::new();
    let m = poly.len();
    for i in 0..m {
        let p = &poly[i];
        let q = &poly[(i + 1) % m];
        let fp = dot(a, p) - b;
        let fq = dot(a, q) - b;
        if fp <= Q::zero() {
            out.push(p.clone());
        }
        if (fp < Q::zero() && fq > Q::zero()) || (fp > Q::zero() && fq < Q::zero()) {
            let t = &fp / (&fp - &fq);
            out.push(crate::linalg::lerp(p, q, &t));
        }
    }
    out
}

/// Intersection of two closed polytopes in the plane, if nonempty.
pub fn intersect_2d(a: &Polytope, b: &Polytope) -> Option<Vec<Vec<Q>>> {
    let mut poly = a.polygon();
    if poly.len() < 3 {
        // Degenerate polygons: intersect through the point or segment directly.
        let pts = poly.clone();
        return match pts.len() {
            0 => None,
            1 => b.closure().contains(&pts[0]).then_some(pts),
            _ => {
                let ts = b.closure().segment_params(&pts[0], &pts[1]);
                ts.parts().first().map(|iv| {
                    vec![
                        crate::linalg::lerp(&pts[0], &pts[1], &iv.lo),
                        crate::linalg::lerp(&pts[0], &pts[1], &iv.hi),
                    ]
                })
            }
        };
    }
    for (n, d) in b.facets() {
        poly = clip_polygon(&poly, n, d);
        if poly.is_empty() {
            return None;
        }
    }
    for (n, d) in b.eqs.iter() {
        poly = clip_polygon(&poly, n, d);
        let neg: Vec<Q> = n.iter().map(|x| -x).collect();
        poly = clip_polygon(&poly, &neg, &-d.clone());
        if poly.is_empty() {
            return None;
        }
    }
    Some(poly)
}

/// Squared distance from `x` to the closed segment `[p, q]`.
pub fn point_segment_dist_sq(x: &[Q], p: &[Q], q: &[Q]) -> Q {
    let d = sub(q, p);
    let dd = crate::linalg::norm2(&d);
    let t = if dd.is_zero() {
        Q::zero()
    } else {
        let t = dot(&sub(x, p), &d) / &dd;
        rational::max(&Q::zero(), &rational::min(&Q::one(), &t))
    };
    let proj = crate::linalg::lerp(p, q, &t);
    crate::linalg::norm2(&sub(x, &proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn triangle_hull_drops_interior_points() {
        let p = Polytope::hull(vec![v(&[0, 0]), v(&[4, 0]), v(&[0, 4]), v(&[1, 1])], false).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.dim(), 2);
        assert!(p.contains(&v(&[1, 1])));
        assert!(p.contains(&v(&[2, 2])));
        assert!(!p.contains(&v(&[3, 3])));
    }

    #[test]
    fn segment_in_plane_has_equalities() {
        let p = Polytope::hull(vec![v(&[0, 0]), v(&[2, 2]), v(&[1, 1])], false).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.vertices().len(), 2);
        assert!(p.contains(&[ratio(1, 2), ratio(1, 2)]));
        assert!(!p.contains(&[ratio(1, 2), ratio(1, 3)]));
    }

    #[test]
    fn simplex_in_three_dimensions() {
        let p = Polytope::hull(vec![v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])], false)
            .unwrap();
        assert_eq!(p.facets().len(), 4);
        assert!(p.contains(&[ratio(1, 4), ratio(1, 4), ratio(1, 4)]));
        assert!(!p.contains(&[ratio(1, 2), ratio(1, 2), ratio(1, 2)]));
    }

    #[test]
    fn segment_params_clip_exactly() {
        let sq = Polytope::boxed(v(&[0, 0]), v(&[1, 1]), false).unwrap();
        let s = sq.segment_params(&v(&[-1, 0]), &v(&[3, 0]));
        assert_eq!(s.min(), Some(&ratio(1, 4)));
        assert_eq!(s.max(), Some(&ratio(1, 2)));
        let open = sq.interior().unwrap();
        let s = open.segment_params(&[ratio(-1, 1), ratio(1, 2)], &[int(3), ratio(1, 2)]);
        assert!(!s.contains(&ratio(1, 4)));
        assert!(s.contains(&ratio(1, 3)));
        let diag = Polytope::hull(vec![v(&[0, 0]), v(&[2, 2])], false).unwrap();
        assert!(diag.segment_params(&v(&[0, 2]), &v(&[2, 0])).contains(&ratio(1, 2)));
    }

    #[test]
    fn clipping_and_intersection() {
        let a = Polytope::boxed(v(&[0, 0]), v(&[2, 2]), false).unwrap();
        let b = Polytope::boxed(v(&[1, 1]), v(&[3, 3]), false).unwrap();
        let i = intersect_2d(&a, &b).unwrap();
        let h = Polytope::hull(i, false).unwrap();
        assert_eq!(h, Polytope::hull(vec![v(&[1, 1]), v(&[2, 1]), v(&[1, 2]), v(&[2, 2])], false).unwrap());
        let c = Polytope::boxed(v(&[5, 5]), v(&[6, 6]), false).unwrap();
        assert!(intersect_2d(&a, &c).is_none());
    }
}
