//! Atlases of convex open charts.
//!
//! A chart region is read relative to the space: a Euclidean box chart stands
//! for its intersection with the bounding polytope.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::convexity::convexity_witness;
use crate::error::{ConvexError, Result};
use crate::graph::GraphPoint;
use crate::interval_set::{Interval, IntervalSet};
use crate::point::Point;
use crate::polytope::Polytope;
use crate::rational::{self, Q};
use crate::region::Region;
use crate::space::SpaceModel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasConfig {
    /// Chart radius.
    #[serde(with = "rational::serde_q")]
    pub granularity: Q,
    #[serde(with = "rational::serde_q")]
    pub overlap_factor: Q,
    /// Box to cover in an unbounded Euclidean space.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extent: Option<(Vec<String>, Vec<String>)>,
}

impl Default for AtlasConfig {
    fn default() -> Self {
        AtlasConfig { granularity: rational::ratio(1, 4), overlap_factor: rational::int(2), extent: None }
    }
}

impl AtlasConfig {
    pub fn with_granularity(g: Q) -> Self {
        AtlasConfig { granularity: g, ..Default::default() }
    }

    pub fn with_extent(mut self, lo: &[Q], hi: &[Q]) -> Self {
        self.extent = Some((lo.iter().map(rational::render).collect(), hi.iter().map(rational::render).collect()));
        self
    }

    fn extent_q(&self) -> Result<Option<(Vec<Q>, Vec<Q>)>> {
        match &self.extent {
            None => Ok(None),
            Some((lo, hi)) => Ok(Some((
                lo.iter().map(|s| rational::parse(s)).collect::<Result<_>>()?,
                hi.iter().map(|s| rational::parse(s)).collect::<Result<_>>()?,
            ))),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.granularity <= Q::zero() {
            return Err(ConvexError::CannotCover("granularity must be positive".into()));
        }
        if self.overlap_factor <= Q::one() {
            return Err(ConvexError::CannotCover("overlap factor must exceed 1".into()));
        }
        Ok(())
    }

    /// Spacing of chart centers.
    pub fn spacing(&self) -> Q {
        rational::int(2) * &self.granularity / &self.overlap_factor
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    pub id: usize,
    pub center: Point,
    pub region: Region,
    /// Result of the convexity check run when the atlas was assembled.
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Atlas {
    pub charts: Vec<Chart>,
    /// Nerve adjacency: charts whose regions meet inside the space.
    pub nerve: Vec<Vec<usize>>,
    #[serde(with = "rational::serde_q")]
    pub spacing: Q,
    #[serde(skip)]
    lattice: Option<Lattice>,
}

#[derive(Clone, Debug)]
struct Lattice {
    axes: Vec<Vec<Q>>,
    radius: Q,
    index: BTreeMap<Vec<usize>, usize>,
}

fn lattice_axis(lo: &Q, hi: &Q, s: &Q) -> Vec<Q> {
    let mut out = Vec::new();
    let mut c = lo.clone();
    while c < *hi {
        out.push(c.clone());
        c += s;
    }
    out.push(hi.clone());
    out
}

impl Atlas {
    /// Builds an atlas from charts, recomputing every certificate.
    pub fn load(space: &SpaceModel, charts: Vec<(Point, Region)>, spacing: Q) -> Result<Atlas> {
        let charts = charts
            .into_iter()
            .enumerate()
            .map(|(id, (center, region))| {
                let certified = convexity_witness(space, &region)?.is_none();
                Ok(Chart { id, center, region, certified })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut atlas = Atlas { charts, nerve: Vec::new(), spacing, lattice: None };
        atlas.nerve = atlas.compute_nerve(space);
        Ok(atlas)
    }

    /// Charts of a lattice atlas that meet the bounds of `space`, renumbered in order.
    pub fn restricted(&self, space: &SpaceModel) -> Result<Atlas> {
        let (Some(lat), SpaceModel::Euclidean { bounds: Some(b), .. }) = (&self.lattice, space) else {
            return Err(ConvexError::Unsupported(
                "restriction needs a lattice atlas and a bounded Euclidean space".into(),
            ));
        };
        let mut charts: Vec<Chart> = Vec::new();
        let mut index = BTreeMap::new();
        for (idx, &i) in &lat.index {
            let c = &self.charts[i];
            let Region::Polytopes(ps) = &c.region else { continue };
            if box_meets(&ps[0], b) {
                index.insert(idx.clone(), charts.len());
                charts.push(Chart { id: charts.len(), ..c.clone() });
            }
        }
        let lattice = Lattice { axes: lat.axes.clone(), radius: lat.radius.clone(), index };
        let mut atlas = Atlas { charts, nerve: Vec::new(), spacing: self.spacing.clone(), lattice: Some(lattice) };
        atlas.nerve = atlas.compute_nerve(space);
        Ok(atlas)
    }

    pub fn len(&self) -> usize {
        self.charts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.charts.is_empty()
    }

    pub fn chart(&self, id: usize) -> &Chart {
        &self.charts[id]
    }

    pub fn chart_contains(&self, id: usize, p: &Point) -> bool {
        self.charts[id].region.contains(p)
    }

    pub fn charts_containing(&self, p: &Point) -> Vec<usize> {
        if let (Some(lat), Point::Vector(v)) = (&self.lattice, p) {
            let mut ranges: Vec<Vec<usize>> = Vec::with_capacity(v.len());
            for (axis, x) in lat.axes.iter().zip(v) {
                let ks: Vec<usize> = axis
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| rational::abs(&(x - *c)) < lat.radius)
                    .map(|(k, _)| k)
                    .collect();
                ranges.push(ks);
            }
            let mut out = Vec::new();
            for_each_product(&ranges, |idx| {
                if let Some(&id) = lat.index.get(idx) {
                    out.push(id);
                }
            });
            out.sort_unstable();
            return out;
        }
        (0..self.charts.len()).filter(|&i| self.chart_contains(i, p)).collect()
    }

    /// Lowest-id chart containing both points.
    pub fn common_chart(&self, p: &Point, q: &Point) -> Option<usize> {
        self.charts_containing(p).into_iter().find(|&i| self.chart_contains(i, q))
    }

    fn compute_nerve(&self, space: &SpaceModel) -> Vec<Vec<usize>> {
        let n = self.charts.len();
        let mut nerve = vec![Vec::new(); n];
        if let Some(lat) = &self.lattice {
            for (idx, &i) in &lat.index {
                let ranges: Vec<Vec<usize>> = idx
                    .iter()
                    .zip(&lat.axes)
                    .map(|(&k, axis)| {
                        (0..axis.len())
                            .filter(|&m| rational::abs(&(&axis[m] - &axis[k])) < rational::int(2) * &lat.radius)
                            .collect()
                    })
                    .collect();
                for_each_product(&ranges, |jdx| {
                    if let Some(&j) = lat.index.get(jdx) {
                        if j != i && self.overlap_point(space, i, j).is_some() {
                            nerve[i].push(j);
                        }
                    }
                });
            }
            for adj in &mut nerve {
                adj.sort_unstable();
            }
            return nerve;
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.overlap_point(space, i, j).is_some() {
                    nerve[i].push(j);
                    nerve[j].push(i);
                }
            }
        }
        nerve
    }

    /// Deterministic point of `U_i ∩ U_j`: the lexicographically least point of
    /// the quarter-spacing lattice inside the overlap, with model-specific fallbacks.
    pub fn overlap_point(&self, space: &SpaceModel, i: usize, j: usize) -> Option<Point> {
        let h = &self.spacing / rational::int(4);
        let (a, b) = (&self.charts[i].region, &self.charts[j].region);
        match (space, a, b) {
            (SpaceModel::Interval { a: lo, .. }, Region::Intervals(x), Region::Intervals(y)) => {
                let both = x.intersection(y);
                let iv = both.parts().first()?.clone();
                let k = ((&iv.lo - lo) / &h).floor();
                let mut t = lo + &k * &h;
                while t <= iv.hi {
                    if iv.contains(&t) {
                        return Some(Point::Scalar(t));
                    }
                    t += &h;
                }
                Some(Point::Scalar(iv.representative()))
            }
            (_, Region::Graph(x), Region::Graph(y)) => {
                let both = x.intersection(y);
                if let Some(v) = both.vertices.iter().next() {
                    return Some(Point::vertex(*v));
                }
                let (e, set) = both.edges.iter().next()?;
                let t = set.parts()[0].representative();
                Some(Point::Graph(GraphPoint::Edge { edge: *e, t }))
            }
            (SpaceModel::Euclidean { bounds, .. }, Region::Polytopes(x), Region::Polytopes(y)) => {
                let (alo, ahi) = x[0].box_bounds()?;
                let (blo, bhi) = y[0].box_bounds()?;
                let lo: Vec<Q> = alo.iter().zip(blo).map(|(p, q)| rational::max(p, q)).collect();
                let hi: Vec<Q> = ahi.iter().zip(bhi).map(|(p, q)| rational::min(p, q)).collect();
                if lo.iter().zip(&hi).any(|(p, q)| p >= q) {
                    return None;
                }
                if let Some(b) = bounds {
                    if !box_meets(&Polytope::boxed(lo.clone(), hi.clone(), true).ok()?, b) {
                        return None;
                    }
                }
                let origin = &self.lattice.as_ref()?.axes;
                let axes: Vec<Vec<Q>> = lo
                    .iter()
                    .zip(&hi)
                    .zip(origin)
                    .map(|((l, u), ax)| {
                        let base = &ax[0];
                        let k = ((l - base) / &h).floor() + Q::one();
                        let mut t = base + k * &h;
                        let mut out = Vec::new();
                        while t < *u {
                            if t > *l {
                                out.push(t.clone());
                            }
                            t += &h;
                        }
                        out
                    })
                    .collect();
                let inside = |p: &[Q]| bounds.as_ref().map_or(true, |b| b.contains(p));
                let mut found = None;
                let idx_ranges: Vec<Vec<usize>> = axes.iter().map(|a| (0..a.len()).collect()).collect();
                for_each_product_until(&idx_ranges, |idx| {
                    let p: Vec<Q> = idx.iter().zip(&axes).map(|(&k, a)| a[k].clone()).collect();
                    if inside(&p) {
                        found = Some(p);
                        true
                    } else {
                        false
                    }
                });
                if found.is_none() {
                    let mid: Vec<Q> = lo.iter().zip(&hi).map(|(p, q)| (p + q) / rational::int(2)).collect();
                    if inside(&mid) {
                        found = Some(mid);
                    } else if let Some(b) = bounds {
                        // Any vertex of the bounds strictly inside the overlap box.
                        found = b
                            .vertices()
                            .iter()
                            .find(|v| v.iter().zip(&lo).zip(&hi).all(|((x, l), u)| l < x && x < u))
                            .cloned();
                    }
                }
                found.map(Point::Vector)
            }
            _ => None,
        }
    }

    /// First sample point not covered by any chart.
    pub fn uncovered<'a>(&self, samples: &'a [Point]) -> Option<&'a Point> {
        samples.iter().find(|p| self.charts_containing(p).is_empty())
    }
}

fn for_each_product(ranges: &[Vec<usize>], mut f: impl FnMut(&[usize])) {
    for_each_product_until(ranges, |idx| {
        f(idx);
        false
    });
}

/// Visits index tuples in lexicographic order until `f` returns true.
fn for_each_product_until(ranges: &[Vec<usize>], mut f: impl FnMut(&[usize]) -> bool) {
    if ranges.iter().any(|r| r.is_empty()) {
        return;
    }
    let mut pos = vec![0usize; ranges.len()];
    let mut idx: Vec<usize> = ranges.iter().map(|r| r[0]).collect();
    loop {
        if f(&idx) {
            return;
        }
        let mut d = ranges.len();
        loop {
            if d == 0 {
                return;
            }
            d -= 1;
            pos[d] += 1;
            if pos[d] < ranges[d].len() {
                idx[d] = ranges[d][pos[d]];
                break;
            }
            pos[d] = 0;
            idx[d] = ranges[d][0];
        }
    }
}

/// Whether the open box meets the closed polytope.
fn box_meets(bx: &Polytope, p: &Polytope) -> bool {
    let closed_box = bx.closure();
    if p.vertices().iter().any(|v| bx.contains(v)) || bx.vertices().iter().any(|v| p.contains(v)) {
        return true;
    }
    if p.ambient_dim() > 3 {
        return true;
    }
    let interior_hit = |poly: &Polytope, a: &[Q], b: &[Q]| {
        poly.segment_params(a, b).parts().iter().any(|iv| iv.lo < iv.hi)
    };
    let pv = p.vertices();
    for (i, j) in p.edges() {
        if interior_hit(&closed_box, &pv[i], &pv[j]) {
            let s = closed_box.segment_params(&pv[i], &pv[j]);
            let iv = &s.parts()[0];
            let mid = crate::linalg::lerp(&pv[i], &pv[j], &iv.representative());
            if bx.contains(&mid) {
                return true;
            }
        }
    }
    let bv = bx.vertices();
    for (i, j) in bx.edges() {
        let s = p.segment_params(&bv[i], &bv[j]);
        if let Some(iv) = s.parts().first() {
            let mid = crate::linalg::lerp(&bv[i], &bv[j], &iv.representative());
            if bx.contains(&mid) {
                return true;
            }
        }
    }
    false
}

/// Covers the space with convex open charts of radius `cfg.granularity`.
pub fn default_atlas(space: &SpaceModel, cfg: &AtlasConfig) -> Result<Atlas> {
    cfg.validate()?;
    let r = cfg.granularity.clone();
    let s = cfg.spacing();
    match space {
        SpaceModel::Interval { a, b } => {
            let charts = lattice_axis(a, b, &s)
                .into_iter()
                .map(|c| {
                    let lo = rational::max(&(&c - &r), a);
                    let hi = rational::min(&(&c + &r), b);
                    let iv = Interval::new(lo.clone(), hi.clone(), lo == *a, hi == *b);
                    (Point::Scalar(c), Region::Intervals(IntervalSet::from_interval(iv)))
                })
                .collect();
            Atlas::load(space, charts, s)
        }
        SpaceModel::Tree(g) | SpaceModel::Polyhedral { graph: g, .. } => {
            let mut centers: Vec<GraphPoint> = (0..g.vertex_count()).map(GraphPoint::vertex).collect();
            for (i, e) in g.edges().iter().enumerate() {
                let mut k = 1;
                while rational::int(k) * &s < e.length {
                    centers.push(GraphPoint::Edge { edge: i, t: rational::int(k) * &s / &e.length });
                    k += 1;
                }
            }
            centers.sort();
            let charts: Vec<(Point, Region)> =
                centers.into_iter().map(|c| {
                    let ball = g.ball(&c, &r);
                    (Point::Graph(c), Region::Graph(ball))
                }).collect();
            let atlas = Atlas::load(space, charts, s)?;
            if let Some(bad) = atlas.charts.iter().find(|c| !c.certified) {
                let witness = convexity_witness(space, &bad.region)?
                    .map(|(x, y)| format!("segment from {x} to {y} leaves the chart"))
                    .unwrap_or_default();
                return Err(ConvexError::CannotCover(format!(
                    "ball of radius {} at {} is not convex: {witness}",
                    rational::render(&r),
                    bad.center
                )));
            }
            Ok(atlas)
        }
        SpaceModel::Euclidean { n, bounds } => {
            let (lo, hi) = match (cfg.extent_q()?, bounds) {
                (Some(e), _) => e,
                (None, Some(b)) => {
                    let lo = (0..*n).map(|i| b.vertices().iter().map(|v| &v[i]).min().unwrap().clone()).collect();
                    let hi = (0..*n).map(|i| b.vertices().iter().map(|v| &v[i]).max().unwrap().clone()).collect();
                    (lo, hi)
                }
                (None, None) => {
                    return Err(ConvexError::CannotCover(
                        "an unbounded Euclidean space needs an explicit extent".into(),
                    ))
                }
            };
            if lo.len() != *n || hi.len() != *n {
                return Err(ConvexError::CannotCover("extent has the wrong dimension".into()));
            }
            let axes: Vec<Vec<Q>> = lo.iter().zip(&hi).map(|(l, h)| lattice_axis(l, h, &s)).collect();
            let ranges: Vec<Vec<usize>> = axes.iter().map(|a| (0..a.len()).collect()).collect();
            let mut charts = Vec::new();
            let mut index = BTreeMap::new();
            let mut failure = None;
            for_each_product(&ranges, |idx| {
                if failure.is_some() {
                    return;
                }
                let c: Vec<Q> = idx.iter().zip(&axes).map(|(&k, a)| a[k].clone()).collect();
                let blo: Vec<Q> = c.iter().map(|x| x - &r).collect();
                let bhi: Vec<Q> = c.iter().map(|x| x + &r).collect();
                match Polytope::boxed(blo, bhi, true) {
                    Ok(bx) => {
                        if bounds.as_ref().map_or(true, |b| box_meets(&bx, b)) {
                            index.insert(idx.to_vec(), charts.len());
                            charts.push(Chart {
                                id: charts.len(),
                                center: Point::Vector(c),
                                region: Region::Polytopes(vec![bx]),
                                certified: true,
                            });
                        }
                    }
                    Err(e) => failure = Some(e),
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
            let mut atlas =
                Atlas { charts, nerve: Vec::new(), spacing: s, lattice: Some(Lattice { axes, radius: r, index }) };
            atlas.nerve = atlas.compute_nerve(space);
            Ok(atlas)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::rational::{int, ratio};

    #[test]
    fn unit_interval_quarter_charts() {
        let sp = models::make_interval(int(0), int(1)).unwrap();
        let at = default_atlas(&sp, &AtlasConfig::default()).unwrap();
        assert_eq!(at.len(), 5);
        for k in 0..=20 {
            assert!(!at.charts_containing(&Point::Scalar(ratio(k, 20))).is_empty());
        }
        assert!(at.charts.iter().all(|c| c.certified));
        assert_eq!(at.nerve[0], vec![1]);
    }

    #[test]
    fn triangle_large_balls_cannot_cover() {
        let sp = models::triangle_boundary(0).unwrap();
        let err = default_atlas(&sp, &AtlasConfig::with_granularity(ratio(3, 2))).unwrap_err();
        assert!(matches!(err, ConvexError::CannotCover(_)));
        assert!(default_atlas(&sp, &AtlasConfig::with_granularity(ratio(3, 4))).is_ok());
    }

    #[test]
    fn euclidean_needs_extent() {
        let sp = models::make_euclidean(2, None).unwrap();
        assert!(default_atlas(&sp, &AtlasConfig::default()).is_err());
        let cfg = AtlasConfig::default().with_extent(&[int(0), int(0)], &[int(1), int(1)]);
        let at = default_atlas(&sp, &cfg).unwrap();
        assert_eq!(at.len(), 25);
        let p = Point::Vector(vec![ratio(1, 3), ratio(2, 3)]);
        let q = Point::Vector(vec![ratio(1, 2), ratio(1, 2)]);
        assert!(at.common_chart(&p, &q).is_some());
    }

    #[test]
    fn simplex_atlas_drops_far_boxes() {
        let sp = models::simplex(2).unwrap();
        let at = default_atlas(&sp, &AtlasConfig::default()).unwrap();
        assert!(at.len() < 25);
        assert!(at.charts_containing(&Point::Vector(vec![int(1), int(0)])).len() > 0);
        let rep = at.overlap_point(&sp, 0, at.nerve[0][0]).unwrap();
        assert!(sp.validate(&rep).is_ok());
    }
}
