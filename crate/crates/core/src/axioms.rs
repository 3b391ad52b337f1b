//! Sampled verification of the convexity-space axioms.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::atlas::Atlas;
use crate::convexity::convexity_witness;
use crate::error::{ConvexError, Result};
use crate::graph::{GraphPoint, GraphRegion};
use crate::interval_set::{Interval, IntervalSet};
use crate::point::Point;
use crate::rational::{self, Q};
use crate::region::Region;
use crate::segment::{segment, split, Segment, SegmentRep};
use crate::space::SpaceModel;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseResult {
    pub clause: String,
    pub checked: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl ClauseResult {
    fn new(clause: &str) -> Self {
        ClauseResult { clause: clause.into(), ..Default::default() }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub tuples_checked: usize,
    pub pairs_skipped: usize,
    pub clauses: Vec<ClauseResult>,
}

impl AxiomReport {
    pub fn clause(&self, name: &str) -> Option<&ClauseResult> {
        self.clauses.iter().find(|c| c.clause == name)
    }
}

pub const CLAUSES: [&str; 9] = [
    "convex-segments", "cut-points", "convex-charts", "symmetry", "degeneracy", "split", "order", "implication", "proper-subsegment",
];

/// Removes one point from a region (exact).
fn puncture(space: &SpaceModel, r: &Region, z: &Point) -> Region {
    match (r, z) {
        (Region::Intervals(s), Point::Scalar(t)) => {
            let (lo, hi) = (s.min().cloned().unwrap_or_else(rational::zero), s.max().cloned().unwrap_or_else(rational::zero));
            let lo = lo - rational::one();
            let hi = hi + rational::one();
            let mask = IntervalSet::from_parts(vec![
                Interval::new(lo, t.clone(), true, false),
                Interval::new(t.clone(), hi, false, true),
            ]);
            Region::Intervals(s.intersection(&mask))
        }
        (Region::Graph(g), Point::Graph(p)) => {
            let mut out = g.clone();
            match p {
                GraphPoint::Vertex { vertex } => {
                    out.vertices.remove(vertex);
                }
                GraphPoint::Edge { edge, t } => {
                    if let Some(set) = out.edges.remove(edge) {
                        let mask = IntervalSet::from_parts(vec![
                            Interval::open(rational::zero(), t.clone()),
                            Interval::open(t.clone(), rational::one()),
                        ]);
                        out.add_edge_set(*edge, set.intersection(&mask));
                    }
                }
            }
            let _ = space;
            Region::Graph(out)
        }
        _ => r.clone(),
    }
}

/// Whether removing `z` separates `x` from `y` inside the segment.
fn separates(space: &SpaceModel, seg: &Segment, z: &Point) -> bool {
    match &seg.rep {
        SegmentRep::Straight => {
            // In parameter space the segment is [0,1] and z an interior parameter.
            let t = seg.position(space, z).expect("z on segment");
            t > rational::zero() && t < rational::one()
        }
        _ => {
            let punctured = puncture(space, &seg.region(space), z);
            match (&punctured, space) {
                (Region::Intervals(s), _) => {
                    let (Point::Scalar(x), Point::Scalar(y)) = (&seg.x, &seg.y) else { return false };
                    let comp = |v: &Q| s.parts().iter().position(|iv| iv.contains(v));
                    comp(x) != comp(y)
                }
                (Region::Graph(g), sp) => {
                    let graph = sp.expect_graph();
                    let comps: Vec<GraphRegion> = g.components(graph);
                    let find = |p: &Point| comps.iter().position(|c| c.contains(p.graph().unwrap()));
                    find(&seg.x) != find(&seg.y)
                }
                _ => false,
            }
        }
    }
}

fn singleton(space: &SpaceModel, x: &Point) -> Region {
    match x {
        Point::Scalar(q) => Region::Intervals(IntervalSet::from_interval(Interval::point(q.clone()))),
        Point::Graph(g) => {
            let mut r = GraphRegion::default();
            r.insert_point(g);
            let _ = space;
            Region::Graph(r)
        }
        Point::Vector(v) => Region::Polytopes(vec![crate::polytope::Polytope::hull(vec![v.clone()], false).unwrap()]),
    }
}

/// Points on the segment used as `z`/`t` probes: fixed fractions plus any
/// sample points lying on it.
fn probes(space: &SpaceModel, seg: &Segment, samples: &[Point]) -> Vec<Point> {
    let ext = seg.extent(space);
    let mut out: Vec<Point> = [rational::zero(), rational::ratio(1, 3), rational::half(), rational::ratio(3, 4), rational::one()]
        .iter()
        .map(|f| seg.point_at(space, &(&ext * f)))
        .collect();
    out.extend(samples.iter().filter(|p| seg.contains(space, p)).take(4).cloned());
    out.sort();
    out.dedup();
    out
}

fn regions_equal(space: &SpaceModel, a: &Region, b: &Region) -> bool {
    match (a, b) {
        (Region::Polytopes(_), Region::Polytopes(_)) => a.is_subset(b) && b.is_subset(a),
        _ => {
            let _ = space;
            a == b
        }
    }
}

/// Checks the axioms on all sample pairs (pairs sharing a chart in graph
/// models with cycles).
pub fn check_axioms(space: &SpaceModel, atlas: &Atlas, samples: &[Point]) -> Result<AxiomReport> {
    for p in samples {
        space.validate(p)?;
    }
    let mut c: Vec<ClauseResult> = CLAUSES.iter().map(|n| ClauseResult::new(n)).collect();
    let (mut tuples, mut skipped) = (0usize, 0usize);
    let local_only = matches!(space, SpaceModel::Polyhedral { .. });

    // Charts: certificates, covering, and shrinking.
    for ch in &atlas.charts {
        c[2].record(ch.certified, || format!("chart {} at {} is not convex", ch.id, ch.center));
    }
    for p in samples {
        let found = atlas.charts_containing(p);
        let Some(&id) = found.iter().find(|&&i| atlas.chart(i).certified) else {
            c[2].record(false, || format!("no convex chart contains {p}"));
            continue;
        };
        let shrunk = shrink_around(space, atlas, id, p)?;
        let ok = shrunk.contains(p) && convexity_witness(space, &shrunk)?.is_none();
        c[2].record(ok, || format!("chart {id} shrunk around {p} is not convex"));
    }

    for (i, x) in samples.iter().enumerate() {
        // Degeneracy.
        let sxx = segment(space, x, x)?;
        c[4].record(sxx.region(space) == singleton(space, x), || format!("C({x},{x}) is not a singleton"));
        for y in &samples[i + 1..] {
            if local_only && atlas.common_chart(x, y).is_none() {
                skipped += 1;
                continue;
            }
            let sxy = match segment(space, x, y) {
                Ok(s) => s,
                Err(ConvexError::NonUniqueGeodesic { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let syx = segment(space, y, x)?;
            let rxy = sxy.region(space);
            c[3].record(regions_equal(space, &rxy, &syx.region(space)), || format!("C({x},{y}) != C({y},{x})"));
            c[0].record(convexity_witness(space, &rxy)?.is_none(), || format!("C({x},{y}) is not convex"));
            let zs = probes(space, &sxy, samples);
            for z in &zs {
                let (l, r) = split(space, &sxy, z)?;
                let (rl, rr) = (l.region(space), r.region(space));
                let union_ok = regions_equal(space, &rl.union(&rr)?, &rxy);
                let meet_ok = match rl.intersection(&rr) {
                    Ok(m) => regions_equal(space, &m, &singleton(space, z)),
                    Err(_) => true,
                };
                c[5].record(union_ok && meet_ok, || format!("split of C({x},{y}) at {z}"));
                if z != x && z != y {
                    c[1].record(separates(space, &sxy, z), || format!("{z} can be dropped from C({x},{y})"));
                }
                if z != y {
                    let sxz = segment(space, x, z)?;
                    c[8].record(!sxz.contains(space, y), || format!("C({x},{z}) reaches {y}"));
                }
                for t in &zs {
                    tuples += 1;
                    let ord = crate::segment::segment_order(space, &sxy, z, t)?;
                    let le = ord != Ordering::Greater;
                    let sxt = segment(space, x, t)?;
                    let szy = segment(space, z, y)?;
                    let via_x = sxt.contains(space, z);
                    let via_y = szy.contains(space, t);
                    c[6].record(le == via_x && le == via_y, || format!("order of {z},{t} on C({x},{y})"));
                    if via_x && z != t {
                        let sxz = segment(space, x, z)?;
                        c[7].record(!sxz.contains(space, t), || format!("{t} in C({x},{z})"));
                    }
                }
            }
        }
    }
    let passed = c.iter().all(ClauseResult::passed);
    Ok(AxiomReport { passed, tuples_checked: tuples, pairs_skipped: skipped, clauses: c })
}

/// A chart intersected with a smaller convex open neighborhood of `p`.
pub fn shrink_around(space: &SpaceModel, atlas: &Atlas, id: usize, p: &Point) -> Result<Region> {
    let chart = &atlas.chart(id).region;
    let r = &atlas.spacing / rational::int(4);
    let nbhd = match (space, p) {
        (SpaceModel::Interval { .. }, Point::Scalar(x)) => {
            Region::Intervals(IntervalSet::from_interval(Interval::open(x - &r, x + &r)))
        }
        (SpaceModel::Euclidean { .. }, Point::Vector(v)) => {
            let lo = v.iter().map(|x| x - &r).collect();
            let hi = v.iter().map(|x| x + &r).collect();
            Region::Polytopes(vec![crate::polytope::Polytope::boxed(lo, hi, true)?])
        }
        (_, Point::Graph(g)) => Region::Graph(space.expect_graph().ball(g, &r)),
        _ => return Err(ConvexError::ModelMismatch("point outside the model".into())),
    };
    match chart.intersection(&nbhd) {
        Ok(x) => Ok(x),
        Err(ConvexError::Unsupported(_)) => Ok(nbhd),
        Err(e) => Err(e),
    }
}
