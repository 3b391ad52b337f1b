use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::atlas::Atlas;
use crate::error::{ConvexError, Result};
use crate::graph::{GraphEdge, GraphPoint, GraphRegion};
use crate::interval_set::{Interval, IntervalSet};
use crate::models;
use crate::point::Point;
use crate::polytope::Polytope;
use crate::rational::{self, Q};
use crate::region::Region;
use crate::segment::{segment, Segment, SegmentRep};
use crate::space::SpaceModel;

use super::cells::{
    full_dimensional, globally_injective_full, image_corners, image_is_convex, image_region, in_open_face, injective_on,
    whole_image_convex_full,
};
use super::sampled::SampledMap;

/// A domain region mapped injectively onto a convex set. `chart` is the target
/// chart holding the image; the global lift has none because its image is
/// convex in the target itself.
#[derive(Clone, Debug, Serialize)]
pub struct Lift {
    pub vertices: Vec<usize>,
    pub chart: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosednessRecord {
    /// Always "sampled-image": a finite stand-in for topological closedness.
    pub surrogate: String,
    pub open_vertices_checked: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberEntry {
    pub point: Point,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaleCertificate {
    pub global: bool,
    pub chart_lifts: Vec<Lift>,
    pub closedness: ClosednessRecord,
    pub lift_pairs_checked: usize,
    /// Lift pairs on whose union the map is not injective; each is vertex-disjoint.
    pub non_injective_pairs: Vec<(usize, usize)>,
    pub fiber_table: Vec<FiberEntry>,
    pub max_fiber: usize,
}

fn not_etale(clause: &str, witness: String) -> ConvexError {
    ConvexError::NotEtale { clause: clause.into(), witness }
}

/// Limit points the domain lacks must already be attained, or the image is not closed.
fn closedness(e: &SampledMap) -> Result<ClosednessRecord> {
    let present: BTreeSet<&Point> = (0..e.vertex_count())
        .filter(|v| !e.open_vertices().contains(v))
        .map(|v| e.value(v))
        .collect();
    for &v in e.open_vertices() {
        if !present.contains(e.value(v)) {
            return Err(not_etale("closed", format!("limit image {} of vertex {v} is not attained", e.value(v))));
        }
    }
    Ok(ClosednessRecord {
        surrogate: "sampled-image".into(),
        open_vertices_checked: e.open_vertices().len(),
        passed: true,
    })
}

fn all_cells(e: &SampledMap) -> Vec<&[usize]> {
    e.cells().iter().map(Vec::as_slice).collect()
}

/// Injective with convex image as a whole.
fn is_global(e: &SampledMap) -> Result<bool> {
    if e.vertex_count() == 1 {
        return Ok(true);
    }
    let cells = all_cells(e);
    if full_dimensional(e, &cells) {
        return Ok(globally_injective_full(e)? && whole_image_convex_full(e)?);
    }
    if cells.len() > 200 || cells.iter().any(|c| c.len() > 2) {
        return Ok(false);
    }
    Ok(injective_on(e, &cells)? && image_is_convex(e, &cells)?)
}

/// Certifies that `e` is étale over the atlas of its target.
pub fn verify_etale(atlas: &Atlas, e: &SampledMap) -> Result<EtaleCertificate> {
    if !e.is_connected() {
        return Err(ConvexError::NotConnected);
    }
    let closedness = closedness(e)?;
    if is_global(e)? {
        let fiber_table =
            e.values().iter().map(|p| FiberEntry { point: p.clone(), size: 1 }).collect::<BTreeSet<_>>();
        return Ok(EtaleCertificate {
            global: true,
            chart_lifts: vec![Lift { vertices: (0..e.vertex_count()).collect(), chart: None }],
            closedness,
            lift_pairs_checked: 0,
            non_injective_pairs: Vec::new(),
            fiber_table: fiber_table.into_iter().collect(),
            max_fiber: 1,
        });
    }
    let mut lifts = Vec::new();
    let mut regions = Vec::new();
    for x in 0..e.vertex_count() {
        let star = e.star(x);
        if !injective_on(e, &star)? {
            return Err(not_etale("chart lift", format!("not injective on the star of vertex {x}")));
        }
        if !image_is_convex(e, &star)? {
            return Err(not_etale("chart lift", format!("star image of vertex {x} is not convex")));
        }
        let region = image_region(e, &star)?;
        let chart = atlas
            .charts_containing(e.value(x))
            .into_iter()
            .find(|&c| region.is_subset(&atlas.chart(c).region))
            .ok_or_else(|| not_etale("chart lift", format!("star image of vertex {x} fits no chart")))?;
        lifts.push(Lift { vertices: e.star_vertices(x), chart: Some(chart) });
        regions.push(region);
    }
    let mut checked = 0;
    let mut bad_pairs = Vec::new();
    for i in 0..lifts.len() {
        for j in i + 1..lifts.len() {
            checked += 1;
            if regions[i].intersection(&regions[j])?.is_empty() {
                continue;
            }
            let mut cells = e.star(i);
            cells.extend(e.star(j).into_iter().filter(|c| !c.contains(&i)));
            if injective_on(e, &cells)? {
                continue;
            }
            let (a, b) = (&lifts[i].vertices, &lifts[j].vertices);
            if a.iter().any(|v| b.binary_search(v).is_ok()) {
                return Err(not_etale("disjointness", format!("stars of {i} and {j} overlap but fold together")));
            }
            bad_pairs.push((i, j));
        }
    }
    let fiber_table = fiber_table(e)?;
    let max_fiber = fiber_table.iter().map(|f| f.size).max().unwrap_or(0);
    Ok(EtaleCertificate {
        global: false,
        chart_lifts: lifts,
        closedness,
        lift_pairs_checked: checked,
        non_injective_pairs: bad_pairs,
        fiber_table,
        max_fiber,
    })
}

impl PartialOrd for FiberEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FiberEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.point, self.size).cmp(&(&other.point, other.size))
    }
}
impl PartialEq for FiberEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}
impl Eq for FiberEntry {}

/// Preimage counts over vertex images (and target vertices for graph targets):
/// a point is hit once per vertex landing on it and once per open face through it.
fn fiber_table(e: &SampledMap) -> Result<Vec<FiberEntry>> {
    let mut points: BTreeSet<Point> = e.values().iter().cloned().collect();
    if let Some(g) = e.target.graph() {
        points.extend((0..g.vertex_count()).map(Point::vertex));
    }
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in e.cells() {
        for mask in 1u32..(1 << c.len()) {
            if mask.count_ones() >= 2 {
                faces.insert((0..c.len()).filter(|i| mask >> i & 1 == 1).map(|i| c[i]).collect());
            }
        }
    }
    let mut out = Vec::new();
    for p in points {
        let mut size = e.values().iter().filter(|v| **v == p).count();
        for f in &faces {
            if in_open_face(e, f, &p)? {
                size += 1;
            }
        }
        if size > 0 {
            out.push(FiberEntry { point: p, size });
        }
    }
    Ok(out)
}

/// The domain carried as a space of its own, with the atlas of chart lifts.
#[derive(Clone, Debug)]
pub struct LiftedStructure {
    pub space: SpaceModel,
    pub atlas: Atlas,
    /// Lifted position of each domain vertex.
    pub points: Vec<Point>,
    /// Target chart each lifted chart sits over.
    pub chart_over: Vec<usize>,
    /// Image segment of each lifted edge (graph lifts only).
    edge_images: Vec<Segment>,
    target: SpaceModel,
}

impl LiftedStructure {
    /// Pushes a lifted point down to the target.
    pub fn push_down(&self, p: &Point) -> Result<Point> {
        match (&self.space, p) {
            (SpaceModel::Euclidean { .. }, Point::Vector(_)) => Ok(p.clone()),
            (_, Point::Graph(GraphPoint::Vertex { vertex })) => Ok(self.points_down(*vertex)),
            (_, Point::Graph(GraphPoint::Edge { edge, t })) => {
                let seg = &self.edge_images[*edge];
                Ok(seg.point_at(&self.target, &(seg.extent(&self.target) * t)))
            }
            _ => Err(ConvexError::ModelMismatch("point is not in the lifted space".into())),
        }
    }

    fn points_down(&self, v: usize) -> Point {
        self.edge_images
            .iter()
            .zip(self.space.expect_graph().edges())
            .find_map(|(s, e)| {
                if e.u == v {
                    Some(s.x.clone())
                } else if e.v == v {
                    Some(s.y.clone())
                } else {
                    None
                }
            })
            .expect("vertex on some edge")
    }
}

/// Builds the atlas of chart lifts over `target_atlas`.
pub fn lift_atlas(target_atlas: &Atlas, e: &SampledMap, cert: &EtaleCertificate) -> Result<LiftedStructure> {
    let cells = all_cells(e);
    if cert.global && full_dimensional(e, &cells) {
        let SpaceModel::Euclidean { n, .. } = e.target else { unreachable!() };
        let hull = Polytope::hull(image_corners(e)?, false)?;
        let space = models::make_euclidean(n, Some(hull))?;
        let atlas = target_atlas.restricted(&space)?;
        let chart_over = atlas.charts.iter().map(|c| {
            target_atlas.charts.iter().position(|t| t.center == c.center).expect("restricted chart")
        }).collect();
        return Ok(LiftedStructure {
            space,
            atlas,
            points: e.values().to_vec(),
            chart_over,
            edge_images: Vec::new(),
            target: e.target.clone(),
        });
    }
    if cells.iter().any(|c| c.len() > 2) {
        return Err(ConvexError::Unsupported("lifting a non-injective map of cells above dimension one".into()));
    }
    if e.vertex_count() == 1 {
        return Err(ConvexError::Unsupported("lifting a single point".into()));
    }
    let target = &e.target;
    let domain_edges = e.edges();
    let mut edges = Vec::new();
    let mut images = Vec::new();
    for &(a, b) in &domain_edges {
        let seg = segment(target, e.value(a), e.value(b))?;
        edges.push(GraphEdge { u: a, v: b, length: target.distance(e.value(a), e.value(b)) });
        images.push(seg);
    }
    let graph = crate::graph::MetricGraph::new(e.vertex_count(), edges.clone())?;
    let space = if graph.is_acyclic() {
        models::make_tree(e.vertex_count(), edges)?
    } else {
        models::make_polyhedral(e.vertex_count(), edges, 0)?
    };
    let g = space.expect_graph();
    let mut charts = Vec::new();
    let mut chart_over = Vec::new();
    for chart in &target_atlas.charts {
        let mut pre = GraphRegion::default();
        for v in 0..e.vertex_count() {
            if chart.region.contains(e.value(v)) {
                pre.vertices.insert(v);
            }
        }
        for (i, seg) in images.iter().enumerate() {
            pre.add_edge_set(i, pull_back(target, seg, &chart.region)?);
        }
        for comp in pre.components(g) {
            let verts: Vec<usize> = comp.vertices.iter().copied().collect();
            let imgs: BTreeSet<&Point> = verts.iter().map(|&v| e.value(v)).collect();
            if imgs.len() != verts.len() {
                return Err(not_etale("lift", format!("a sheet over chart {} folds", chart.id)));
            }
            let center = match verts.first() {
                Some(&v) => Point::vertex(v),
                None => Point::Graph(comp.critical_points(g).into_iter().next().expect("nonempty component")),
            };
            charts.push((center, Region::Graph(comp)));
            chart_over.push(chart.id);
        }
    }
    let atlas = Atlas::load(&space, charts, target_atlas.spacing.clone())?;
    if let Some(bad) = atlas.charts.iter().find(|c| !c.certified) {
        return Err(not_etale("lifted chart convexity", format!("lifted chart {} is not convex", bad.id)));
    }
    Ok(LiftedStructure {
        points: (0..e.vertex_count()).map(Point::vertex).collect(),
        space,
        atlas,
        chart_over,
        edge_images: images,
        target: target.clone(),
    })
}

/// `{t ∈ [0,1] : x0 + t (x1 − x0) ∈ set}` for `x0 ≠ x1`.
fn pull_back_affine(set: &IntervalSet, x0: &Q, x1: &Q) -> IntervalSet {
    let d = x1 - x0;
    let parts = set
        .parts()
        .iter()
        .map(|iv| {
            let (a, b) = ((&iv.lo - x0) / &d, (&iv.hi - x0) / &d);
            if d.is_positive() {
                Interval::new(a, b, iv.lo_closed, iv.hi_closed)
            } else {
                Interval::new(b, a, iv.hi_closed, iv.lo_closed)
            }
        })
        .collect();
    IntervalSet::from_parts(parts).intersection(&IntervalSet::from_interval(Interval::closed(rational::zero(), rational::one())))
}

/// Image of `set ⊆ [0,1]` under `t ↦ off + len·t`, rescaled by `total`.
fn push_forward(set: &IntervalSet, off: &Q, len: &Q, total: &Q) -> IntervalSet {
    IntervalSet::from_parts(
        set.parts()
            .iter()
            .map(|iv| {
                Interval::new((off + len * &iv.lo) / total, (off + len * &iv.hi) / total, iv.lo_closed, iv.hi_closed)
            })
            .collect(),
    )
}

/// Parameters along an image segment that land in `region`.
fn pull_back(target: &SpaceModel, seg: &Segment, region: &Region) -> Result<IntervalSet> {
    match (&seg.rep, region) {
        (_, Region::Intervals(set)) => {
            let (x0, x1) = (seg.x.scalar().expect("scalar"), seg.y.scalar().expect("scalar"));
            Ok(pull_back_affine(set, x0, x1))
        }
        (_, Region::Polytopes(ps)) => {
            let (a, b) = (seg.x.vector().expect("vector"), seg.y.vector().expect("vector"));
            Ok(ps.iter().fold(IntervalSet::empty(), |acc, p| acc.union(&p.segment_params(a, b))))
        }
        (SegmentRep::Path(path), Region::Graph(r)) => {
            let g = target.expect_graph();
            let total = g.path_length(path);
            let mut off = Q::zero();
            let mut acc = IntervalSet::empty();
            for piece in &path.pieces {
                let e = g.edge(piece.edge);
                let mut on_edge = r.edges.get(&piece.edge).cloned().unwrap_or_else(IntervalSet::empty);
                if r.vertices.contains(&e.u) {
                    on_edge = on_edge.union(&IntervalSet::from_interval(Interval::point(Q::zero())));
                }
                if r.vertices.contains(&e.v) {
                    on_edge = on_edge.union(&IntervalSet::from_interval(Interval::point(Q::one())));
                }
                let len = &e.length * rational::abs(&(&piece.to - &piece.from));
                let local = pull_back_affine(&on_edge, &piece.from, &piece.to);
                acc = acc.union(&push_forward(&local, &off, &len, &total));
                off += len;
            }
            Ok(acc)
        }
        _ => Err(ConvexError::ModelMismatch("segment and region come from different models".into())),
    }
}
