//! Geometry of cellwise images: regions, convexity and injectivity.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::convexity::is_convex;
use crate::error::{ConvexError, Result};
use crate::interval_set::{Interval, IntervalSet};
use crate::linalg;
use crate::point::Point;
use crate::polytope::Polytope;
use crate::rational::{self, Q};
use crate::region::Region;
use crate::segment::segment;
use crate::space::SpaceModel;

use super::intgeom;
use super::sampled::SampledMap;

fn vec_of(p: &Point) -> Result<&[Q]> {
    p.vector().ok_or_else(|| ConvexError::ModelMismatch("expected a vector value".into()))
}

fn images(map: &SampledMap, cell: &[usize]) -> Result<Vec<Vec<Q>>> {
    cell.iter().map(|&v| vec_of(map.value(v)).map(<[Q]>::to_vec)).collect()
}

/// True when every cell is a full-dimensional simplex of a Euclidean target.
pub fn full_dimensional(map: &SampledMap, cells: &[&[usize]]) -> bool {
    match map.target {
        SpaceModel::Euclidean { n, .. } => n >= 2 && cells.iter().all(|c| c.len() == n + 1),
        _ => false,
    }
}

/// Closed image of one cell.
pub fn cell_region(map: &SampledMap, cell: &[usize]) -> Result<Region> {
    let target = &map.target;
    match target {
        SpaceModel::Interval { .. } => {
            let xs: Vec<&Q> = cell.iter().map(|&v| map.value(v).scalar().expect("scalar value")).collect();
            let lo = xs.iter().min().expect("nonempty cell");
            let hi = xs.iter().max().expect("nonempty cell");
            Ok(Region::Intervals(IntervalSet::from_interval(Interval::closed((*lo).clone(), (*hi).clone()))))
        }
        SpaceModel::Tree(_) | SpaceModel::Polyhedral { .. } => {
            if cell.len() > 2 {
                return Err(ConvexError::Unsupported("cells above dimension one in a graph target".into()));
            }
            let seg = segment(target, map.value(cell[0]), map.value(*cell.last().unwrap()))?;
            Ok(seg.region(target))
        }
        SpaceModel::Euclidean { .. } => Ok(Region::Polytopes(vec![Polytope::hull(images(map, cell)?, false)?])),
    }
}

/// Closed image of a union of cells.
pub fn image_region(map: &SampledMap, cells: &[&[usize]]) -> Result<Region> {
    let mut parts = cells.iter().map(|c| cell_region(map, c));
    let mut acc = parts.next().unwrap_or_else(|| Err(ConvexError::EmptyInput("no cells".into())))?;
    for r in parts {
        acc = acc.union(&r?)?;
    }
    Ok(acc)
}

/// Convexity of the image of a union of cells.
///
/// Full-dimensional simplices use the facet-support test: every boundary facet
/// (one owned by a single cell) must support all image vertices.
pub fn image_is_convex(map: &SampledMap, cells: &[&[usize]]) -> Result<bool> {
    if full_dimensional(map, cells) {
        return facet_support(map, cells, false);
    }
    is_convex(&map.target, &image_region(map, cells)?)
}

/// Hyperplane `a·x = b` through affinely independent points, oriented so that
/// `inside` satisfies `a·inside < b`; `None` when degenerate.
fn oriented_hyperplane(pts: &[Vec<Q>], inside: &[Q]) -> Option<(Vec<Q>, Q)> {
    let n = inside.len();
    let rows: Vec<Vec<Q>> = pts[1..].iter().map(|p| linalg::sub(p, &pts[0])).collect();
    let ns = linalg::nullspace(rows, n);
    if ns.len() != 1 {
        return None;
    }
    let mut a = linalg::normalize_direction(&ns[0]);
    let mut b = linalg::dot(&a, &pts[0]);
    let side = linalg::dot(&a, inside) - &b;
    if side.is_zero() {
        return None;
    }
    if side.is_positive() {
        a = a.iter().map(|x| -x).collect();
        b = -b;
    }
    Some((a, b))
}

fn boundary_facets<'a>(cells: &[&'a [usize]]) -> Vec<(&'a [usize], Vec<usize>, usize)> {
    let mut owners: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, c) in cells.iter().enumerate() {
        for skip in 0..c.len() {
            let facet: Vec<usize> =
                c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            owners.entry(facet).or_default().push((ci, c[skip]));
        }
    }
    owners
        .into_iter()
        .filter(|(_, o)| o.len() == 1)
        .map(|(f, o)| (cells[o[0].0], f, o[0].1))
        .collect()
}

fn int_points(map: &SampledMap) -> Option<&[Vec<i64>]> {
    map.int_coords().filter(|p| p[0].len() <= 3)
}

fn facet_support(map: &SampledMap, cells: &[&[usize]], dedupe: bool) -> Result<bool> {
    if let Some(pts) = int_points(map) {
        return Ok(intgeom::facet_support(pts, cells, dedupe));
    }
    let verts: BTreeSet<usize> = cells.iter().flat_map(|c| c.iter().copied()).collect();
    let pts: Vec<&[Q]> = verts.iter().map(|&v| vec_of(map.value(v))).collect::<Result<_>>()?;
    let mut planes: BTreeSet<(Vec<Q>, Q)> = BTreeSet::new();
    for (_, facet, apex) in boundary_facets(cells) {
        let fp = images(map, &facet)?;
        let Some(h) = oriented_hyperplane(&fp, vec_of(map.value(apex))?) else {
            return Ok(false);
        };
        if dedupe {
            planes.insert(h);
        } else if pts.iter().any(|p| linalg::dot(&h.0, p) > h.1) {
            return Ok(false);
        }
    }
    Ok(planes.iter().all(|(a, b)| pts.iter().all(|p| &linalg::dot(a, p) <= b)))
}

/// Extreme points of a full-dimensional image known to be convex: boundary
/// vertices whose incident boundary hyperplanes have full rank.
pub fn image_corners(map: &SampledMap) -> Result<Vec<Vec<Q>>> {
    let cells: Vec<&[usize]> = map.cells().iter().map(Vec::as_slice).collect();
    let mut normals: BTreeMap<usize, BTreeSet<Vec<Q>>> = BTreeMap::new();
    for (_, facet, apex) in boundary_facets(&cells) {
        let fp = images(map, &facet)?;
        let (a, _) = oriented_hyperplane(&fp, vec_of(map.value(apex))?)
            .ok_or_else(|| ConvexError::DegenerateBounds("degenerate boundary facet".into()))?;
        for &v in &facet {
            normals.entry(v).or_default().insert(a.clone());
        }
    }
    let mut out = Vec::new();
    for (v, ns) in normals {
        let p = vec_of(map.value(v))?;
        if linalg::rank(ns.into_iter().collect(), p.len()) == p.len() {
            out.push(p.to_vec());
        }
    }
    Ok(out)
}

/// Barycentric coordinates of `p` in the simplex spanned by `pts` (full-dimensional).
fn barycentric(pts: &[Vec<Q>], p: &[Q]) -> Option<Vec<Q>> {
    let n = p.len();
    let a: Vec<Vec<Q>> =
        (0..n).map(|i| pts[1..].iter().map(|q| &q[i] - &pts[0][i]).collect()).collect();
    let rhs = linalg::sub(p, &pts[0]);
    let mu = linalg::solve(a, rhs)?;
    let first = rational::one() - mu.iter().fold(Q::zero(), |s, x| s + x);
    Some(std::iter::once(first).chain(mu).collect())
}

fn simplex_contains(pts: &[Vec<Q>], p: &[Q]) -> bool {
    barycentric(pts, p).is_some_and(|bc| bc.iter().all(|x| !x.is_negative()))
}

/// Nondegenerate cells whose neighbors across each shared facet lie on the far side.
fn locally_injective_full(map: &SampledMap, cells: &[&[usize]]) -> Result<bool> {
    if let Some(pts) = int_points(map) {
        return Ok(intgeom::locally_injective(pts, cells));
    }
    let mut owners: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for c in cells {
        let pts = images(map, c)?;
        let n = pts[0].len();
        let rows: Vec<Vec<Q>> = pts[1..].iter().map(|p| linalg::sub(p, &pts[0])).collect();
        if linalg::rank(rows, n) != n {
            return Ok(false);
        }
        for skip in 0..c.len() {
            let facet: Vec<usize> =
                c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            owners.entry(facet).or_default().push(c[skip]);
        }
    }
    for (facet, apexes) in owners {
        match apexes.len() {
            1 => {}
            2 => {
                let fp = images(map, &facet)?;
                let Some((a, b)) = oriented_hyperplane(&fp, vec_of(map.value(apexes[0]))?) else {
                    return Ok(false);
                };
                if linalg::dot(&a, vec_of(map.value(apexes[1]))?) <= b {
                    return Ok(false);
                }
            }
            _ => return Ok(false),
        }
    }
    Ok(true)
}

fn centroid(pts: &[Vec<Q>]) -> Vec<Q> {
    let k = rational::int(pts.len() as i64);
    let sum = pts[1..].iter().fold(pts[0].clone(), |s, p| linalg::add(&s, p));
    sum.iter().map(|x| x / &k).collect()
}

fn multiplicity_at(map: &SampledMap, cells: &[&[usize]], p: &[Q]) -> Result<usize> {
    let mut count = 0;
    for c in cells {
        if simplex_contains(&images(map, c)?, p) {
            count += 1;
        }
    }
    Ok(count)
}

fn centroid_multiplicity(map: &SampledMap, cells: &[&[usize]], probe: &[usize]) -> Result<usize> {
    if let Some(pts) = int_points(map) {
        return Ok(intgeom::multiplicity_at_centroid(pts, cells, probe));
    }
    multiplicity_at(map, cells, &centroid(&images(map, probe)?))
}

/// Whether the cellwise extension is injective on the union of `cells`.
pub fn injective_on(map: &SampledMap, cells: &[&[usize]]) -> Result<bool> {
    let verts: BTreeSet<usize> = cells.iter().flat_map(|c| c.iter().copied()).collect();
    let values: BTreeSet<&Point> = verts.iter().map(|&v| map.value(v)).collect();
    if values.len() != verts.len() {
        return Ok(false);
    }
    if full_dimensional(map, cells) {
        if !locally_injective_full(map, cells)? {
            return Ok(false);
        }
        for c in cells {
            if centroid_multiplicity(map, cells, c)? != 1 {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    if cells.iter().any(|c| c.len() > 2) {
        return Err(ConvexError::Unsupported("injectivity of cells below target dimension".into()));
    }
    let edges: Vec<&[usize]> = cells.iter().copied().filter(|c| c.len() == 2).collect();
    let regions: Vec<Region> = edges.iter().map(|c| cell_region(map, c)).collect::<Result<_>>()?;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let shared: Vec<usize> = edges[i].iter().copied().filter(|v| edges[j].contains(v)).collect();
            if !meet_only_at(map, &regions[i], &regions[j], edges[i], edges[j], &shared)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn meet_only_at(
    map: &SampledMap,
    ri: &Region,
    rj: &Region,
    ei: &[usize],
    ej: &[usize],
    shared: &[usize],
) -> Result<bool> {
    if let SpaceModel::Euclidean { .. } = map.target {
        let (a0, a1) = (vec_of(map.value(ei[0]))?, vec_of(map.value(ei[1]))?);
        let (b0, b1) = (vec_of(map.value(ej[0]))?, vec_of(map.value(ej[1]))?);
        if let Some(&s) = shared.first() {
            // Two segments from a common point overlap iff they leave it in the same direction.
            let sp = vec_of(map.value(s))?;
            let other = |e: &[usize]| if e[0] == s { e[1] } else { e[0] };
            let da = linalg::sub(vec_of(map.value(other(ei)))?, sp);
            let db = linalg::sub(vec_of(map.value(other(ej)))?, sp);
            return Ok(linalg::normalize_direction(&da) != linalg::normalize_direction(&db)
                || linalg::dot(&da, &db).is_negative());
        }
        let seg = Polytope::hull(vec![a0.to_vec(), a1.to_vec()], false)?;
        return Ok(seg.segment_params(b0, b1).is_empty());
    }
    let meet = ri.intersection(rj)?;
    let expected: Vec<&Point> = shared.iter().map(|&v| map.value(v)).collect();
    Ok(match &meet {
        Region::Intervals(set) => {
            set.parts().iter().all(|iv| iv.lo == iv.hi)
                && set.parts().len() == expected.len()
                && expected.iter().all(|p| meet.contains(p))
        }
        Region::Graph(g) => {
            g.edges.values().all(|s| s.is_empty())
                && g.vertices.len() == expected.len()
                && expected.iter().all(|p| meet.contains(p))
        }
        Region::Polytopes(_) => false,
    })
}

/// Global injectivity of a full-dimensional map whose image was separately
/// shown convex: local injectivity plus a single sheet over one centroid.
pub fn globally_injective_full(map: &SampledMap) -> Result<bool> {
    let cells: Vec<&[usize]> = map.cells().iter().map(Vec::as_slice).collect();
    let values: BTreeSet<&Point> = map.values().iter().collect();
    if values.len() != map.vertex_count() || !locally_injective_full(map, &cells)? {
        return Ok(false);
    }
    Ok(centroid_multiplicity(map, &cells, cells[0])? == 1)
}

/// Convexity of the whole image via deduplicated boundary hyperplanes.
pub fn whole_image_convex_full(map: &SampledMap) -> Result<bool> {
    let cells: Vec<&[usize]> = map.cells().iter().map(Vec::as_slice).collect();
    facet_support(map, &cells, true)
}

/// Whether `p` lies in the relative interior of the image of a positive-dimensional face.
pub fn in_open_face(map: &SampledMap, face: &[usize], p: &Point) -> Result<bool> {
    let target = &map.target;
    match target {
        SpaceModel::Tree(_) | SpaceModel::Polyhedral { .. } | SpaceModel::Interval { .. } if face.len() == 2 => {
            let seg = segment(target, map.value(face[0]), map.value(face[1]))?;
            let len = seg.extent(target);
            Ok(matches!(seg.position(target, p), Some(s) if s.is_positive() && s < len))
        }
        SpaceModel::Euclidean { .. } => {
            let pts = images(map, face)?;
            let x = vec_of(p)?;
            let k = pts.len() - 1;
            let n = x.len();
            let mut rows: Vec<Vec<Q>> = (0..n)
                .map(|i| {
                    let mut r: Vec<Q> = pts[1..].iter().map(|q| &q[i] - &pts[0][i]).collect();
                    r.push(&x[i] - &pts[0][i]);
                    r
                })
                .collect();
            rows.retain(|r| r.iter().any(|v| !v.is_zero()));
            let (r, pivots) = linalg::rref(rows, k + 1);
            if pivots.len() != k || pivots.contains(&k) {
                return Ok(false);
            }
            let mu: Vec<Q> = r.iter().take(k).map(|row| row[k].clone()).collect();
            let first = rational::one() - mu.iter().fold(Q::zero(), |s, v| s + v);
            Ok(first.is_positive() && mu.iter().all(Signed::is_positive))
        }
        _ => Err(ConvexError::Unsupported("open faces above dimension one in this target".into())),
    }
}
