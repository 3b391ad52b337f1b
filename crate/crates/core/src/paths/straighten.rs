use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::atlas::Atlas;
use crate::convexity::{convex_hull, convexity_witness, graph_hull_from};
use crate::error::{ConvexError, Result};
use crate::graph::GraphPath;
use crate::linalg;
use crate::point::Point;
use crate::polytope::Polytope;
use crate::rational::{self, Q};
use crate::region::Region;
use crate::segment::{segment, SegmentRep};
use crate::space::SpaceModel;

use super::{simplify, LinePath};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Less,
    Greater,
    Equivalent,
    Incomparable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcComparison {
    pub verdict: Verdict,
    pub hull_a: Region,
    pub hull_b: Region,
}

/// Closed convex hull of a path's point set.
pub fn path_hull(space: &SpaceModel, p: &LinePath) -> Result<Region> {
    let hull = match space {
        SpaceModel::Polyhedral { graph, .. } => match p.region(space)? {
            Region::Graph(r) => Region::Graph(graph_hull_from(graph, r)?),
            _ => unreachable!("graph model"),
        },
        _ => convex_hull(space, &p.breakpoints)?,
    };
    Ok(hull.closure(space))
}

fn same_set(a: &Region, b: &Region) -> bool {
    a.is_subset(b) && b.is_subset(a)
}

pub fn hull_compare(space: &SpaceModel, a: &LinePath, b: &LinePath) -> Result<ArcComparison> {
    let ha = path_hull(space, a)?;
    let hb = path_hull(space, b)?;
    let (ab, ba) = (ha.is_subset(&hb), hb.is_subset(&ha));
    let verdict = match (ab, ba) {
        (true, true) => Verdict::Equivalent,
        (true, false) => Verdict::Less,
        (false, true) => Verdict::Greater,
        (false, false) => Verdict::Incomparable,
    };
    Ok(ArcComparison { verdict, hull_a: ha, hull_b: hb })
}

/// Convex simple geodesic test: the point set is convex and equals its closed hull.
pub fn is_minimal_arc(space: &SpaceModel, p: &LinePath) -> Result<bool> {
    if !p.is_injective(space)? {
        return Ok(false);
    }
    let r = p.region(space)?;
    if convexity_witness(space, &r)?.is_some() {
        return Ok(false);
    }
    Ok(same_set(&r.closure(space), &path_hull(space, p)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StraightenConfig {
    /// Fixpoint threshold on the largest breakpoint displacement of a round.
    #[serde(with = "rational::serde_q")]
    pub tol: Q,
    pub max_rounds: usize,
}

impl Default for StraightenConfig {
    fn default() -> Self {
        StraightenConfig { tol: Q::new(1.into(), 1_000_000_000.into()), max_rounds: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Straightened {
    pub path: LinePath,
    pub rounds: usize,
    pub converged: bool,
    pub merges: usize,
}

impl Straightened {
    /// The path, or `MaxRoundsExceeded` when the fixpoint was not reached.
    pub fn into_result(self) -> Result<LinePath> {
        if self.converged {
            Ok(self.path)
        } else {
            Err(ConvexError::MaxRoundsExceeded { rounds: self.rounds })
        }
    }
}

/// Dyadic precision of Euclidean slide targets.
const SLIDE_BITS: u32 = 40;

fn fits(atlas: &Atlas, a: &Point, b: &Point) -> bool {
    a == b || atlas.common_chart(a, b).is_some()
}

/// Where the two legs leaving a graph breakpoint stop running together.
fn graph_branch_point(space: &SpaceModel, to_prev: &GraphPath, to_next: &GraphPath) -> Point {
    let g = space.expect_graph();
    let mut common = Q::zero();
    for (p, q) in to_prev.pieces.iter().zip(&to_next.pieces) {
        if p.edge != q.edge || p.from != q.from || (p.to > p.from) != (q.to > q.from) {
            break;
        }
        let len = &g.edge(p.edge).length;
        let sp = rational::abs(&(&p.to - &p.from)) * len;
        let sq = rational::abs(&(&q.to - &q.from)) * len;
        if sp != sq {
            common += rational::min(&sp, &sq);
            break;
        }
        common += sp;
    }
    Point::Graph(g.point_at(to_prev, &common))
}

fn slide(space: &SpaceModel, atlas: &Atlas, bps: &[Point], i: usize, hull: Option<&Polytope>) -> Result<Option<Point>> {
    let (prev, cur, next) = (&bps[i - 1], &bps[i], &bps[i + 1]);
    let target = match (space, prev, cur, next) {
        (SpaceModel::Interval { .. }, Point::Scalar(a), Point::Scalar(x), Point::Scalar(b)) => {
            // Backtracking: both neighbors on the same side.
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            if x > hi {
                Point::Scalar(hi.clone())
            } else if x < lo {
                Point::Scalar(lo.clone())
            } else {
                return Ok(None);
            }
        }
        (SpaceModel::Tree(_) | SpaceModel::Polyhedral { .. }, ..) => {
            let s1 = segment(space, cur, prev)?;
            let s2 = segment(space, cur, next)?;
            let (SegmentRep::Path(p1), SegmentRep::Path(p2)) = (&s1.rep, &s2.rep) else { unreachable!() };
            let b = graph_branch_point(space, p1, p2);
            if &b == cur {
                return Ok(None);
            }
            b
        }
        (SpaceModel::Euclidean { .. }, Point::Vector(a), Point::Vector(x), Point::Vector(b)) => {
            let d = linalg::sub(b, a);
            let dd = linalg::norm2(&d);
            if dd.is_zero() {
                Point::Vector(a.clone())
            } else {
                let u = linalg::dot(&linalg::sub(x, a), &d) / &dd;
                let u = rational::round_nearest(&rational::max(&Q::zero(), &rational::min(&Q::one(), &u)), SLIDE_BITS);
                let exact = linalg::lerp(a, b, &u);
                let rounded: Vec<Q> = exact.iter().map(|c| rational::round_nearest(c, SLIDE_BITS)).collect();
                let in_hull = hull.map_or(false, |h| h.contains(&rounded));
                let chosen = if in_hull && fits(atlas, prev, &Point::Vector(rounded.clone()))
                    && fits(atlas, &Point::Vector(rounded.clone()), next)
                {
                    rounded
                } else {
                    exact
                };
                if &chosen == x {
                    return Ok(None);
                }
                Point::Vector(chosen)
            }
        }
        _ => return Err(ConvexError::ModelMismatch("breakpoints do not match the space".into())),
    };
    // Shorten the move until both new legs fit in charts.
    let mut lambda = Q::one();
    for _ in 0..12 {
        let cand = match (cur, &target) {
            (Point::Vector(x), Point::Vector(t)) if !lambda.is_one() => Point::Vector(linalg::lerp(x, t, &lambda)),
            _ => target.clone(),
        };
        if fits(atlas, prev, &cand) && fits(atlas, &cand, next) {
            return Ok(Some(cand));
        }
        if !matches!(cur, Point::Vector(_)) {
            return Ok(None);
        }
        lambda /= rational::int(2);
    }
    Ok(None)
}

/// Final slide of a settled Euclidean path: every interior breakpoint moves to
/// its projection on the end-to-end chord, provided the order along the chord
/// is kept. Legs too long for a chart are bisected along the chord. `None` when
/// nothing would change or no chart cover is found.
fn chord_snap(atlas: &Atlas, bps: &[Point]) -> Option<Vec<Point>> {
    if bps.len() < 3 {
        return None;
    }
    let vs: Vec<&[Q]> = bps.iter().map(|p| p.vector()).collect::<Option<_>>()?;
    let (a, b) = (vs[0], vs[vs.len() - 1]);
    let d = linalg::sub(b, a);
    let dd = linalg::norm2(&d);
    if dd.is_zero() {
        return None;
    }
    let mut params = vec![Q::zero()];
    for v in &vs[1..vs.len() - 1] {
        let u = linalg::dot(&linalg::sub(v, a), &d) / &dd;
        if &u < params.last().unwrap() || u > Q::one() {
            return None;
        }
        params.push(u);
    }
    params.push(Q::one());
    params.dedup();
    let at = |u: &Q| Point::Vector(linalg::lerp(a, b, u));
    let mut out = vec![bps[0].clone()];
    for w in params.windows(2) {
        let mut stack = vec![(w[0].clone(), w[1].clone(), 0u32)];
        // Depth-first bisection keeps the pieces in chord order.
        while let Some((lo, hi, depth)) = stack.pop() {
            if fits(atlas, &at(&lo), &at(&hi)) {
                out.push(at(&hi));
            } else if depth < 24 {
                let mid = (&lo + &hi) / rational::int(2);
                stack.push((mid.clone(), hi, depth + 1));
                stack.push((lo, mid, depth + 1));
            } else {
                return None;
            }
        }
    }
    if out == bps {
        return None;
    }
    Some(out)
}

/// Merge/slide fixpoint iteration; merges are applied leftmost first.
pub fn straighten(space: &SpaceModel, atlas: &Atlas, path: &LinePath, cfg: &StraightenConfig) -> Result<Straightened> {
    let mut bps = simplify(space, path)?.path.breakpoints;
    let mut rounds = 0;
    let mut merges = 0;
    let mut converged = false;
    while rounds < cfg.max_rounds {
        rounds += 1;
        let mut merged = false;
        let mut i = 1;
        while i + 1 < bps.len() {
            if atlas.common_chart(&bps[i - 1], &bps[i + 1]).is_some() {
                match segment(space, &bps[i - 1], &bps[i + 1]) {
                    Ok(_) => {
                        bps.remove(i);
                        merged = true;
                        merges += 1;
                        continue;
                    }
                    Err(ConvexError::NonUniqueGeodesic { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            i += 1;
        }
        let mut max_disp = Q::zero();
        let mut i = 1;
        while i + 1 < bps.len() {
            let hull = match space {
                SpaceModel::Euclidean { .. } => Some(Polytope::hull(bps.iter().map(|p| p.vector().unwrap().to_vec()).collect(), false)?),
                _ => None,
            };
            if let Some(np) = slide(space, atlas, &bps, i, hull.as_ref())? {
                let d = space.distance(&bps[i], &np);
                if d > max_disp {
                    max_disp = d;
                }
                bps[i] = np;
            }
            i += 1;
        }
        bps.dedup();
        if !merged && max_disp <= cfg.tol {
            if let Some(snapped) = chord_snap(atlas, &bps) {
                bps = snapped;
                continue;
            }
            converged = true;
            break;
        }
    }
    let p = LinePath::through(space, atlas, bps)?;
    let p = simplify(space, &p)?.path;
    Ok(Straightened { path: p, rounds, converged, merges })
}
