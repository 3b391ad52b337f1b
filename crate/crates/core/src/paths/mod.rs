//! Line paths: chart chains, construction, simplification and straightening.

mod meet;
mod straighten;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::atlas::Atlas;
use crate::error::{ConvexError, Result};
use crate::point::Point;
use crate::region::Region;
use crate::segment::{segment, Segment};
use crate::space::SpaceModel;

pub use meet::leg_meet;
pub use straighten::{
    hull_compare, is_minimal_arc, path_hull, straighten, ArcComparison, StraightenConfig, Straightened, Verdict,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartChain {
    pub charts: Vec<usize>,
    pub x: Point,
    pub y: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leg {
    pub chart: usize,
    #[serde(skip)]
    pub segment: Option<Segment>,
}

/// Breakpoints `x_0, ..., x_n` with one chart per leg `C(x_i, x_{i+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinePath {
    pub breakpoints: Vec<Point>,
    pub legs: Vec<Leg>,
    pub simple: bool,
}

/// JSON form of a path; charts are reassigned on load.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathDoc {
    pub breakpoints: Vec<Point>,
}

/// Shortest chain of pairwise-meeting charts from `x` to `y` (breadth-first on the nerve).
pub fn chart_chain(space: &SpaceModel, atlas: &Atlas, x: &Point, y: &Point) -> Result<ChartChain> {
    space.validate(x)?;
    space.validate(y)?;
    let starts = atlas.charts_containing(x);
    if starts.is_empty() {
        return Err(ConvexError::NoChain(format!("{x} lies in no chart")));
    }
    let goal = |i: usize| atlas.chart_contains(i, y);
    let mut prev: Vec<Option<usize>> = vec![None; atlas.len()];
    let mut seen = vec![false; atlas.len()];
    let mut queue = VecDeque::new();
    for &s in &starts {
        seen[s] = true;
        queue.push_back(s);
    }
    while let Some(c) = queue.pop_front() {
        if goal(c) {
            let mut charts = vec![c];
            let mut k = c;
            while let Some(p) = prev[k] {
                charts.push(p);
                k = p;
            }
            charts.reverse();
            return Ok(ChartChain { charts, x: x.clone(), y: y.clone() });
        }
        for &n in &atlas.nerve[c] {
            if !seen[n] {
                seen[n] = true;
                prev[n] = Some(c);
                queue.push_back(n);
            }
        }
    }
    Err(ConvexError::NoChain(format!("no chain of charts joins {x} and {y}")))
}

fn leg(space: &SpaceModel, a: &Point, b: &Point, chart: usize) -> Result<Leg> {
    Ok(Leg { chart, segment: Some(segment(space, a, b)?) })
}

impl LinePath {
    /// Path through the given breakpoints; each leg gets the lowest-id chart
    /// containing both of its ends. Repeated consecutive breakpoints are dropped.
    pub fn through(space: &SpaceModel, atlas: &Atlas, breakpoints: Vec<Point>) -> Result<LinePath> {
        let mut bps: Vec<Point> = Vec::with_capacity(breakpoints.len());
        for p in breakpoints {
            space.validate(&p)?;
            if bps.last() != Some(&p) {
                bps.push(p);
            }
        }
        if bps.is_empty() {
            return Err(ConvexError::EmptyInput("path without breakpoints".into()));
        }
        let mut legs = Vec::with_capacity(bps.len());
        for w in bps.windows(2) {
            let chart = atlas
                .common_chart(&w[0], &w[1])
                .ok_or_else(|| ConvexError::NoChain(format!("no chart holds the leg from {} to {}", w[0], w[1])))?;
            legs.push(leg(space, &w[0], &w[1], chart)?);
        }
        let mut p = LinePath { breakpoints: bps, legs, simple: false };
        p.simple = p.is_injective(space)?;
        Ok(p)
    }

    pub fn start(&self) -> &Point {
        &self.breakpoints[0]
    }

    pub fn end(&self) -> &Point {
        self.breakpoints.last().unwrap()
    }

    pub fn leg_count(&self) -> usize {
        self.legs.len()
    }

    pub fn segment(&self, i: usize) -> &Segment {
        self.legs[i].segment.as_ref().expect("legs carry their segments")
    }

    /// Union of the legs.
    pub fn region(&self, space: &SpaceModel) -> Result<Region> {
        if self.legs.is_empty() {
            return crate::convexity::convex_hull(space, &self.breakpoints[..1]);
        }
        let mut r = self.segment(0).region(space);
        for i in 1..self.legs.len() {
            r = r.union(&self.segment(i).region(space))?;
        }
        Ok(r)
    }

    /// Exact check that legs meet only at shared breakpoints.
    pub fn is_injective(&self, space: &SpaceModel) -> Result<bool> {
        let n = self.legs.len();
        for i in 0..n {
            for j in i + 1..n {
                let meet = leg_meet(space, self.segment(i), self.segment(j));
                let ok = if j == i + 1 {
                    meet.len() == 1 && meet[0] == self.breakpoints[j]
                } else {
                    meet.is_empty()
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn from_parts(space: &SpaceModel, bps: Vec<Point>, charts: Vec<usize>) -> Result<LinePath> {
        let legs = bps
            .windows(2)
            .zip(&charts)
            .map(|(w, &c)| leg(space, &w[0], &w[1], c))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinePath { breakpoints: bps, legs, simple: false })
    }
}

/// Line path along a chain: breakpoints at the overlap representatives.
pub fn line_path_from_chain(space: &SpaceModel, atlas: &Atlas, chain: &ChartChain) -> Result<LinePath> {
    let mut bps = vec![chain.x.clone()];
    let mut charts = Vec::new();
    for w in chain.charts.windows(2) {
        let p = atlas
            .overlap_point(space, w[0], w[1])
            .ok_or_else(|| ConvexError::NoChain(format!("charts {} and {} do not meet", w[0], w[1])))?;
        if bps.last() != Some(&p) {
            bps.push(p);
            charts.push(w[0]);
        }
    }
    let last = *chain.charts.last().ok_or_else(|| ConvexError::NoChain("empty chain".into()))?;
    if bps.last() != Some(&chain.y) {
        bps.push(chain.y.clone());
        charts.push(last);
    }
    let mut p = LinePath::from_parts(space, bps, charts)?;
    p.simple = p.is_injective(space)?;
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simplified {
    pub path: LinePath,
    pub modifications: usize,
}

/// Makes a line path simple: whenever a new leg meets the simple prefix away
/// from its start, the prefix is cut back to the meeting point that comes
/// last along the leg and the rest of the leg is attached there.
pub fn simplify(space: &SpaceModel, path: &LinePath) -> Result<Simplified> {
    let mut bps: Vec<Point> = vec![path.start().clone()];
    let mut charts: Vec<usize> = Vec::new();
    let mut segs: Vec<Segment> = Vec::new();
    let mut modifications = 0;
    for (i, l) in path.legs.iter().enumerate() {
        let target = &path.breakpoints[i + 1];
        let from = bps.last().unwrap().clone();
        if &from == target {
            continue;
        }
        let mut cur = segment(space, &from, target)?;
        // Farthest point along the new leg that the prefix already visits.
        let mut best: Option<(crate::rational::Q, usize, Point)> = None;
        for (j, s) in segs.iter().enumerate() {
            for z in leg_meet(space, &cur, s) {
                if z == from {
                    continue;
                }
                let pos = cur.position(space, &z).expect("meet point lies on the leg");
                if best.as_ref().map_or(true, |(b, _, _)| pos > *b) {
                    best = Some((pos, j, z));
                }
            }
        }
        if let Some((_, _, z)) = best {
            // Cut the prefix at the first leg that contains z.
            let j = segs.iter().position(|s| s.contains(space, &z)).expect("z lies on the prefix");
            let cj = charts[j];
            segs.truncate(j);
            charts.truncate(j);
            bps.truncate(j + 1);
            if bps.last() != Some(&z) {
                segs.push(segment(space, &bps[j], &z)?);
                charts.push(cj);
                bps.push(z.clone());
            }
            modifications += 1;
            if &z == target {
                continue;
            }
            cur = segment(space, &z, target)?;
        }
        segs.push(cur);
        charts.push(l.chart);
        bps.push(target.clone());
    }
    let legs = segs.into_iter().zip(charts).map(|(s, c)| Leg { chart: c, segment: Some(s) }).collect();
    let mut out = LinePath { breakpoints: bps, legs, simple: false };
    out.simple = out.is_injective(space)?;
    Ok(Simplified { path: out, modifications })
}
