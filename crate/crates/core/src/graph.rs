//! Metric graphs: the shared substrate of the tree and polyhedral models.
//!
//! Points live on vertices or in the interior of an edge at a rational
//! parameter `t in (0,1)` measured from the edge's `u` end. Shortest paths are
//! computed exactly and ties between distinct routes are reported instead of
//! being broken arbitrarily.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ConvexError, Result};
use crate::interval_set::{Interval, IntervalSet};
use crate::rational::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub u: usize,
    pub v: usize,
    #[serde(with = "rational::serde_q")]
    pub length: Q,
}

/// A point of a metric graph. Edge points always carry `0 < t < 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphPoint {
    Vertex { vertex: usize },
    Edge {
        edge: usize,
        #[serde(with = "rational::serde_q")]
        t: Q,
    },
}

impl GraphPoint {
    pub fn vertex(v: usize) -> Self {
        GraphPoint::Vertex { vertex: v }
    }
}

impl std::fmt::Display for GraphPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphPoint::Vertex { vertex } => write!(f, "v{vertex}"),
            GraphPoint::Edge { edge, t } => write!(f, "e{edge}@{}", rational::render(t)),
        }
    }
}

/// Part of an edge traversed from parameter `from` to parameter `to`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Piece {
    pub edge: usize,
    #[serde(with = "rational::serde_q")]
    pub from: Q,
    #[serde(with = "rational::serde_q")]
    pub to: Q,
}

impl Piece {
    fn lo_hi(&self) -> (&Q, &Q) {
        if self.from <= self.to {
            (&self.from, &self.to)
        } else {
            (&self.to, &self.from)
        }
    }
}

/// A path in the graph given by consecutive pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphPath {
    pub start: GraphPoint,
    pub end: GraphPoint,
    pub pieces: Vec<Piece>,
}

#[derive(Clone, Debug)]
pub struct MetricGraph {
    vertex_count: usize,
    edges: Vec<GraphEdge>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

#[derive(Clone, Copy, Debug)]
enum Pred {
    Source,
    Via { edge: usize, from: usize },
}

struct Search {
    dist: Vec<Option<Q>>,
    count: Vec<u8>,
    pred: Vec<Option<Pred>>,
}

impl MetricGraph {
    pub fn new(vertex_count: usize, edges: Vec<GraphEdge>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(ConvexError::EmptyInput("graph without vertices".into()));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(ConvexError::InvalidPoint(format!("edge {i} references a missing vertex")));
            }
            if e.u == e.v {
                return Err(ConvexError::InvalidPoint(format!("edge {i} is a loop")));
            }
            if e.length <= Q::zero() {
                return Err(ConvexError::InvalidPoint(format!("edge {i} has non-positive length")));
            }
            adjacency[e.u].push((i, e.v));
            adjacency[e.v].push((i, e.u));
        }
        let g = MetricGraph { vertex_count, edges, adjacency };
        if !g.is_connected() {
            return Err(ConvexError::NotConnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &GraphEdge {
        &self.edges[i]
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(_, w) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_acyclic(&self) -> bool {
        self.edges.len() + 1 == self.vertex_count
    }

    /// Normalizes `(edge, t)` to a vertex when `t` is 0 or 1.
    pub fn point_on_edge(&self, edge: usize, t: Q) -> Result<GraphPoint> {
        let e = self
            .edges
            .get(edge)
            .ok_or_else(|| ConvexError::InvalidPoint(format!("edge {edge} does not exist")))?;
        if t < Q::zero() || t > Q::one() {
            return Err(ConvexError::InvalidPoint(format!(
                "edge parameter {} outside [0,1]",
                rational::render(&t)
            )));
        }
        Ok(if t.is_zero() {
            GraphPoint::vertex(e.u)
        } else if t.is_one() {
            GraphPoint::vertex(e.v)
        } else {
            GraphPoint::Edge { edge, t }
        })
    }

    pub fn validate(&self, p: &GraphPoint) -> Result<()> {
        match p {
            GraphPoint::Vertex { vertex } if *vertex < self.vertex_count => Ok(()),
            GraphPoint::Vertex { vertex } => {
                Err(ConvexError::InvalidPoint(format!("vertex {vertex} does not exist")))
            }
            GraphPoint::Edge { edge, t } => {
                if *edge >= self.edges.len() {
                    Err(ConvexError::InvalidPoint(format!("edge {edge} does not exist")))
                } else if *t <= Q::zero() || *t >= Q::one() {
                    Err(ConvexError::InvalidPoint(format!(
                        "edge parameter must lie strictly inside (0,1), got {}",
                        rational::render(t)
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Vertex endpoint `w` of `edge` expressed as a parameter.
    fn param_of(&self, edge: usize, w: usize) -> Q {
        if self.edges[edge].u == w {
            Q::zero()
        } else {
            Q::one()
        }
    }

    fn search(&self, source: &GraphPoint) -> Search {
        let n = self.vertex_count;
        let mut dist: Vec<Option<Q>> = vec![None; n];
        let mut count = vec![0u8; n];
        let mut pred: Vec<Option<Pred>> = vec![None; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        let mut seed = |w: usize, d: Q, pr: Pred, dist: &mut Vec<Option<Q>>| {
            dist[w] = Some(d.clone());
            count[w] = 1;
            pred[w] = Some(pr);
            heap.push(Reverse((d, w)));
        };
        match source {
            GraphPoint::Vertex { vertex } => seed(*vertex, Q::zero(), Pred::Source, &mut dist),
            GraphPoint::Edge { edge, t } => {
                let e = &self.edges[*edge];
                seed(e.u, t * &e.length, Pred::Source, &mut dist);
                seed(e.v, (Q::one() - t) * &e.length, Pred::Source, &mut dist);
            }
        }
        while let Some(Reverse((d, w))) = heap.pop() {
            if done[w] || dist[w].as_ref() != Some(&d) {
                continue;
            }
            done[w] = true;
            for &(ei, x) in &self.adjacency[w] {
                if done[x] {
                    continue;
                }
                let nd = &d + &self.edges[ei].length;
                match &dist[x] {
                    Some(cur) if *cur < nd => {}
                    Some(cur) if *cur == nd => {
                        count[x] = count[x].saturating_add(count[w]).min(2);
                    }
                    _ => {
                        dist[x] = Some(nd.clone());
                        count[x] = count[w];
                        pred[x] = Some(Pred::Via { edge: ei, from: w });
                        heap.push(Reverse((nd, x)));
                    }
                }
            }
        }
        Search { dist, count, pred }
    }

    /// Exact distance from `source` to every vertex.
    pub fn vertex_distances(&self, source: &GraphPoint) -> Vec<Q> {
        self.search(source)
            .dist
            .into_iter()
            .map(|d| d.expect("graph is connected"))
            .collect()
    }

    pub fn distance(&self, x: &GraphPoint, y: &GraphPoint) -> Q {
        let s = self.search(x);
        self.routes_to(x, y, &s)
            .into_iter()
            .map(|r| r.length)
            .min()
            .expect("at least one route")
    }

    fn routes_to(&self, x: &GraphPoint, y: &GraphPoint, s: &Search) -> Vec<Route> {
        let mut routes = Vec::new();
        match y {
            GraphPoint::Vertex { vertex } => routes.push(Route {
                length: s.dist[*vertex].clone().expect("connected"),
                count: s.count[*vertex],
                via: Some(*vertex),
            }),
            GraphPoint::Edge { edge, t } => {
                let e = &self.edges[*edge];
                routes.push(Route {
                    length: s.dist[e.u].clone().expect("connected") + t * &e.length,
                    count: s.count[e.u],
                    via: Some(e.u),
                });
                routes.push(Route {
                    length: s.dist[e.v].clone().expect("connected") + (Q::one() - t) * &e.length,
                    count: s.count[e.v],
                    via: Some(e.v),
                });
                if let GraphPoint::Edge { edge: ex, t: tx } = x {
                    if ex == edge {
                        routes.push(Route {
                            length: rational::abs(&(t - tx)) * &e.length,
                            count: 1,
                            via: None,
                        });
                    }
                }
            }
        }
        routes
    }

    /// The unique shortest path from `x` to `y`.
    pub fn shortest_path(&self, x: &GraphPoint, y: &GraphPoint) -> Result<GraphPath> {
        if x == y {
            return Ok(GraphPath { start: x.clone(), end: y.clone(), pieces: Vec::new() });
        }
        let s = self.search(x);
        self.path_in_search(x, y, &s)
    }

    /// Shortest paths from one source to many targets, sharing one search.
    pub fn shortest_paths_from(&self, x: &GraphPoint, ys: &[GraphPoint]) -> Vec<Result<GraphPath>> {
        let s = self.search(x);
        ys.iter()
            .map(|y| {
                if x == y {
                    Ok(GraphPath { start: x.clone(), end: y.clone(), pieces: Vec::new() })
                } else {
                    self.path_in_search(x, y, &s)
                }
            })
            .collect()
    }

    fn path_in_search(&self, x: &GraphPoint, y: &GraphPoint, s: &Search) -> Result<GraphPath> {
        let routes = self.routes_to(x, y, s);
        let best = routes.iter().map(|r| &r.length).min().expect("routes").clone();
        let winners: Vec<&Route> = routes.iter().filter(|r| r.length == best).collect();
        let total: u32 = winners.iter().map(|r| r.count as u32).sum();
        if total != 1 {
            return Err(ConvexError::NonUniqueGeodesic { from: x.to_string(), to: y.to_string() });
        }
        let route = winners[0];
        let mut pieces = Vec::new();
        match route.via {
            None => {
                let (GraphPoint::Edge { edge, t: tx }, GraphPoint::Edge { t: ty, .. }) = (x, y) else {
                    unreachable!("direct routes join two points of one edge")
                };
                pieces.push(Piece { edge: *edge, from: tx.clone(), to: ty.clone() });
            }
            Some(via) => {
                let mut w = via;
                let mut rev = Vec::new();
                loop {
                    match s.pred[w].expect("reached vertex has a predecessor") {
                        Pred::Source => {
                            if let GraphPoint::Edge { edge, t } = x {
                                rev.push(Piece {
                                    edge: *edge,
                                    from: t.clone(),
                                    to: self.param_of(*edge, w),
                                });
                            }
                            break;
                        }
                        Pred::Via { edge, from } => {
                            rev.push(Piece {
                                edge,
                                from: self.param_of(edge, from),
                                to: self.param_of(edge, w),
                            });
                            w = from;
                        }
                    }
                }
                rev.reverse();
                pieces = rev;
                if let GraphPoint::Edge { edge, t } = y {
                    pieces.push(Piece { edge: *edge, from: self.param_of(*edge, via), to: t.clone() });
                }
            }
        }
        Ok(GraphPath { start: x.clone(), end: y.clone(), pieces })
    }

    /// Open metric ball of the given radius around `center`.
    pub fn ball(&self, center: &GraphPoint, radius: &Q) -> GraphRegion {
        let d = self.vertex_distances(center);
        let mut region = GraphRegion::default();
        for (v, dv) in d.iter().enumerate() {
            if dv < radius {
                region.vertices.insert(v);
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let mut parts = Vec::new();
            if d[e.u] < *radius {
                let reach = (radius - &d[e.u]) / &e.length;
                parts.push(Interval::new(Q::zero(), reach, false, false));
            }
            if d[e.v] < *radius {
                let reach = (radius - &d[e.v]) / &e.length;
                parts.push(Interval::new(Q::one() - reach, Q::one(), false, false));
            }
            if let GraphPoint::Edge { edge, t } = center {
                if *edge == i {
                    let r = radius / &e.length;
                    parts.push(Interval::open(t - &r, t + &r));
                }
            }
            region.add_edge_set(i, IntervalSet::from_parts(parts));
        }
        region
    }

    pub fn path_length(&self, p: &GraphPath) -> Q {
        p.pieces
            .iter()
            .map(|pc| rational::abs(&(&pc.to - &pc.from)) * &self.edges[pc.edge].length)
            .fold(Q::zero(), |a, b| a + b)
    }

    fn piece_point(&self, pc: &Piece, t: Q) -> GraphPoint {
        self.point_on_edge(pc.edge, t).expect("piece parameters lie in [0,1]")
    }

    /// Arc-length position of `p` along `path`, if `p` lies on it.
    pub fn position(&self, path: &GraphPath, p: &GraphPoint) -> Option<Q> {
        if path.pieces.is_empty() {
            return (p == &path.start).then(Q::zero);
        }
        let mut acc = Q::zero();
        for pc in &path.pieces {
            let len = &self.edges[pc.edge].length;
            let hit = match p {
                GraphPoint::Vertex { vertex } => {
                    let e = &self.edges[pc.edge];
                    let mut hit = None;
                    for (w, tw) in [(e.u, Q::zero()), (e.v, Q::one())] {
                        if w == *vertex {
                            let (lo, hi) = pc.lo_hi();
                            if *lo <= tw && tw <= *hi {
                                hit = Some(tw);
                                break;
                            }
                        }
                    }
                    hit
                }
                GraphPoint::Edge { edge, t } if *edge == pc.edge => {
                    let (lo, hi) = pc.lo_hi();
                    (lo <= t && t <= hi).then(|| t.clone())
                }
                _ => None,
            };
            if let Some(t) = hit {
                return Some(&acc + rational::abs(&(&t - &pc.from)) * len);
            }
            acc += rational::abs(&(&pc.to - &pc.from)) * len;
        }
        None
    }

    /// Point at arc-length position `s` (clamped to the path).
    pub fn point_at(&self, path: &GraphPath, s: &Q) -> GraphPoint {
        if *s <= Q::zero() || path.pieces.is_empty() {
            return path.start.clone();
        }
        let mut acc = Q::zero();
        for pc in &path.pieces {
            let len = &self.edges[pc.edge].length;
            let span = rational::abs(&(&pc.to - &pc.from)) * len;
            if *s <= &acc + &span {
                let frac = (s - &acc) / len;
                let t = if pc.to >= pc.from { &pc.from + frac } else { &pc.from - frac };
                return self.piece_point(pc, t);
            }
            acc += span;
        }
        path.end.clone()
    }

    /// Portion of `path` between arc-length positions `a <= b`.
    pub fn subpath(&self, path: &GraphPath, a: &Q, b: &Q) -> GraphPath {
        let start = self.point_at(path, a);
        let end = self.point_at(path, b);
        let mut pieces = Vec::new();
        let mut acc = Q::zero();
        for pc in &path.pieces {
            let len = &self.edges[pc.edge].length;
            let span = rational::abs(&(&pc.to - &pc.from)) * len;
            let lo = rational::max(&acc, a);
            let hi = rational::min(&(&acc + &span), b);
            if lo < hi {
                let dir_up = pc.to >= pc.from;
                let at = |s: &Q| {
                    let frac = (s - &acc) / len;
                    if dir_up {
                        &pc.from + frac
                    } else {
                        &pc.from - frac
                    }
                };
                pieces.push(Piece { edge: pc.edge, from: at(&lo), to: at(&hi) });
            }
            acc += span;
        }
        GraphPath { start, end, pieces }
    }

    pub fn reverse(&self, path: &GraphPath) -> GraphPath {
        GraphPath {
            start: path.end.clone(),
            end: path.start.clone(),
            pieces: path
                .pieces
                .iter()
                .rev()
                .map(|pc| Piece { edge: pc.edge, from: pc.to.clone(), to: pc.from.clone() })
                .collect(),
        }
    }

    /// The point set of a path.
    pub fn path_region(&self, path: &GraphPath) -> GraphRegion {
        let mut r = GraphRegion::default();
        r.insert_point(&path.start);
        r.insert_point(&path.end);
        for pc in &path.pieces {
            let (lo, hi) = pc.lo_hi();
            r.insert_edge_interval(self, pc.edge, Interval::closed(lo.clone(), hi.clone()));
        }
        r
    }
}

struct Route {
    length: Q,
    count: u8,
    via: Option<usize>,
}

/// A subset of a metric graph: a vertex set plus, per edge, a subset of the
/// open parameter interval `(0,1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphRegion {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeMap<usize, IntervalSet>,
}

fn open_unit() -> IntervalSet {
    IntervalSet::from_interval(Interval::open(Q::zero(), Q::one()))
}

impl GraphRegion {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn add_edge_set(&mut self, edge: usize, set: IntervalSet) {
        let set = set.intersection(&open_unit());
        if set.is_empty() {
            return;
        }
        let merged = match self.edges.remove(&edge) {
            Some(old) => old.union(&set),
            None => set,
        };
        self.edges.insert(edge, merged);
    }

    /// Adds a parameter interval of `edge`, recording the endpoint vertices it reaches.
    pub fn insert_edge_interval(&mut self, g: &MetricGraph, edge: usize, iv: Interval) {
        if iv.is_empty() {
            return;
        }
        let e = g.edge(edge);
        if iv.lo.is_zero() && iv.lo_closed {
            self.vertices.insert(e.u);
        }
        if iv.hi.is_one() && iv.hi_closed {
            self.vertices.insert(e.v);
        }
        self.add_edge_set(edge, IntervalSet::from_interval(iv));
    }

    pub fn insert_point(&mut self, p: &GraphPoint) {
        match p {
            GraphPoint::Vertex { vertex } => {
                self.vertices.insert(*vertex);
            }
            GraphPoint::Edge { edge, t } => {
                self.add_edge_set(*edge, IntervalSet::from_interval(Interval::point(t.clone())))
            }
        }
    }

    pub fn contains(&self, p: &GraphPoint) -> bool {
        match p {
            GraphPoint::Vertex { vertex } => self.vertices.contains(vertex),
            GraphPoint::Edge { edge, t } => self.edges.get(edge).is_some_and(|s| s.contains(t)),
        }
    }

    pub fn union(&self, other: &GraphRegion) -> GraphRegion {
        let mut out = self.clone();
        out.vertices.extend(other.vertices.iter().copied());
        for (e, s) in &other.edges {
            out.add_edge_set(*e, s.clone());
        }
        out
    }

    pub fn intersection(&self, other: &GraphRegion) -> GraphRegion {
        let mut out = GraphRegion {
            vertices: self.vertices.intersection(&other.vertices).copied().collect(),
            edges: BTreeMap::new(),
        };
        for (e, s) in &self.edges {
            if let Some(t) = other.edges.get(e) {
                out.add_edge_set(*e, s.intersection(t));
            }
        }
        out
    }

    pub fn is_subset(&self, other: &GraphRegion) -> bool {
        &self.intersection(other) == self
    }

    pub fn closure(&self, g: &MetricGraph) -> GraphRegion {
        let mut out = GraphRegion { vertices: self.vertices.clone(), edges: BTreeMap::new() };
        for (e, s) in &self.edges {
            let c = s.closure();
            for iv in c.parts() {
                out.insert_edge_interval(g, *e, iv.clone());
            }
        }
        out
    }

    pub fn is_closed(&self, g: &MetricGraph) -> bool {
        &self.closure(g) == self
    }

    /// Connected components; each is returned as a region.
    pub fn components(&self, g: &MetricGraph) -> Vec<GraphRegion> {
        // Nodes: vertices first, then edge fragments.
        let verts: Vec<usize> = self.vertices.iter().copied().collect();
        let mut frags: Vec<(usize, Interval)> = Vec::new();
        for (e, s) in &self.edges {
            for iv in s.parts() {
                frags.push((*e, iv.clone()));
            }
        }
        let n = verts.len() + frags.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let index_of = |v: usize| verts.binary_search(&v).ok();
        for (k, (e, iv)) in frags.iter().enumerate() {
            let edge = g.edge(*e);
            let node = verts.len() + k;
            if iv.lo.is_zero() {
                if let Some(i) = index_of(edge.u) {
                    let (a, b) = (find(&mut parent, node), find(&mut parent, i));
                    parent[a] = b;
                }
            }
            if iv.hi.is_one() {
                if let Some(i) = index_of(edge.v) {
                    let (a, b) = (find(&mut parent, node), find(&mut parent, i));
                    parent[a] = b;
                }
            }
        }
        let mut groups: BTreeMap<usize, GraphRegion> = BTreeMap::new();
        for (i, v) in verts.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().vertices.insert(*v);
        }
        for (k, (e, iv)) in frags.iter().enumerate() {
            let r = find(&mut parent, verts.len() + k);
            groups
                .entry(r)
                .or_default()
                .add_edge_set(*e, IntervalSet::from_interval(iv.clone()));
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self, g: &MetricGraph) -> bool {
        self.components(g).len() == 1
    }

    /// Finite sample of the region used by exact pairwise checks: vertices,
    /// closed fragment ends, points just inside open ends, and fragment midpoints.
    pub fn critical_points(&self, g: &MetricGraph) -> Vec<GraphPoint> {
        let mut out: BTreeSet<GraphPoint> =
            self.vertices.iter().map(|v| GraphPoint::vertex(*v)).collect();
        let quarter = rational::ratio(1, 4);
        for (e, s) in &self.edges {
            for iv in s.parts() {
                let width = &iv.hi - &iv.lo;
                let lo = if iv.lo_closed { iv.lo.clone() } else { &iv.lo + &width * &quarter };
                let hi = if iv.hi_closed { iv.hi.clone() } else { &iv.hi - &width * &quarter };
                for t in [lo, hi, iv.representative()] {
                    if let Ok(p) = g.point_on_edge(*e, t) {
                        out.insert(p);
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn cycle(n: usize) -> MetricGraph {
        let edges = (0..n)
            .map(|i| GraphEdge { u: i, v: (i + 1) % n, length: int(1) })
            .collect();
        MetricGraph::new(n, edges).unwrap()
    }

    #[test]
    fn rejects_disconnected_and_loops() {
        let e = vec![GraphEdge { u: 0, v: 1, length: int(1) }];
        assert_eq!(MetricGraph::new(3, e).unwrap_err(), ConvexError::NotConnected);
        let e = vec![GraphEdge { u: 0, v: 0, length: int(1) }];
        assert!(MetricGraph::new(1, e).is_err());
    }

    #[test]
    fn triangle_antipodes_tie() {
        let g = cycle(3);
        let mid = g.point_on_edge(0, ratio(1, 2)).unwrap();
        let err = g.shortest_path(&mid, &GraphPoint::vertex(2)).unwrap_err();
        assert!(matches!(err, ConvexError::NonUniqueGeodesic { .. }));
        let p = g.shortest_path(&GraphPoint::vertex(0), &GraphPoint::vertex(1)).unwrap();
        assert_eq!(g.path_length(&p), int(1));
    }

    #[test]
    fn same_edge_direct_route() {
        let g = cycle(4);
        let a = g.point_on_edge(1, ratio(1, 4)).unwrap();
        let b = g.point_on_edge(1, ratio(3, 4)).unwrap();
        let p = g.shortest_path(&a, &b).unwrap();
        assert_eq!(p.pieces.len(), 1);
        assert_eq!(g.path_length(&p), ratio(1, 2));
        assert_eq!(g.position(&p, &g.point_on_edge(1, ratio(1, 2)).unwrap()), Some(ratio(1, 4)));
    }

    #[test]
    fn ball_on_cycle_is_an_open_arc() {
        let g = cycle(4);
        let b = g.ball(&GraphPoint::vertex(0), &ratio(1, 2));
        assert!(b.contains(&GraphPoint::vertex(0)));
        assert!(b.contains(&g.point_on_edge(0, ratio(1, 4)).unwrap()));
        assert!(!b.contains(&g.point_on_edge(0, ratio(1, 2)).unwrap()));
        assert!(b.contains(&g.point_on_edge(3, ratio(3, 4)).unwrap()));
        assert!(b.is_connected(&g));
        assert!(!b.is_closed(&g));
        assert!(b.closure(&g).contains(&g.point_on_edge(0, ratio(1, 2)).unwrap()));
    }

    #[test]
    fn subpath_and_point_at() {
        let g = cycle(5);
        let p = g.shortest_path(&GraphPoint::vertex(0), &GraphPoint::vertex(2)).unwrap();
        assert_eq!(g.point_at(&p, &int(1)), GraphPoint::vertex(1));
        let sub = g.subpath(&p, &ratio(1, 2), &ratio(3, 2));
        assert_eq!(g.path_length(&sub), int(1));
        assert_eq!(sub.start, g.point_on_edge(0, ratio(1, 2)).unwrap());
    }
}
