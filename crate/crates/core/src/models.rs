//! Constructors for the four model families and named presets.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ConvexError, Result};
use crate::graph::{GraphEdge, MetricGraph};
use crate::polytope::{Polytope, PolytopeRepr};
use crate::rational::{self, Q};
use crate::space::SpaceModel;

pub fn make_interval(a: Q, b: Q) -> Result<SpaceModel> {
    if a >= b {
        return Err(ConvexError::BadEndpoints { a: rational::render(&a), b: rational::render(&b) });
    }
    Ok(SpaceModel::Interval { a, b })
}

pub fn make_tree(vertex_count: usize, edges: Vec<GraphEdge>) -> Result<SpaceModel> {
    let g = MetricGraph::new(vertex_count, edges).map_err(|e| match e {
        ConvexError::NotConnected => ConvexError::NotATree("graph is disconnected".into()),
        other => other,
    })?;
    if !g.is_acyclic() {
        return Err(ConvexError::NotATree("graph contains a cycle".into()));
    }
    Ok(SpaceModel::Tree(g))
}

pub fn make_euclidean(n: usize, bounds: Option<Polytope>) -> Result<SpaceModel> {
    if n == 0 {
        return Err(ConvexError::DegenerateBounds("dimension must be positive".into()));
    }
    if let Some(b) = &bounds {
        if b.ambient_dim() != n {
            return Err(ConvexError::DegenerateBounds(format!(
                "bounding polytope lives in dimension {}, space has {n}",
                b.ambient_dim()
            )));
        }
        if b.dim() != n {
            return Err(ConvexError::DegenerateBounds("bounding polytope is not full-dimensional".into()));
        }
    }
    Ok(SpaceModel::Euclidean { n, bounds: bounds.map(|b| b.closure()) })
}

/// Splits every edge into `2^refine` equal pieces. Original vertices keep their ids.
pub fn subdivide(base: &MetricGraph, refine: u32) -> Result<MetricGraph> {
    let pieces = 1usize << refine;
    let mut n = base.vertex_count();
    let mut edges = Vec::with_capacity(base.edges().len() * pieces);
    let denom = Q::from_integer(pieces.into());
    for e in base.edges() {
        let len = &e.length / &denom;
        let mut prev = e.u;
        for k in 1..=pieces {
            let next = if k == pieces {
                e.v
            } else {
                n += 1;
                n - 1
            };
            edges.push(GraphEdge { u: prev, v: next, length: len.clone() });
            prev = next;
        }
    }
    MetricGraph::new(n, edges)
}

pub fn make_polyhedral(vertex_count: usize, edges: Vec<GraphEdge>, refine: u32) -> Result<SpaceModel> {
    let base = MetricGraph::new(vertex_count, edges)?;
    let graph = subdivide(&base, refine)?;
    Ok(SpaceModel::Polyhedral { graph, base, refine })
}

fn edge(u: usize, v: usize, length: Q) -> GraphEdge {
    GraphEdge { u, v, length }
}

/// Finite approximation of a tree continuum: a spine of `depth` edges whose
/// interior vertices carry two side branches of `width` edges each, so every
/// interior spine vertex has degree 4. Edge lengths shrink along the spine.
pub fn branching_tree(depth: usize, width: usize) -> Result<SpaceModel> {
    let depth = depth.max(2);
    let mut edges = Vec::new();
    let mut n = depth + 1;
    for k in 0..depth {
        edges.push(edge(k, k + 1, rational::ratio(1, (k + 1) as i64)));
    }
    for k in 1..depth {
        for _side in 0..2 {
            let mut prev = k;
            for j in 0..width.max(1) {
                edges.push(edge(prev, n, rational::ratio(1, ((k + 1) * (j + 2)) as i64)));
                prev = n;
                n += 1;
            }
        }
    }
    make_tree(n, edges)
}

/// Boundary of a triangle with unit sides.
pub fn triangle_boundary(refine: u32) -> Result<SpaceModel> {
    make_polyhedral(3, vec![edge(0, 1, Q::one()), edge(1, 2, Q::one()), edge(2, 0, Q::one())], refine)
}

/// A `cells`-long ladder: bottom vertices `0..=cells`, top vertices after them.
/// Each edge carries a distinct dyadic perturbation so that no two distinct
/// vertex-to-vertex routes have equal length.
pub fn strip(cells: usize, refine: u32) -> Result<SpaceModel> {
    let top = |i: usize| cells + 1 + i;
    let mut raw: Vec<(usize, usize, i64)> = Vec::new();
    for i in 0..cells {
        raw.push((i, i + 1, 4));
        raw.push((top(i), top(i + 1), 4));
    }
    for i in 0..=cells {
        raw.push((i, top(i), 3));
    }
    let scale = Q::from_integer(num_bigint::BigInt::one() << (raw.len() + 8));
    let edges = raw
        .into_iter()
        .enumerate()
        .map(|(k, (u, v, len))| {
            let bump = Q::from_integer(num_bigint::BigInt::one() << k) / &scale;
            edge(u, v, rational::int(len) + bump)
        })
        .collect();
    make_polyhedral(2 * (cells + 1), edges, refine)
}

/// The standard simplex `{x >= 0, sum x <= 1}` in `R^n`.
pub fn simplex(n: usize) -> Result<SpaceModel> {
    let mut vs = vec![vec![Q::zero(); n]];
    for i in 0..n {
        let mut v = vec![Q::zero(); n];
        v[i] = Q::one();
        vs.push(v);
    }
    make_euclidean(n, Some(Polytope::hull(vs, false)?))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub u: usize,
    pub v: usize,
    #[serde(with = "rational::serde_q")]
    pub length: Q,
}

/// JSON form of a space.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceDoc {
    Interval {
        #[serde(with = "rational::serde_q")]
        a: Q,
        #[serde(with = "rational::serde_q")]
        b: Q,
    },
    MetricTree { vertices: usize, edges: Vec<EdgeDoc> },
    Euclidean {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bounds: Option<PolytopeRepr>,
    },
    Polyhedral {
        vertices: usize,
        edges: Vec<EdgeDoc>,
        #[serde(default)]
        refine: u32,
    },
    Preset {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        depth: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        width: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        refine: Option<u32>,
    },
}

fn to_edges(es: Vec<EdgeDoc>) -> Vec<GraphEdge> {
    es.into_iter().map(|e| edge(e.u, e.v, e.length)).collect()
}

fn from_edges(es: &[GraphEdge]) -> Vec<EdgeDoc> {
    es.iter().map(|e| EdgeDoc { u: e.u, v: e.v, length: e.length.clone() }).collect()
}

impl SpaceDoc {
    pub fn build(self) -> Result<SpaceModel> {
        match self {
            SpaceDoc::Interval { a, b } => make_interval(a, b),
            SpaceDoc::MetricTree { vertices, edges } => make_tree(vertices, to_edges(edges)),
            SpaceDoc::Euclidean { n, bounds } => {
                make_euclidean(n, bounds.map(Polytope::try_from).transpose()?)
            }
            SpaceDoc::Polyhedral { vertices, edges, refine } => {
                make_polyhedral(vertices, to_edges(edges), refine)
            }
            SpaceDoc::Preset { name, depth, width, n, refine } => match name.as_str() {
                "branching-tree" => branching_tree(depth.unwrap_or(4), width.unwrap_or(2)),
                "simplex-atlas" => simplex(n.unwrap_or(2)),
                "triangle" => triangle_boundary(refine.unwrap_or(0)),
                "strip" => strip(n.unwrap_or(6), refine.unwrap_or(0)),
                other => Err(ConvexError::Parse(format!("unknown preset {other:?}"))),
            },
        }
    }

    /// Explicit (non-preset) description of a space.
    pub fn describe(space: &SpaceModel) -> SpaceDoc {
        match space {
            SpaceModel::Interval { a, b } => SpaceDoc::Interval { a: a.clone(), b: b.clone() },
            SpaceModel::Tree(g) => {
                SpaceDoc::MetricTree { vertices: g.vertex_count(), edges: from_edges(g.edges()) }
            }
            SpaceModel::Euclidean { n, bounds } => {
                SpaceDoc::Euclidean { n: *n, bounds: bounds.clone().map(Into::into) }
            }
            SpaceModel::Polyhedral { base, refine, .. } => SpaceDoc::Polyhedral {
                vertices: base.vertex_count(),
                edges: from_edges(base.edges()),
                refine: *refine,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn interval_needs_order() {
        assert!(make_interval(int(0), int(1)).is_ok());
        assert!(matches!(make_interval(int(1), int(1)), Err(ConvexError::BadEndpoints { .. })));
    }

    #[test]
    fn tree_rejects_cycles() {
        let cyc = vec![edge(0, 1, int(1)), edge(1, 2, int(1)), edge(2, 0, int(1))];
        assert!(matches!(make_tree(3, cyc), Err(ConvexError::NotATree(_))));
        assert!(matches!(make_tree(3, vec![edge(0, 1, int(1))]), Err(ConvexError::NotATree(_))));
    }

    #[test]
    fn branching_tree_branch_degrees() {
        let SpaceModel::Tree(g) = branching_tree(4, 2).unwrap() else { panic!() };
        for k in 1..4 {
            assert_eq!(g.neighbors(k).len(), 4);
        }
    }

    #[test]
    fn subdivision_preserves_base_distances() {
        let s = strip(3, 2).unwrap();
        let SpaceModel::Polyhedral { graph, base, .. } = &s else { panic!() };
        for u in 0..base.vertex_count() {
            let d0 = base.vertex_distances(&crate::graph::GraphPoint::vertex(u));
            let d1 = graph.vertex_distances(&crate::graph::GraphPoint::vertex(u));
            assert_eq!(d0[..], d1[..base.vertex_count()]);
        }
    }

    #[test]
    fn spec_round_trip() {
        let s = strip(2, 1).unwrap();
        let text = serde_json::to_string(&SpaceDoc::describe(&s)).unwrap();
        let back: SpaceDoc = serde_json::from_str(&text).unwrap();
        let s2 = back.build().unwrap();
        assert_eq!(text, serde_json::to_string(&SpaceDoc::describe(&s2)).unwrap());
    }
}
