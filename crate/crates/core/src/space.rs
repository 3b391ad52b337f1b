use num_traits::Zero;

use crate::error::{ConvexError, Result};
use crate::graph::{GraphPoint, MetricGraph};
use crate::interval_set::{Interval, IntervalSet};
use crate::point::Point;
use crate::polytope::Polytope;
use crate::rational::{self, Q};
use crate::region::Region;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Interval,
    MetricTree,
    Euclidean,
    Polyhedral,
}

/// A concrete convexity space.
#[derive(Clone, Debug)]
pub enum SpaceModel {
    Interval { a: Q, b: Q },
    Tree(MetricGraph),
    Euclidean { n: usize, bounds: Option<Polytope> },
    /// Metric graph after uniform subdivision; `base` keeps the unrefined input.
    Polyhedral { graph: MetricGraph, base: MetricGraph, refine: u32 },
}

impl SpaceModel {
    pub fn kind(&self) -> SpaceKind {
        match self {
            SpaceModel::Interval { .. } => SpaceKind::Interval,
            SpaceModel::Tree(_) => SpaceKind::MetricTree,
            SpaceModel::Euclidean { .. } => SpaceKind::Euclidean,
            SpaceModel::Polyhedral { .. } => SpaceKind::Polyhedral,
        }
    }

    pub fn graph(&self) -> Option<&MetricGraph> {
        match self {
            SpaceModel::Tree(g) | SpaceModel::Polyhedral { graph: g, .. } => Some(g),
            _ => None,
        }
    }

    pub(crate) fn expect_graph(&self) -> &MetricGraph {
        self.graph().expect("graph-backed model")
    }

    pub fn validate(&self, p: &Point) -> Result<()> {
        match (self, p) {
            (SpaceModel::Interval { a, b }, Point::Scalar(x)) => {
                if a <= x && x <= b {
                    Ok(())
                } else {
                    Err(ConvexError::InvalidPoint(format!(
                        "{} lies outside [{}, {}]",
                        rational::render(x),
                        rational::render(a),
                        rational::render(b)
                    )))
                }
            }
            (SpaceModel::Tree(g) | SpaceModel::Polyhedral { graph: g, .. }, Point::Graph(gp)) => {
                g.validate(gp)
            }
            (SpaceModel::Euclidean { n, bounds }, Point::Vector(v)) => {
                if v.len() != *n {
                    return Err(ConvexError::InvalidPoint(format!(
                        "expected {n} coordinates, got {}",
                        v.len()
                    )));
                }
                match bounds {
                    Some(b) if !b.contains(v) => {
                        Err(ConvexError::InvalidPoint(format!("{p} lies outside the bounding polytope")))
                    }
                    _ => Ok(()),
                }
            }
            _ => Err(ConvexError::ModelMismatch(format!("point {p} does not belong to a {:?} space", self.kind()))),
        }
    }

    /// The whole space as a region; `None` for unbounded Euclidean space.
    pub fn whole(&self) -> Option<Region> {
        match self {
            SpaceModel::Interval { a, b } => {
                Some(Region::Intervals(IntervalSet::from_interval(Interval::closed(a.clone(), b.clone()))))
            }
            SpaceModel::Tree(g) | SpaceModel::Polyhedral { graph: g, .. } => {
                let mut r = crate::graph::GraphRegion::default();
                r.vertices.extend(0..g.vertex_count());
                for i in 0..g.edges().len() {
                    r.add_edge_set(i, IntervalSet::from_interval(Interval::open(Q::zero(), rational::one())));
                }
                Some(Region::Graph(r))
            }
            SpaceModel::Euclidean { bounds, .. } => bounds.clone().map(|b| Region::Polytopes(vec![b])),
        }
    }

    /// Metric distance; graph models use shortest-path length.
    pub fn distance(&self, x: &Point, y: &Point) -> Q {
        match (x, y) {
            (Point::Scalar(a), Point::Scalar(b)) => rational::abs(&(a - b)),
            (Point::Graph(a), Point::Graph(b)) => self.expect_graph().distance(a, b),
            (Point::Vector(a), Point::Vector(b)) => {
                // Maximum norm keeps distances rational.
                a.iter().zip(b).map(|(p, q)| rational::abs(&(p - q))).max().unwrap_or_else(Q::zero)
            }
            _ => panic!("distance between points of different models"),
        }
    }

    pub fn graph_point(&self, edge: usize, t: Q) -> Result<Point> {
        let g = self
            .graph()
            .ok_or_else(|| ConvexError::ModelMismatch("graph point in a non-graph model".into()))?;
        Ok(Point::Graph(g.point_on_edge(edge, t)?))
    }
}

pub(crate) fn gp(p: &Point) -> &GraphPoint {
    p.graph().expect("graph point")
}
