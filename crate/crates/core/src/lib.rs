pub mod atlas;
pub mod axioms;
pub mod convexity;
pub mod error;
pub mod factorization;
pub mod graph;
pub mod interval_set;
pub mod lgp;
pub mod linalg;
pub mod models;
pub mod paths;
pub mod point;
pub mod polytope;
pub mod rational;
pub mod region;
pub mod segment;
pub mod sampling;
pub mod space;

pub use error::{ConvexError, Result};
pub use graph::{GraphEdge, GraphPath, GraphPoint, GraphRegion, MetricGraph, Piece};
pub use interval_set::{Interval, IntervalSet};
pub use point::Point;
pub use polytope::Polytope;
pub use rational::Q;
pub use region::Region;
pub use segment::{segment, segment_order, split, Segment, SegmentRep};
pub use space::{SpaceKind, SpaceModel};
pub use convexity::{build_star, closure, convex_hull, convexity_witness, is_convex, Star};
pub use atlas::{default_atlas, Atlas, AtlasConfig, Chart};
pub use axioms::{check_axioms, AxiomReport, ClauseResult};
pub use paths::{chart_chain, hull_compare, is_minimal_arc, line_path_from_chain, simplify, straighten, LinePath};
pub use factorization::{
    filtered_quotient, is_locally_open_onto_image, lift_atlas, monotone_light, verify_etale, EtaleCertificate,
    Factorization, LiftedStructure, MapDoc, SampledMap,
};
pub use lgp::{klee_check, momentum_demo, verify_weak_convexity, KleeVerdict, LgpConfig, WeakConvexityReport};
