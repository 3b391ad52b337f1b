use thiserror::Error;

/// Every failure surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvexError {
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("two distinct shortest paths join {from} and {to}")]
    NonUniqueGeodesic { from: String, to: String },
    #[error("point {0} does not lie on the segment")]
    PointNotOnSegment(String),
    #[error("convex hull did not stabilize within {budget} closure rounds")]
    HullNotFinitelyRepresentable { budget: usize },
    #[error("star arms towards {first} and {second} share more than the center")]
    ArmsOverlap { first: String, second: String },
    #[error("interval endpoints must satisfy a < b (got {a} and {b})")]
    BadEndpoints { a: String, b: String },
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("degenerate bounds: {0}")]
    DegenerateBounds(String),
    #[error("complex is not connected")]
    NotConnected,
    #[error("cannot cover the space with convex charts: {0}")]
    CannotCover(String),
    #[error("no chart chain joins the endpoints: {0}")]
    NoChain(String),
    #[error("straightening did not converge within {rounds} rounds")]
    MaxRoundsExceeded { rounds: usize },
    #[error("map is not locally open onto its image at vertex {vertex} (level {level})")]
    NotLocallyOpen { vertex: usize, level: usize },
    #[error("map is not etale: clause {clause} fails ({witness})")]
    NotEtale { clause: String, witness: String },
    #[error("hypothesis failed: {hypothesis} ({witness})")]
    HypothesisFailed { hypothesis: String, witness: String },
    #[error("resolution {resolution} cannot certify the hull comparison: {detail}")]
    ResolutionTooCoarse { resolution: usize, detail: String },
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = ConvexError> = std::result::Result<T, E>;
