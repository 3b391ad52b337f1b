//! File loading and the error split between bad input (exit 2) and failed
//! hypotheses (exit 1).

use std::path::Path;

use num_traits::Zero;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use convexa_core::atlas::{default_atlas, Atlas, AtlasConfig};
use convexa_core::factorization::examples;
use convexa_core::models::SpaceDoc;
use convexa_core::paths::PathDoc;
use convexa_core::rational::{self, int};
use convexa_core::{ConvexError, LinePath, MapDoc, Point, Region, SampledMap, SpaceModel, Q};

use crate::schema::{self, Kind};

/// A failure that aborts before any report: exit code 2.
#[derive(Debug)]
pub struct InputError {
    pub kind: &'static str,
    pub message: String,
    pub details: Vec<String>,
}

impl InputError {
    pub fn new(kind: &'static str, message: impl Into<String>) -> Self {
        InputError { kind, message: message.into(), details: Vec::new() }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"error": self.kind, "message": self.message});
        if !self.details.is_empty() {
            v["details"] = json!(self.details);
        }
        v
    }
}

/// Errors caused by the input itself rather than by the property under test.
pub fn is_input_error(e: &ConvexError) -> bool {
    matches!(
        e,
        ConvexError::InvalidPoint(_)
            | ConvexError::PointNotOnSegment(_)
            | ConvexError::BadEndpoints { .. }
            | ConvexError::NotATree(_)
            | ConvexError::DegenerateBounds(_)
            | ConvexError::NotConnected
            | ConvexError::CannotCover(_)
            | ConvexError::EmptyInput(_)
            | ConvexError::ModelMismatch(_)
            | ConvexError::Unsupported(_)
            | ConvexError::Parse(_)
    )
}

impl From<ConvexError> for InputError {
    fn from(e: ConvexError) -> Self {
        InputError::new("invalid-input", e.to_string())
    }
}

pub fn read_json(path: &Path) -> Result<Value, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::new("io", format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError::new("parse", format!("{}: {e}", path.display())))
}

/// Reads, validates against the published schema, then deserializes.
fn load<T: DeserializeOwned>(path: &Path, kind: Kind) -> Result<(T, Value), InputError> {
    let doc = read_json(path)?;
    schema::check(kind, &doc).map_err(|details| InputError {
        kind: "schema",
        message: format!("{} does not match {}", path.display(), kind.file()),
        details,
    })?;
    let t = serde_json::from_value(doc.clone())
        .map_err(|e| InputError::new("schema", format!("{}: {e}", path.display())))?;
    Ok((t, doc))
}

pub fn space(path: &Path) -> Result<(SpaceModel, Value), InputError> {
    let (parsed, doc): (SpaceDoc, _) = load(path, Kind::Space)?;
    Ok((parsed.build()?, doc))
}

pub fn path_points(path: &Path, space: &SpaceModel) -> Result<(Vec<Point>, Value), InputError> {
    let (parsed, doc): (PathDoc, _) = load(path, Kind::Path)?;
    for p in &parsed.breakpoints {
        space.validate(p)?;
    }
    Ok((parsed.breakpoints, doc))
}

pub fn region(path: &Path) -> Result<(Region, Value), InputError> {
    load(path, Kind::Region)
}

pub struct MapInput {
    pub map: SampledMap,
    pub preset: Option<String>,
    pub doc: Value,
}

/// A map file, or `preset:NAME` for a shipped map.
pub fn map(arg: &str, size: Option<usize>) -> Result<MapInput, InputError> {
    if let Some(name) = arg.strip_prefix("preset:") {
        if !examples::PRESETS.contains(&name) {
            return Err(InputError::new(
                "invalid-input",
                format!("unknown map preset {name:?}; known: {}", examples::PRESETS.join(", ")),
            ));
        }
        let map = examples::preset(name, size)?;
        let doc = json!({"preset": name, "size": size});
        return Ok(MapInput { map, preset: Some(name.to_string()), doc });
    }
    let (parsed, doc): (MapDoc, _) = load(Path::new(arg), Kind::Map)?;
    Ok(MapInput { map: parsed.build()?, preset: None, doc })
}

pub fn rational_flag(name: &str, s: &str) -> Result<Q, InputError> {
    rational::parse(s).map_err(|_| InputError::new("usage", format!("--{name} expects a rational, got {s:?}")))
}

fn floor(q: &Q) -> Q {
    Q::from_integer(q.floor().to_integer())
}

fn ceil(q: &Q) -> Q {
    Q::from_integer(q.ceil().to_integer())
}

/// Fills in what the base config lacks: the granularity override and, for an
/// unbounded Euclidean space, an integer box one unit beyond the given points.
pub fn atlas_config(space: &SpaceModel, base: AtlasConfig, granularity: Option<&Q>, pts: &[Point]) -> AtlasConfig {
    let mut cfg = base;
    if let Some(g) = granularity {
        cfg.granularity = g.clone();
    }
    if let SpaceModel::Euclidean { n, bounds: None } = space {
        if cfg.extent.is_none() {
            let vs: Vec<&[Q]> = pts.iter().filter_map(|p| p.vector()).collect();
            let (lo, hi): (Vec<Q>, Vec<Q>) = if vs.is_empty() {
                (vec![int(-2); *n], vec![int(2); *n])
            } else {
                (0..*n)
                    .map(|i| {
                        let lo = vs.iter().map(|v| &v[i]).min().unwrap();
                        let hi = vs.iter().map(|v| &v[i]).max().unwrap();
                        (floor(lo) - int(1), ceil(hi) + int(1))
                    })
                    .unzip()
            };
            cfg = cfg.with_extent(&lo, &hi);
        }
    }
    cfg
}

pub fn atlas(space: &SpaceModel, cfg: &AtlasConfig) -> Result<Atlas, InputError> {
    if cfg.granularity <= Q::zero() {
        return Err(InputError::new("usage", "--atlas-granularity must be positive"));
    }
    Ok(default_atlas(space, cfg)?)
}

/// Line path through the points. A leg that fits no chart is cut at equal
/// steps along its segment until every piece does, so the point set is kept.
pub fn line_path(space: &SpaceModel, atlas: &Atlas, pts: &[Point]) -> Result<(LinePath, bool), InputError> {
    let mut out: Vec<Point> = vec![pts[0].clone()];
    let mut refined = false;
    for w in pts.windows(2) {
        if w[0] == w[1] || atlas.common_chart(&w[0], &w[1]).is_some() {
            out.push(w[1].clone());
            continue;
        }
        let seg = convexa_core::segment(space, &w[0], &w[1])?;
        let len = seg.extent(space);
        let mut pieces = 2i64;
        loop {
            let cut: Vec<Point> =
                (0..=pieces).map(|k| seg.point_at(space, &(&len * rational::ratio(k, pieces)))).collect();
            if cut.windows(2).all(|c| c[0] == c[1] || atlas.common_chart(&c[0], &c[1]).is_some()) {
                out.extend(cut.into_iter().skip(1));
                refined = true;
                break;
            }
            if pieces > 1 << 16 {
                return Err(InputError::new(
                    "invalid-input",
                    format!("the leg from {} to {} cannot be covered by charts", w[0], w[1]),
                ));
            }
            pieces *= 2;
        }
    }
    Ok((LinePath::through(space, atlas, out)?, refined))
}

pub fn suggested(preset: Option<&str>) -> AtlasConfig {
    preset.map(examples::suggested_atlas).unwrap_or_default()
}
