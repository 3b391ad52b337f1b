use serde::Serialize;

use crate::atlas::Atlas;
use crate::error::{ConvexError, Result};
use crate::factorization::quotient::filtered_quotient_unchecked;
use crate::factorization::{lift_atlas, verify_etale, LiftedStructure, SampledMap, DEFAULT_DEPTH};
use crate::paths::StraightenConfig;
use crate::paths::{chart_chain, is_minimal_arc, line_path_from_chain, straighten};
use crate::point::Point;

use super::local::is_locally_convex_map;

#[derive(Clone, Debug, Serialize)]
pub struct LgpConfig {
    pub depth: usize,
    pub pair_budget: usize,
    pub straighten: StraightenConfig,
}

impl Default for LgpConfig {
    fn default() -> Self {
        LgpConfig { depth: DEFAULT_DEPTH, pair_budget: 64, straighten: StraightenConfig::default() }
    }
}

/// A connecting geodesic: breakpoints in the quotient's lifted structure and their images.
#[derive(Clone, Debug, Serialize)]
pub struct PairGeodesic {
    pub classes: (usize, usize),
    pub image_pair: (Point, Point),
    pub lifted: Vec<Point>,
    pub image: Vec<Point>,
    pub rounds: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairFailure {
    pub classes: (usize, usize),
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeakConvexityReport {
    pub pairs_checked: usize,
    pub geodesics: Vec<PairGeodesic>,
    pub failures: Vec<PairFailure>,
    pub quotient_classes: usize,
    pub global_lift: bool,
    pub lifted_charts: usize,
    /// Closedness of f# is certified on the finite model only.
    pub closedness: String,
    pub config: LgpConfig,
}

impl WeakConvexityReport {
    pub fn weakly_convex(&self) -> bool {
        self.failures.is_empty()
    }
}

fn hypothesis(h: &str, witness: String) -> ConvexError {
    ConvexError::HypothesisFailed { hypothesis: h.into(), witness }
}

/// Deterministic farthest-point order over the image, from the least image point.
pub fn farthest_points(map: &SampledMap, count: usize) -> Vec<usize> {
    let n = map.vertex_count();
    let count = count.min(n);
    if count == 0 {
        return Vec::new();
    }
    let first = (0..n).min_by(|&a, &b| map.value(a).cmp(map.value(b)).then(a.cmp(&b))).unwrap();
    let mut chosen = vec![first];
    let mut gap: Vec<_> = (0..n).map(|v| map.target.distance(map.value(first), map.value(v))).collect();
    while chosen.len() < count {
        let next = (0..n).max_by(|&a, &b| gap[a].cmp(&gap[b]).then(b.cmp(&a))).unwrap();
        if gap[next] == num_traits::Zero::zero() {
            break;
        }
        chosen.push(next);
        for v in 0..n {
            let d = map.target.distance(map.value(next), map.value(v));
            if d < gap[v] {
                gap[v] = d;
            }
        }
    }
    chosen
}

/// Canonical pairs among farthest points, truncated to the budget.
pub fn sample_pairs(map: &SampledMap, budget: usize) -> Vec<(usize, usize)> {
    let mut k = 2;
    while k * (k - 1) / 2 < budget {
        k += 1;
    }
    let pts = farthest_points(map, k);
    let mut pairs = Vec::new();
    for j in 1..pts.len() {
        for i in 0..j {
            pairs.push((pts[i], pts[j]));
        }
    }
    pairs.truncate(budget);
    pairs
}

/// Connects one pair in the lifted structure.
pub fn connect(lifted: &LiftedStructure, a: usize, b: usize, cfg: &StraightenConfig) -> Result<PairGeodesic> {
    let (space, atlas) = (&lifted.space, &lifted.atlas);
    let (x, y) = (&lifted.points[a], &lifted.points[b]);
    let chain = chart_chain(space, atlas, x, y)?;
    let path = line_path_from_chain(space, atlas, &chain)?;
    let done = straighten(space, atlas, &path, cfg)?;
    let rounds = done.rounds;
    let path = done.into_result()?;
    if !is_minimal_arc(space, &path)? {
        return Err(ConvexError::NoChain("straightened path is not a minimal arc".into()));
    }
    let image = path.breakpoints.iter().map(|p| lifted.push_down(p)).collect::<Result<Vec<_>>>()?;
    Ok(PairGeodesic {
        classes: (a, b),
        image_pair: (lifted.push_down(x)?, lifted.push_down(y)?),
        lifted: path.breakpoints,
        image,
        rounds,
    })
}

/// Runs the local-to-global pipeline: filtered quotient, étale certificate,
/// lifted atlas, then geodesics between sampled image pairs.
pub fn verify_weak_convexity(map: &SampledMap, atlas: &Atlas, cfg: &LgpConfig) -> Result<WeakConvexityReport> {
    let local = is_locally_convex_map(map, atlas, cfg.depth)?;
    if let Some(w) = local.witness {
        return Err(hypothesis("local convexity", format!("vertex {} ({}): {}", w.vertex, w.image, w.reason)));
    }
    if !map.is_connected() {
        return Err(hypothesis("connected domain", "the sampled domain has several components".into()));
    }
    // Local convexity already established openness at this depth.
    let fac = filtered_quotient_unchecked(map, cfg.depth.max(1))?;
    let cert = verify_etale(atlas, &fac.quotient).map_err(|e| hypothesis("f# closed and etale", e.to_string()))?;
    let lifted = lift_atlas(atlas, &fac.quotient, &cert).map_err(|e| hypothesis("chart lifts", e.to_string()))?;
    let pairs = if fac.quotient.vertex_count() == 1 { Vec::new() } else { sample_pairs(&fac.quotient, cfg.pair_budget) };
    let mut geodesics = Vec::new();
    let mut failures = Vec::new();
    for &(a, b) in &pairs {
        match connect(&lifted, a, b, &cfg.straighten) {
            Ok(g) => geodesics.push(g),
            Err(e) => failures.push(PairFailure { classes: (a, b), reason: e.to_string() }),
        }
    }
    Ok(WeakConvexityReport {
        pairs_checked: pairs.len(),
        geodesics,
        failures,
        quotient_classes: fac.classes.len(),
        global_lift: cert.global,
        lifted_charts: lifted.atlas.len(),
        closedness: format!("{} surrogate, {} limit vertices checked", cert.closedness.surrogate, cert.closedness.open_vertices_checked),
        config: cfg.clone(),
    })
}
