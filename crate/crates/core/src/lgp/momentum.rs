//! Torus momentum map μ(z) = (|z_1|², …, |z_n|²) on the unit sphere of C^(n+1).
//!
//! μ factors through the squared moduli, which range over the standard simplex,
//! so the phases are dropped and the simplex is sampled directly on the lattice
//! of denominator `resolution`, Kuhn-triangulated.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::atlas::{default_atlas, AtlasConfig};
use crate::error::{ConvexError, Result};
use crate::factorization::SampledMap;
use crate::models;
use crate::point::Point;
use crate::rational::{self, int, ratio, Q};

use super::weak::{verify_weak_convexity, LgpConfig, WeakConvexityReport};

/// Largest lattice the demo will build.
pub const MAX_VERTICES: usize = 2_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct HullComparison {
    pub fixed_points: Vec<Point>,
    /// Every sample satisfies the inequalities of the fixed-point hull.
    pub image_in_hull: bool,
    pub fixed_points_attained: bool,
    /// Each hull facet carries an affinely spanning set of samples.
    pub facets_match: bool,
    #[serde(with = "rational::serde_q")]
    pub grid_spacing: Q,
    /// Upper bound on the Hausdorff distance (max norm) between samples and hull.
    #[serde(with = "rational::serde_q")]
    pub hausdorff_bound: Q,
    #[serde(with = "rational::serde_q")]
    pub tolerance: Q,
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentumDemo {
    pub n: usize,
    pub resolution: usize,
    pub vertices: usize,
    pub cells: usize,
    pub report: WeakConvexityReport,
    pub hull: HullComparison,
    #[serde(skip)]
    pub map: SampledMap,
}

/// Lattice points of {k ∈ Z^n : k ≥ 0, Σk ≤ r} in lexicographic order.
fn lattice(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
    }
    rec(0, r, &mut cur, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Kuhn triangulation of the simplex lattice.
///
/// In cumulative coordinates y_i = k_i + … + k_n the simplex is the chain
/// r ≥ y_1 ≥ … ≥ y_n ≥ 0, a union of whole Kuhn simplices of the unit cubes.
pub fn simplex_complex(n: usize, r: usize) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    let pts = lattice(n, r);
    if pts.len() > MAX_VERTICES {
        return Err(ConvexError::Unsupported(format!("{} lattice points exceed the demo limit", pts.len())));
    }
    let index: BTreeMap<Vec<usize>, usize> = pts.iter().enumerate().map(|(i, p)| (to_y(p), i)).collect();
    let perms = permutations(n);
    let mut cells = Vec::new();
    let ranges: Vec<usize> = vec![r; n];
    let mut base = vec![0usize; n];
    loop {
        for p in &perms {
            let mut y = base.clone();
            let mut cell = Vec::with_capacity(n + 1);
            let mut ok = index.get(&y).map(|&i| cell.push(i)).is_some();
            for &axis in p {
                if !ok {
                    break;
                }
                y[axis] += 1;
                ok = index.get(&y).map(|&i| cell.push(i)).is_some();
            }
            if ok {
                cells.push(cell);
            }
        }
        let mut d = n;
        loop {
            if d == 0 {
                return Ok((pts, cells));
            }
            d -= 1;
            base[d] += 1;
            if base[d] < ranges[d] {
                break;
            }
            base[d] = 0;
        }
    }
}

fn to_y(k: &[usize]) -> Vec<usize> {
    let mut y = vec![0; k.len()];
    let mut acc = 0;
    for i in (0..k.len()).rev() {
        acc += k[i];
        y[i] = acc;
    }
    y
}

/// The sampled momentum map into R^n.
pub fn momentum_map(n: usize, resolution: usize) -> Result<SampledMap> {
    if n == 0 || resolution == 0 {
        return Err(ConvexError::ResolutionTooCoarse { resolution, detail: "n and resolution must be positive".into() });
    }
    let (pts, cells) = simplex_complex(n, resolution)?;
    let r = resolution as i64;
    let values = pts.iter().map(|k| Point::Vector(k.iter().map(|&x| ratio(x as i64, r)).collect())).collect();
    SampledMap::new(models::make_euclidean(n, None)?, values, &[], cells, BTreeSet::new())
}

/// Target atlas: boxes of radius 1/2 over [-1/2, 3/2]^n.
pub fn momentum_atlas_config(n: usize) -> AtlasConfig {
    AtlasConfig::with_granularity(ratio(1, 2)).with_extent(&vec![ratio(-1, 2); n], &vec![ratio(3, 2); n])
}

/// Compares the sampled image with the hull of the fixed-point images {0, e_1, …, e_n}.
pub fn compare_with_hull(n: usize, resolution: usize, map: &SampledMap) -> HullComparison {
    let h = ratio(1, resolution as i64);
    let mut fixed = vec![Point::Vector(vec![int(0); n])];
    for i in 0..n {
        let mut e = vec![int(0); n];
        e[i] = int(1);
        fixed.push(Point::Vector(e));
    }
    let samples: Vec<&[Q]> = map.values().iter().map(|p| p.vector().expect("vector")).collect();
    let sum = |v: &[Q]| v.iter().fold(int(0), |s, x| s + x);
    let image_in_hull = samples.iter().all(|v| v.iter().all(|x| x >= &int(0)) && sum(v) <= int(1));
    let present: BTreeSet<&Point> = map.values().iter().collect();
    let fixed_points_attained = fixed.iter().all(|p| present.contains(p));
    // Facets: x_i = 0 for each i, and Σx = 1; each needs n affinely independent samples.
    let mut facets_match = true;
    for f in 0..=n {
        let on: Vec<Vec<Q>> = samples
            .iter()
            .filter(|v| if f < n { v[f] == int(0) } else { sum(v) == int(1) })
            .take(4096)
            .map(|v| v.to_vec())
            .collect();
        let spanned = on.len() >= n && {
            let rows: Vec<Vec<Q>> = on[1..].iter().map(|v| crate::linalg::sub(v, &on[0])).collect();
            crate::linalg::rank(rows, n) == n - 1
        };
        facets_match &= spanned || n == 0;
    }
    // Probes on the half-spacing lattice of the hull; the nearest sample to a
    // probe is its coordinatewise floor on the sampling lattice.
    let probe_den = 2 * resolution;
    let worst_num = lattice(n, probe_den).iter().flat_map(|k| k.iter().map(|x| x % 2)).max().unwrap_or(0);
    let worst = ratio(worst_num as i64, probe_den as i64);
    // Any hull point lies within half a probe spacing of some probe.
    let hausdorff_bound = if image_in_hull { worst + &h / int(2) } else { int(1) };
    let tolerance = int(2) * &h;
    HullComparison {
        fixed_points: fixed,
        image_in_hull,
        fixed_points_attained,
        facets_match,
        grid_spacing: h,
        hausdorff_bound,
        tolerance,
    }
}

/// Builds the sampled map, runs the weak-convexity pipeline and the hull comparison.
pub fn momentum_demo(n: usize, resolution: usize, cfg: &LgpConfig) -> Result<MomentumDemo> {
    let map = momentum_map(n, resolution)?;
    let atlas = default_atlas(&map.target, &momentum_atlas_config(n))?;
    let report = verify_weak_convexity(&map, &atlas, cfg)?;
    let hull = compare_with_hull(n, resolution, &map);
    if !(hull.image_in_hull && hull.fixed_points_attained && hull.facets_match && hull.hausdorff_bound <= hull.tolerance) {
        return Err(ConvexError::ResolutionTooCoarse {
            resolution,
            detail: format!("hull comparison bound {} exceeds {}", rational::render(&hull.hausdorff_bound), rational::render(&hull.tolerance)),
        });
    }
    Ok(MomentumDemo { n, resolution, vertices: map.vertex_count(), cells: map.cells().len(), report, hull, map })
}
