//! Integer fast path for simplicial geometry in dimensions up to 3.
//! Inputs are coordinates below 2^31, so every product here fits in i128.

use std::collections::{BTreeMap, BTreeSet};

pub type Plane = (Vec<i128>, i128);

/// Hyperplane `a·x = b` through `n` points of Z^n (n ≤ 3); `None` when degenerate.
pub fn hyperplane(pts: &[&[i64]]) -> Option<Plane> {
    let n = pts[0].len();
    let d = |i: usize| -> Vec<i128> { (0..n).map(|k| pts[i][k] as i128 - pts[0][k] as i128).collect() };
    let a: Vec<i128> = match n {
        1 => vec![1],
        2 => {
            let u = d(1);
            vec![-u[1], u[0]]
        }
        3 => {
            let (u, v) = (d(1), d(2));
            vec![u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
        }
        _ => return None,
    };
    if a.iter().all(|&x| x == 0) {
        return None;
    }
    let b = dot(&a, pts[0]);
    Some((a, b))
}

fn dot(a: &[i128], p: &[i64]) -> i128 {
    a.iter().zip(p).map(|(x, &y)| x * y as i128).sum()
}

pub fn side(h: &Plane, p: &[i64]) -> i128 {
    dot(&h.0, p) - h.1
}

/// Plane oriented so that `inside` is strictly negative.
pub fn oriented(pts: &[&[i64]], inside: &[i64]) -> Option<Plane> {
    let (a, b) = hyperplane(pts)?;
    let s = dot(&a, inside) - b;
    match s.signum() {
        0 => None,
        1 => Some((a.iter().map(|x| -x).collect(), -b)),
        _ => Some((a, b)),
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Scales a plane to primitive integer form for deduplication.
pub fn primitive(h: Plane) -> Plane {
    let g = h.0.iter().fold(h.1, |g, &x| gcd(g, x));
    if g <= 1 {
        return h;
    }
    (h.0.iter().map(|x| x / g).collect(), h.1 / g)
}

fn facets_of(c: &[usize]) -> impl Iterator<Item = (Vec<usize>, usize)> + '_ {
    (0..c.len()).map(move |skip| {
        (c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect(), c[skip])
    })
}

/// Facet-support convexity test.
pub fn facet_support(pts: &[Vec<i64>], cells: &[&[usize]], dedupe: bool) -> bool {
    let mut owners: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for c in cells {
        for (f, apex) in facets_of(c) {
            owners.entry(f).or_default().push(apex);
        }
    }
    let verts: BTreeSet<usize> = cells.iter().flat_map(|c| c.iter().copied()).collect();
    let mut planes = BTreeSet::new();
    for (f, apexes) in owners.into_iter().filter(|(_, a)| a.len() == 1) {
        let fp: Vec<&[i64]> = f.iter().map(|&v| pts[v].as_slice()).collect();
        let Some(h) = oriented(&fp, &pts[apexes[0]]) else { return false };
        if dedupe {
            planes.insert(primitive(h));
        } else if verts.iter().any(|&v| side(&h, &pts[v]) > 0) {
            return false;
        }
    }
    planes.iter().all(|h| verts.iter().all(|&v| side(h, &pts[v]) <= 0))
}

/// Nondegenerate cells, each interior facet separating its two apexes.
pub fn locally_injective(pts: &[Vec<i64>], cells: &[&[usize]]) -> bool {
    let mut owners: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for c in cells {
        let mut fs = facets_of(c);
        let (f0, apex0) = fs.next().expect("cell has a facet");
        let fp: Vec<&[i64]> = f0.iter().map(|&v| pts[v].as_slice()).collect();
        if oriented(&fp, &pts[apex0]).is_none() {
            return false;
        }
        owners.entry(f0).or_default().push(apex0);
        for (f, apex) in fs {
            owners.entry(f).or_default().push(apex);
        }
    }
    for (f, apexes) in owners {
        match apexes.len() {
            1 => {}
            2 => {
                let fp: Vec<&[i64]> = f.iter().map(|&v| pts[v].as_slice()).collect();
                let Some(h) = oriented(&fp, &pts[apexes[0]]) else { return false };
                if side(&h, &pts[apexes[1]]) <= 0 {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

/// Number of cells whose closed image holds the centroid of `probe`.
pub fn multiplicity_at_centroid(pts: &[Vec<i64>], cells: &[&[usize]], probe: &[usize]) -> usize {
    let n = pts[0].len();
    let k = probe.len() as i128;
    let scaled: Vec<i128> = (0..n).map(|i| probe.iter().map(|&v| pts[v][i] as i128).sum()).collect();
    let at = |h: &Plane| -> i128 { h.0.iter().zip(&scaled).map(|(a, x)| a * x).sum::<i128>() - k * h.1 };
    cells
        .iter()
        .filter(|c| {
            facets_of(c).all(|(f, apex)| {
                let fp: Vec<&[i64]> = f.iter().map(|&v| pts[v].as_slice()).collect();
                oriented(&fp, &pts[apex]).is_some_and(|h| at(&h) <= 0)
            })
        })
        .count()
}
