use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{ConvexError, Result};
use crate::point::Point;

use super::neighborhoods::NeighborhoodFamily;
use super::openness::is_locally_open_onto_image;
use super::sampled::SampledMap;

/// f = f_sharp ∘ q on a sampled map. Classes are sorted and numbered by
/// their least vertex, which makes the result independent of labeling order.
#[derive(Clone, Debug, Serialize)]
pub struct Factorization {
    pub classes: Vec<Vec<usize>>,
    pub q: Vec<usize>,
    pub quotient_edges: Vec<(usize, usize)>,
    pub f_sharp: Vec<Point>,
    pub f_sharp_injective: bool,
    pub f_sharp_locally_injective: bool,
    #[serde(skip)]
    pub quotient: SampledMap,
}

impl Factorization {
    /// Builds the factorization from a class label per vertex.
    pub fn from_labels(map: &SampledMap, labels: &[usize]) -> Result<Factorization> {
        let mut by_label: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(v);
        }
        let mut classes: Vec<Vec<usize>> = by_label.into_values().collect();
        classes.sort_by_key(|c| c[0]);
        let mut q = vec![0; map.vertex_count()];
        for (i, c) in classes.iter().enumerate() {
            for &v in c {
                q[v] = i;
            }
        }
        let f_sharp: Vec<Point> = classes.iter().map(|c| map.value(c[0]).clone()).collect();
        for c in &classes {
            if c.iter().any(|&v| map.value(v) != &f_sharp[q[c[0]]]) {
                return Err(ConvexError::ModelMismatch("class mixes distinct values".into()));
            }
        }
        let edges: BTreeSet<(usize, usize)> = map
            .edges()
            .into_iter()
            .map(|(a, b)| (q[a].min(q[b]), q[a].max(q[b])))
            .filter(|(a, b)| a != b)
            .collect();
        let quotient_edges: Vec<(usize, usize)> = edges.into_iter().collect();
        let cells: Vec<Vec<usize>> =
            map.cells().iter().map(|c| c.iter().map(|&v| q[v]).collect()).collect();
        // Cells that collapse lose dimension; keep only maximal ones.
        let top = cells.iter().map(|c: &Vec<usize>| distinct(c)).max().unwrap_or(1);
        let cells: Vec<Vec<usize>> = cells.into_iter().filter(|c| distinct(c) == top).collect();
        let cells = if top <= 2 { Vec::new() } else { cells };
        let open = map.open_vertices().iter().map(|&v| q[v]).collect();
        let quotient =
            SampledMap::new(map.target.clone(), f_sharp.clone(), &quotient_edges, cells, open)?;
        let distinct_values: BTreeSet<&Point> = f_sharp.iter().collect();
        let f_sharp_injective = distinct_values.len() == f_sharp.len();
        let f_sharp_locally_injective = (0..quotient.vertex_count()).all(|c| {
            let vs = quotient.star_vertices(c);
            let imgs: BTreeSet<&Point> = vs.iter().map(|&v| quotient.value(v)).collect();
            imgs.len() == vs.len()
        });
        Ok(Factorization {
            classes,
            q,
            quotient_edges,
            f_sharp,
            f_sharp_injective,
            f_sharp_locally_injective,
            quotient,
        })
    }

    pub fn commutes(&self, map: &SampledMap) -> bool {
        (0..map.vertex_count()).all(|v| &self.f_sharp[self.q[v]] == map.value(v))
    }

    /// True when every class of `self` sits inside one class of `coarser`.
    pub fn refines(&self, coarser: &Factorization) -> bool {
        self.classes.iter().all(|c| c.iter().all(|&v| coarser.q[v] == coarser.q[c[0]]))
    }
}

fn distinct(c: &[usize]) -> usize {
    c.iter().collect::<BTreeSet<_>>().len()
}

/// The depth-d filtered quotient: x ~ x' iff f(x) = f(x') and the image
/// families agree level by level.
pub fn filtered_quotient(map: &SampledMap, depth: usize) -> Result<Factorization> {
    let report = is_locally_open_onto_image(map, depth);
    if let Some(w) = report.witness {
        return Err(ConvexError::NotLocallyOpen { vertex: w.vertex, level: w.level });
    }
    filtered_quotient_unchecked(map, depth)
}

/// The quotient without the openness test, for callers that already ran it at `depth`.
pub(crate) fn filtered_quotient_unchecked(map: &SampledMap, depth: usize) -> Result<Factorization> {
    filtered_labels(map, depth).and_then(|l| Factorization::from_labels(map, &l))
}

fn filtered_labels(map: &SampledMap, depth: usize) -> Result<Vec<usize>> {
    let n = map.vertex_count();
    let mut by_value: BTreeMap<&Point, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        by_value.entry(map.value(v)).or_default().push(v);
    }
    let mut labels: Vec<usize> = (0..n).collect();
    // Only vertices sharing a value can merge; families are built for those alone.
    for group in by_value.values().filter(|g| g.len() > 1) {
        let mut seen: BTreeMap<_, usize> = BTreeMap::new();
        for &v in group {
            let key = NeighborhoodFamily::of(map, v, depth).key(map);
            labels[v] = *seen.entry(key).or_insert(v);
        }
    }
    Ok(labels)
}

/// Classes are the connected components of the fibers.
pub fn monotone_light(map: &SampledMap) -> Result<Factorization> {
    let mut parent: Vec<usize> = (0..map.vertex_count()).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for (a, b) in map.edges() {
        if map.value(a) == map.value(b) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let labels: Vec<usize> = (0..parent.len()).map(|v| find(&mut parent, v)).collect();
    Factorization::from_labels(map, &labels)
}
