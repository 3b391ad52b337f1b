use std::cell::OnceCell;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use serde::{Deserialize, Serialize};

use crate::error::{ConvexError, Result};
use crate::models::SpaceDoc;
use crate::point::Point;
use crate::rational::Q;
use crate::space::SpaceModel;

/// A map sampled on the vertices of a finite complex, extended cellwise.
///
/// `cells` lists the top-dimensional simplices; a purely one-dimensional
/// domain uses its edges. `open_vertices` mark samples standing in for
/// limit points that the continuous domain does not contain.
#[derive(Clone, Debug)]
pub struct SampledMap {
    pub target: SpaceModel,
    adjacency: Vec<Vec<usize>>,
    cells: Vec<Vec<usize>>,
    values: Vec<Point>,
    open_vertices: BTreeSet<usize>,
    /// Cells containing each vertex, by index into `cells`.
    incidence: Vec<Vec<usize>>,
    int_coords: OnceCell<Option<Vec<Vec<i64>>>>,
}

impl SampledMap {
    /// Builds the map; adjacency is the union of `edges` and the 1-skeleton of `cells`.
    pub fn new(
        target: SpaceModel,
        values: Vec<Point>,
        edges: &[(usize, usize)],
        cells: Vec<Vec<usize>>,
        open_vertices: BTreeSet<usize>,
    ) -> Result<SampledMap> {
        let n = values.len();
        if n == 0 {
            return Err(ConvexError::EmptyInput("sampled map has no vertices".into()));
        }
        for v in &values {
            target.validate(v)?;
        }
        let bad = |what: &str| ConvexError::Parse(format!("{what} refers to a missing vertex"));
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut link = |a: usize, b: usize| -> Result<()> {
            if a >= n || b >= n {
                return Err(bad("edge"));
            }
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            Ok(())
        };
        for &(a, b) in edges {
            link(a, b)?;
        }
        let mut cells: Vec<Vec<usize>> = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        for c in &cells {
            if c.is_empty() || c.iter().any(|&v| v >= n) {
                return Err(bad("cell"));
            }
            for (i, &a) in c.iter().enumerate() {
                for &b in &c[i + 1..] {
                    link(a, b)?;
                }
            }
        }
        if cells.is_empty() {
            for (a, nb) in adj.iter().enumerate() {
                cells.extend(nb.iter().filter(|&&b| b > a).map(|&b| vec![a, b]));
            }
            cells.extend((0..n).filter(|&v| adj[v].is_empty()).map(|v| vec![v]));
        }
        cells.sort();
        cells.dedup();
        if open_vertices.iter().any(|&v| v >= n) {
            return Err(bad("open vertex"));
        }
        let mut incidence = vec![Vec::new(); n];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                incidence[v].push(i);
            }
        }
        Ok(SampledMap {
            target,
            adjacency: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
            cells,
            values,
            open_vertices,
            incidence,
            int_coords: OnceCell::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.values.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Dimension of the top cells.
    pub fn cell_dim(&self) -> usize {
        self.cells.iter().map(|c| c.len() - 1).max().unwrap_or(0)
    }

    pub fn value(&self, v: usize) -> &Point {
        &self.values[v]
    }

    pub fn values(&self) -> &[Point] {
        &self.values
    }

    pub fn open_vertices(&self) -> &BTreeSet<usize> {
        &self.open_vertices
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nb) in self.adjacency.iter().enumerate() {
            out.extend(nb.iter().filter(|&&b| b > a).map(|&b| (a, b)));
        }
        out
    }

    /// Hop distances from `x`, cut off beyond `radius`.
    pub fn hop_ball(&self, x: usize, radius: usize) -> Vec<usize> {
        let mut dist: BTreeMap<usize, usize> = BTreeMap::new();
        dist.insert(x, 0);
        let mut queue = VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            if d == radius {
                continue;
            }
            for &w in &self.adjacency[v] {
                if !dist.contains_key(&w) {
                    dist.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist.into_keys().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.hop_ball(0, usize::MAX).len() == self.vertex_count()
    }

    /// Cells with every vertex in the sorted set `vs`.
    pub fn cells_within(&self, vs: &[usize]) -> Vec<&[usize]> {
        self.cells
            .iter()
            .filter(|c| c.iter().all(|v| vs.binary_search(v).is_ok()))
            .map(|c| c.as_slice())
            .collect()
    }

    /// Cells containing `x` (its closed star).
    pub fn star(&self, x: usize) -> Vec<&[usize]> {
        self.incidence[x].iter().map(|&i| self.cells[i].as_slice()).collect()
    }

    /// Cells with every vertex in the sorted set `vs`, found through incidence.
    pub fn cells_touching_within(&self, vs: &[usize]) -> Vec<&[usize]> {
        let ids: BTreeSet<usize> = vs.iter().flat_map(|&v| self.incidence[v].iter().copied()).collect();
        ids.into_iter()
            .map(|i| self.cells[i].as_slice())
            .filter(|c| c.iter().all(|v| vs.binary_search(v).is_ok()))
            .collect()
    }

    /// Vector values scaled to integers by a common denominator, when that
    /// denominator and every coordinate stay below 2^31.
    pub fn int_coords(&self) -> Option<&[Vec<i64>]> {
        self.int_coords
            .get_or_init(|| {
                let vs: Vec<&[Q]> = self.values.iter().map(|p| p.vector()).collect::<Option<_>>()?;
                let limit = BigInt::from(1i64 << 31);
                let mut den = BigInt::one();
                for v in &vs {
                    for x in v.iter() {
                        den = den.lcm(x.denom());
                        if den >= limit {
                            return None;
                        }
                    }
                }
                vs.iter()
                    .map(|v| {
                        v.iter()
                            .map(|x| {
                                let k = x.numer() * (&den / x.denom());
                                if k.abs() >= limit { None } else { k.to_i64() }
                            })
                            .collect()
                    })
                    .collect()
            })
            .as_deref()
    }

    /// Sorted vertex set of the closed star of `x`.
    pub fn star_vertices(&self, x: usize) -> Vec<usize> {
        let mut vs: Vec<usize> = self.star(x).into_iter().flatten().copied().collect();
        vs.push(x);
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Same map with vertices renamed by the permutation `perm` (old -> new).
    pub fn relabeled(&self, perm: &[usize]) -> Result<SampledMap> {
        let n = self.vertex_count();
        let mut values = vec![Point::Scalar(crate::rational::zero()); n];
        for (old, &new) in perm.iter().enumerate() {
            values[new] = self.values[old].clone();
        }
        let edges: Vec<(usize, usize)> =
            self.edges().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        let cells = self.cells.iter().map(|c| c.iter().map(|&v| perm[v]).collect()).collect();
        let open = self.open_vertices.iter().map(|&v| perm[v]).collect();
        SampledMap::new(self.target.clone(), values, &edges, cells, open)
    }
}

/// JSON form of a sampled map.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub target: SpaceDoc,
    pub values: Vec<Point>,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub open_vertices: Vec<usize>,
}

impl MapDoc {
    pub fn build(self) -> Result<SampledMap> {
        let target = self.target.build()?;
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        SampledMap::new(target, self.values, &edges, self.cells, self.open_vertices.into_iter().collect())
    }

    pub fn describe(map: &SampledMap) -> MapDoc {
        let one_dim = map.cells.iter().all(|c| c.len() <= 2);
        MapDoc {
            target: SpaceDoc::describe(&map.target),
            values: map.values.clone(),
            edges: map.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            cells: if one_dim { Vec::new() } else { map.cells.clone() },
            open_vertices: map.open_vertices.iter().copied().collect(),
        }
    }
}
