//! Seeded sampling of points with small dyadic denominators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::point::Point;
use crate::rational::{self, Q};
use crate::space::SpaceModel;

pub const DEFAULT_SEED: u64 = 0x5eed;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform(rng: &mut impl Rng, lo: &Q, hi: &Q, den: i64) -> Q {
    let k = rng.gen_range(0..=den);
    lo + (hi - lo) * rational::ratio(k, den)
}

/// `count` points of the space; unbounded Euclidean spaces sample the box `[-1,1]^n`.
pub fn sample_points(space: &SpaceModel, count: usize, seed: u64) -> Vec<Point> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    let den = 64;
    while out.len() < count {
        let p = match space {
            SpaceModel::Interval { a, b } => Point::Scalar(uniform(&mut r, a, b, den)),
            SpaceModel::Tree(g) | SpaceModel::Polyhedral { graph: g, .. } => {
                let e = r.gen_range(0..g.edges().len());
                let t = uniform(&mut r, &rational::zero(), &rational::one(), den);
                Point::Graph(g.point_on_edge(e, t).expect("parameter in [0,1]"))
            }
            SpaceModel::Euclidean { n, bounds } => {
                let (lo, hi) = match bounds {
                    Some(b) => (
                        (0..*n).map(|i| b.vertices().iter().map(|v| &v[i]).min().unwrap().clone()).collect(),
                        (0..*n).map(|i| b.vertices().iter().map(|v| &v[i]).max().unwrap().clone()).collect(),
                    ),
                    None => (vec![rational::int(-1); *n], vec![rational::int(1); *n]),
                };
                let v: Vec<Q> = lo.iter().zip(&hi).map(|(l, h): (&Q, &Q)| uniform(&mut r, l, h, den)).collect();
                if bounds.as_ref().is_some_and(|b| !b.contains(&v)) {
                    continue;
                }
                Point::Vector(v)
            }
        };
        out.push(p);
    }
    out
}
