use std::time::Instant;

use convexa_core::factorization::examples;
use convexa_core::lgp::*;
use convexa_core::polytope::Polytope;
use convexa_core::rational::{int, ratio};
use convexa_core::{default_atlas, models, ConvexError, Point, Region};

fn square(x0: i64, y0: i64, x1: i64, y1: i64) -> Polytope {
    Polytope::boxed(vec![int(x0), int(y0)], vec![int(x1), int(y1)], false).unwrap()
}

#[test]
fn klee_three_examples() {
    let plane = models::make_euclidean(2, None).unwrap();
    let tri = Polytope::hull(vec![vec![int(0), int(0)], vec![int(2), int(0)], vec![int(0), int(2)]], false).unwrap();
    assert_eq!(klee_check(&plane, &Region::Polytopes(vec![tri])).unwrap(), KleeVerdict::Convex);
    let l = Region::Polytopes(vec![square(0, 0, 2, 1), square(0, 0, 1, 2)]);
    assert_eq!(
        klee_check(&plane, &l).unwrap(),
        KleeVerdict::NotLocallyConvex { witness: Point::Vector(vec![int(1), int(1)]) }
    );
    let two = Region::Polytopes(vec![square(0, 0, 1, 1), square(2, 0, 3, 1)]);
    assert_eq!(klee_check(&plane, &two).unwrap(), KleeVerdict::NotConnected);
}

#[test]
fn local_convexity_of_inclusions() {
    let sq = examples::square_inclusion(4).unwrap();
    let atlas = default_atlas(&sq.target, &examples::suggested_atlas("square")).unwrap();
    let rep = is_locally_convex_map(&sq, &atlas, 3).unwrap();
    assert!(rep.locally_convex, "{rep:?}");
    let l = examples::l_shape_inclusion(4).unwrap();
    let rep = is_locally_convex_map(&l, &atlas, 3).unwrap();
    let w = rep.witness.unwrap();
    assert_eq!(w.image, Point::Vector(vec![int(1), int(1)]), "{w:?}");
    let circle = examples::doubling_planar(11).unwrap();
    let err = verify_weak_convexity(&circle, &atlas, &LgpConfig::default()).unwrap_err();
    assert!(matches!(err, ConvexError::HypothesisFailed { .. }), "{err:?}");
}

#[test]
fn projection_pairs_connect() {
    let m = examples::projection_grid(6).unwrap();
    let atlas = default_atlas(&m.target, &examples::suggested_atlas("projection-grid")).unwrap();
    let rep = verify_weak_convexity(&m, &atlas, &LgpConfig::default()).unwrap();
    assert!(rep.failures.is_empty(), "{:?}", rep.failures);
    assert!(rep.pairs_checked > 0);
}

#[test]
fn momentum_small() {
    for (n, r) in [(1, 64), (2, 16), (2, 64), (3, 8)] {
        let t = Instant::now();
        let demo = momentum_demo(n, r, &LgpConfig::default()).unwrap();
        eprintln!("n={n} r={r} {:?} pairs={} fails={}", t.elapsed(), demo.report.pairs_checked, demo.report.failures.len());
        assert!(demo.report.failures.is_empty(), "{:?}", demo.report.failures);
        assert_eq!(demo.hull.tolerance, ratio(2, r as i64));
    }
}
