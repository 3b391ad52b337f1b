use std::time::Instant;

use convexa_core::factorization::{examples, *};
use convexa_core::{default_atlas, check_axioms, sampling, Point};

#[test]
fn projection_grid_classes_are_columns() {
    let m = examples::projection_grid(6).unwrap();
    let f = filtered_quotient(&m, DEFAULT_DEPTH).unwrap();
    assert_eq!(f.classes.len(), 7);
    assert!(f.commutes(&m) && f.f_sharp_injective);
    let ml = monotone_light(&m).unwrap();
    assert_eq!(ml.classes, f.classes);
}

#[test]
fn doubling_is_singletons_and_etale() {
    let m = examples::doubling(11).unwrap();
    let f = filtered_quotient(&m, DEFAULT_DEPTH).unwrap();
    assert_eq!(f.classes.len(), 11);
    let atlas = default_atlas(&m.target, &examples::suggested_atlas("doubling")).unwrap();
    let t = Instant::now();
    let cert = verify_etale(&atlas, &f.quotient).unwrap();
    eprintln!("doubling cert {:?}", t.elapsed());
    assert!(cert.fiber_table.iter().all(|e| e.size == 2), "{:?}", cert.fiber_table);
    let lifted = lift_atlas(&atlas, &f.quotient, &cert).unwrap();
    assert_eq!(lifted.atlas.len(), 2 * atlas.len());
    let samples = sampling::sample_points(&lifted.space, 40, 7);
    let t = Instant::now();
    let rep = check_axioms(&lifted.space, &lifted.atlas, &samples).unwrap();
    eprintln!("doubling axioms {:?} {}", t.elapsed(), rep.tuples_checked);
    assert!(rep.passed, "{rep:?}");
}

#[test]
fn figure_eight_etale() {
    let m = examples::figure_eight(6).unwrap();
    let atlas = default_atlas(&m.target, &examples::suggested_atlas("figure-eight")).unwrap();
    let cert = verify_etale(&atlas, &m).unwrap();
    let node = cert.fiber_table.iter().find(|e| e.point == Point::vertex(0)).unwrap();
    assert_eq!(node.size, 2);
    assert!(!cert.non_injective_pairs.is_empty());
    let lifted = lift_atlas(&atlas, &m, &cert).unwrap();
    let samples = sampling::sample_points(&lifted.space, 40, 7);
    let rep = check_axioms(&lifted.space, &lifted.atlas, &samples).unwrap();
    assert!(rep.passed, "{rep:?}");
}

#[test]
fn square_is_global() {
    let m = examples::square_inclusion(4).unwrap();
    let atlas = default_atlas(&m.target, &examples::suggested_atlas("square")).unwrap();
    let cert = verify_etale(&atlas, &m).unwrap();
    assert!(cert.global && cert.chart_lifts.len() == 1);
    let lifted = lift_atlas(&atlas, &m, &cert).unwrap();
    let samples = sampling::sample_points(&lifted.space, 40, 7);
    let rep = check_axioms(&lifted.space, &lifted.atlas, &samples).unwrap();
    assert!(rep.passed, "{rep:?}");
}

#[test]
fn cubic_flags_extrema_only() {
    let m = examples::cubic(100).unwrap();
    let t = Instant::now();
    let rep = is_locally_open_onto_image(&m, DEFAULT_DEPTH);
    eprintln!("cubic {:?} {:?}", t.elapsed(), rep.failing_vertices);
    let emb = examples::cubic_embedding(100).unwrap();
    assert!(is_locally_open_onto_image(&emb, DEFAULT_DEPTH).open);
    assert!(is_locally_open_onto_image(&examples::constant(5).unwrap(), DEFAULT_DEPTH).open);
}
