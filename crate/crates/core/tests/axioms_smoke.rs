use convexa_core::atlas::{default_atlas, AtlasConfig};
use convexa_core::models;
use convexa_core::rational::{int, ratio};
use convexa_core::sampling::sample_points;
use convexa_core::{check_axioms, SpaceModel};

fn run(space: &SpaceModel, cfg: AtlasConfig, n: usize) {
    let atlas = default_atlas(space, &cfg).unwrap();
    let samples = sample_points(space, n, 7);
    let t = std::time::Instant::now();
    let rep = check_axioms(space, &atlas, &samples).unwrap();
    eprintln!("{:?} tuples={} skipped={} {:?}", space.kind(), rep.tuples_checked, rep.pairs_skipped, t.elapsed());
    for c in &rep.clauses {
        eprintln!("  {} checked={} failures={} {:?}", c.clause, c.checked, c.failures, c.witness);
    }
    assert!(rep.passed);
}

#[test]
fn smoke() {
    run(&models::make_interval(int(0), int(1)).unwrap(), AtlasConfig::default(), 12);
    run(&models::branching_tree(4, 2).unwrap(), AtlasConfig::default(), 12);
    run(&models::make_euclidean(2, None).unwrap(), AtlasConfig::default().with_extent(&[int(-1), int(-1)], &[int(1), int(1)]), 12);
    run(&models::strip(4, 1).unwrap(), AtlasConfig::with_granularity(ratio(3, 2)), 30);
}
