//! The ten acceptance criteria, each judged against an oracle written here.
//! Every criterion yields a JSON report; the last criterion reruns the others
//! and compares the reports byte for byte.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use convexa_core::atlas::{default_atlas, AtlasConfig};
use convexa_core::factorization::{examples, DEFAULT_DEPTH};
use convexa_core::graph::GraphEdge;
use convexa_core::lgp::{klee_check, momentum_demo, KleeVerdict, LgpConfig};
use convexa_core::paths::{chart_chain, line_path_from_chain, simplify, straighten, LinePath, StraightenConfig};
use convexa_core::polytope::Polytope;
use convexa_core::rational::{int, ratio, render};
use convexa_core::sampling::{rng, sample_points};
use convexa_core::{
    check_axioms, filtered_quotient, is_locally_open_onto_image, lift_atlas, models, monotone_light, verify_etale,
    GraphPoint, Point, Region, SampledMap, SegmentRep, SpaceModel, Q,
};

struct Outcome {
    pass: bool,
    detail: String,
    report: Value,
}

fn outcome(pass: bool, detail: String, report: Value) -> Outcome {
    Outcome { pass, detail, report }
}

fn seed() -> u64 {
    std::env::var("CONVEXA_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(7)
}

fn rand_q(r: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Q {
    ratio(r.gen_range(lo * den..=hi * den), den)
}

fn vecp(v: &[Q]) -> Point {
    Point::Vector(v.to_vec())
}

// ---------------------------------------------------------------- 1

fn c1_axioms(seed: u64, timings: &mut Vec<Duration>) -> Outcome {
    let families: Vec<(&str, SpaceModel, usize)> = vec![
        ("interval", models::make_interval(int(0), int(1)).unwrap(), 12),
        ("tree", models::branching_tree(4, 2).unwrap(), 12),
        ("euclidean", models::simplex(2).unwrap(), 12),
        ("polyhedral", models::triangle_boundary(1).unwrap(), 16),
    ];
    let mut pass = true;
    let mut rows = Vec::new();
    let mut detail = Vec::new();
    for (name, space, n) in families {
        let t = Instant::now();
        let atlas = default_atlas(&space, &AtlasConfig::default()).unwrap();
        let rep = check_axioms(&space, &atlas, &sample_points(&space, n, seed)).unwrap();
        let el = t.elapsed();
        timings.push(el);
        let ok = rep.passed && rep.tuples_checked >= 200 && el < Duration::from_secs(10);
        pass &= ok;
        detail.push(format!("{name} {} tuples {:.2}s", rep.tuples_checked, el.as_secs_f64()));
        rows.push(json!({"family": name, "passed": rep.passed, "tuples": rep.tuples_checked,
            "skipped": rep.pairs_skipped, "clauses": rep.clauses}));
    }
    outcome(pass, detail.join(", "), json!(rows))
}

// ---------------------------------------------------------------- 2

fn orient(a: &[Q], b: &[Q], c: &[Q]) -> Q {
    (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0])
}

fn on_closed_segment(a: &[Q], b: &[Q], p: &[Q]) -> bool {
    orient(a, b, p).is_zero()
        && (0..2).all(|i| {
            let (lo, hi) = if a[i] <= b[i] { (&a[i], &b[i]) } else { (&b[i], &a[i]) };
            lo <= &p[i] && &p[i] <= hi
        })
}

fn segments_meet(a: &[Q], b: &[Q], c: &[Q], d: &[Q]) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    let opposite = |x: &Q, y: &Q| (x.is_positive() && y.is_negative()) || (x.is_negative() && y.is_positive());
    if opposite(&o1, &o2) && opposite(&o3, &o4) {
        return true;
    }
    on_closed_segment(a, b, c) || on_closed_segment(a, b, d) || on_closed_segment(c, d, a) || on_closed_segment(c, d, b)
}

/// Legs meet only where consecutive legs share a breakpoint.
fn polyline_injective(pts: &[Vec<Q>]) -> bool {
    let legs = pts.len() - 1;
    for i in 0..legs {
        if pts[i] == pts[i + 1] {
            return false;
        }
        for j in i + 1..legs {
            let (a, b, c, d) = (&pts[i], &pts[i + 1], &pts[j], &pts[j + 1]);
            if j == i + 1 {
                // Shared point b; overlap only if d doubles back along the line of a-b.
                let back = orient(a, b, d).is_zero()
                    && ((&a[0] - &b[0]) * (&d[0] - &b[0]) + (&a[1] - &b[1]) * (&d[1] - &b[1])).is_positive();
                if back {
                    return false;
                }
            } else if segments_meet(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

fn random_polyline(r: &mut ChaCha8Rng, max_pts: usize) -> Vec<Vec<Q>> {
    let k = r.gen_range(3..=max_pts);
    (0..k).map(|_| vec![rand_q(r, 0, 1, 16), rand_q(r, 0, 1, 16)]).collect()
}

fn subdivide(pts: &[Vec<Q>], pieces: i64) -> Vec<Point> {
    let mut out = vec![vecp(&pts[0])];
    for w in pts.windows(2) {
        for k in 1..=pieces {
            let t = ratio(k, pieces);
            out.push(Point::Vector((0..2).map(|i| &w[0][i] + (&w[1][i] - &w[0][i]) * &t).collect()));
        }
    }
    out
}

fn dist_sq_to_segment(a: &[Q], b: &[Q], p: &[Q]) -> (Q, Q) {
    let d: Vec<Q> = (0..2).map(|i| &b[i] - &a[i]).collect();
    let dd = &d[0] * &d[0] + &d[1] * &d[1];
    let u = ((&p[0] - &a[0]) * &d[0] + (&p[1] - &a[1]) * &d[1]) / &dd;
    let uc = u.clone().max(int(0)).min(int(1));
    let q: Vec<Q> = (0..2).map(|i| &a[i] + &d[i] * &uc).collect();
    ((&p[0] - &q[0]) * (&p[0] - &q[0]) + (&p[1] - &q[1]) * (&p[1] - &q[1]), u)
}

/// Hausdorff distance squared between a polyline and the chord of its ends,
/// exact when the breakpoint projections run monotonically along the chord.
fn chord_hausdorff_sq(bps: &[Point]) -> Option<Q> {
    let v: Vec<&[Q]> = bps.iter().map(|p| p.vector().unwrap()).collect();
    let (a, b) = (v[0], v[v.len() - 1]);
    let mut worst = int(0);
    let mut last = int(0);
    for p in &v {
        let (d, u) = dist_sq_to_segment(a, b, p);
        if u < last || u > int(1) {
            return None;
        }
        last = u;
        worst = worst.max(d);
    }
    Some(worst)
}

fn c2_straighten_euclidean(seed: u64, timings: &mut Vec<Duration>) -> Outcome {
    let t = Instant::now();
    let plane = models::make_euclidean(2, None).unwrap();
    let ext = (vec![int(-1), int(-1)], vec![int(2), int(2)]);
    let big = default_atlas(&plane, &AtlasConfig::with_granularity(int(4)).with_extent(&ext.0, &ext.1)).unwrap();
    let small = default_atlas(&plane, &AtlasConfig::default().with_extent(&ext.0, &ext.1)).unwrap();
    let cfg = StraightenConfig::default();
    let bound = ratio(1, 1_000_000_000) * ratio(1, 1_000_000_000);
    let mut r = rng(seed ^ 0x2);
    let (mut exact, mut within, mut cases) = (0, 0, Vec::new());
    while cases.len() < 50 {
        let pts = random_polyline(&mut r, 8);
        if pts[0] == pts[pts.len() - 1] || !polyline_injective(&pts) {
            continue;
        }
        let lp = LinePath::through(&plane, &big, pts.iter().map(|p| vecp(p)).collect()).unwrap();
        let out = straighten(&plane, &big, &lp, &cfg).unwrap().into_result().unwrap();
        let is_exact = out.breakpoints == vec![vecp(&pts[0]), vecp(&pts[pts.len() - 1])];
        exact += is_exact as usize;
        let fine = LinePath::through(&plane, &small, subdivide(&pts, 8)).unwrap();
        let out_s = straighten(&plane, &small, &fine, &cfg).unwrap().into_result().unwrap();
        let h = chord_hausdorff_sq(&out_s.breakpoints);
        let ok_s = h.as_ref().is_some_and(|h| *h <= bound)
            && out_s.breakpoints.first() == Some(&vecp(&pts[0]))
            && out_s.breakpoints.last() == Some(&vecp(&pts[pts.len() - 1]));
        within += ok_s as usize;
        cases.push(json!({"breakpoints": pts.len(), "big_exact": is_exact,
            "small_breakpoints": out_s.breakpoints.len(),
            "small_hausdorff_sq": h.as_ref().map(render)}));
    }
    let el = t.elapsed();
    timings.push(el);
    let pass = exact == 50 && within == 50 && el < Duration::from_secs(30);
    outcome(pass, format!("exact {exact}/50, small charts {within}/50, {:.2}s", el.as_secs_f64()), json!(cases))
}

// ---------------------------------------------------------------- 3

fn random_tree(r: &mut ChaCha8Rng) -> SpaceModel {
    let n = r.gen_range(2..=60);
    let edges = (1..n)
        .map(|v| GraphEdge { u: r.gen_range(0..v), v, length: ratio(r.gen_range(1..=8), 4) })
        .collect();
    models::make_tree(n, edges).unwrap()
}

type Trace = BTreeMap<usize, Vec<(Q, Q)>>;

fn add_span(tr: &mut Trace, e: usize, a: &Q, b: &Q) {
    if a != b {
        let (lo, hi) = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        tr.entry(e).or_default().push((lo, hi));
    }
}

fn merged(mut tr: Trace) -> Trace {
    for spans in tr.values_mut() {
        spans.sort();
        let mut out: Vec<(Q, Q)> = Vec::new();
        for (lo, hi) in spans.drain(..) {
            match out.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.clone().max(hi),
                _ => out.push((lo, hi)),
            }
        }
        *spans = out;
    }
    tr
}

/// Unique tree route by breadth-first search over vertices, written as edge spans.
fn bfs_trace(space: &SpaceModel, x: &GraphPoint, y: &GraphPoint) -> Trace {
    let g = space.graph().unwrap();
    let ends = |p: &GraphPoint| -> Vec<(usize, Option<(usize, Q)>)> {
        match p {
            GraphPoint::Vertex { vertex } => vec![(*vertex, None)],
            GraphPoint::Edge { edge, t } => {
                let e = g.edge(*edge);
                vec![(e.u, Some((*edge, t.clone()))), (e.v, Some((*edge, t.clone())))]
            }
        }
    };
    if let (GraphPoint::Edge { edge: ex, t: tx }, GraphPoint::Edge { edge: ey, t: ty }) = (x, y) {
        if ex == ey {
            let mut tr = Trace::new();
            add_span(&mut tr, *ex, tx, ty);
            return tr;
        }
    }
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for (i, e) in g.edges().iter().enumerate() {
        adj[e.u].push((e.v, i));
        adj[e.v].push((e.u, i));
    }
    let route = |s: usize, t: usize| -> Vec<(usize, usize)> {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; adj.len()];
        let mut seen = vec![false; adj.len()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((v, e));
                    q.push_back(w);
                }
            }
        }
        let mut out = Vec::new();
        let mut v = t;
        while let Some((p, e)) = prev[v] {
            out.push((v, e));
            v = p;
        }
        out.reverse();
        out
    };
    // Among the end combinations, the shortest route avoids running over the
    // end edges themselves.
    let mut best: Option<(Q, Trace)> = None;
    for (sx, ox) in ends(x) {
        for (sy, oy) in ends(y) {
            let mut tr = Trace::new();
            let mut len = int(0);
            if let Some((e, t)) = &ox {
                let at = if g.edge(*e).u == sx { int(0) } else { int(1) };
                len += (&at - t).abs() * &g.edge(*e).length;
                add_span(&mut tr, *e, t, &at);
            }
            for (_, e) in route(sx, sy) {
                len += g.edge(e).length.clone();
                add_span(&mut tr, e, &int(0), &int(1));
            }
            if let Some((e, t)) = &oy {
                let at = if g.edge(*e).u == sy { int(0) } else { int(1) };
                len += (&at - t).abs() * &g.edge(*e).length;
                add_span(&mut tr, *e, &at, t);
            }
            if best.as_ref().map_or(true, |(b, _)| len < *b) {
                best = Some((len, tr));
            }
        }
    }
    merged(best.unwrap().1)
}

fn path_trace(p: &LinePath) -> Trace {
    let mut tr = Trace::new();
    for i in 0..p.leg_count() {
        if let SegmentRep::Path(gp) = &p.segment(i).rep {
            for pc in &gp.pieces {
                add_span(&mut tr, pc.edge, &pc.from, &pc.to);
            }
        }
    }
    merged(tr)
}

fn c3_straighten_tree(seed: u64) -> Outcome {
    let mut r = rng(seed ^ 0x3);
    let cfg = StraightenConfig::default();
    let (mut equal, mut cases) = (0, Vec::new());
    for k in 0..50u64 {
        let tree = random_tree(&mut r);
        let atlas = default_atlas(&tree, &AtlasConfig::default()).unwrap();
        let pts = sample_points(&tree, 3, seed.wrapping_add(k));
        let (x, z, y) = (&pts[0], &pts[1], &pts[2]);
        // A detour through z built from two chart chains.
        let mut bps = line_path_from_chain(&tree, &atlas, &chart_chain(&tree, &atlas, x, z).unwrap()).unwrap().breakpoints;
        let second = line_path_from_chain(&tree, &atlas, &chart_chain(&tree, &atlas, z, y).unwrap()).unwrap();
        bps.extend(second.breakpoints.into_iter().skip(1));
        let lp = LinePath::through(&tree, &atlas, bps).unwrap();
        let out = straighten(&tree, &atlas, &lp, &cfg).unwrap().into_result().unwrap();
        let got = path_trace(&out);
        let want = bfs_trace(&tree, x.graph().unwrap(), y.graph().unwrap());
        let ok = got == want && out.simple && out.start() == x && out.end() == y;
        equal += ok as usize;
        cases.push(json!({"vertices": tree.graph().unwrap().vertex_count(), "input_legs": lp.leg_count(),
            "output_legs": out.leg_count(), "matches_bfs": ok}));
    }
    outcome(equal == 50, format!("{equal}/50 equal the breadth-first route"), json!(cases))
}

// ---------------------------------------------------------------- 4

fn c4_simplify(seed: u64) -> Outcome {
    let plane = models::make_euclidean(2, None).unwrap();
    let atlas = default_atlas(
        &plane,
        &AtlasConfig::with_granularity(int(4)).with_extent(&[int(-1), int(-1)], &[int(2), int(2)]),
    )
    .unwrap();
    let mut r = rng(seed ^ 0x4);
    let (mut good, mut cases) = (0, Vec::new());
    while cases.len() < 100 {
        let pts = random_polyline(&mut r, 9);
        if pts.windows(2).any(|w| w[0] == w[1]) || polyline_injective(&pts) {
            continue;
        }
        let lp = LinePath::through(&plane, &atlas, pts.iter().map(|p| vecp(p)).collect()).unwrap();
        let s = simplify(&plane, &lp).unwrap();
        let out: Vec<Vec<Q>> = s.path.breakpoints.iter().map(|p| p.vector().unwrap().to_vec()).collect();
        let inj = out.len() == 1 || polyline_injective(&out);
        let ok = inj && s.modifications < lp.leg_count() && s.path.start() == lp.start() && s.path.end() == lp.end();
        good += ok as usize;
        cases.push(json!({"legs": lp.leg_count(), "modifications": s.modifications, "injective": inj}));
    }
    outcome(good == 100, format!("{good}/100 injective with fewer modifications than legs"), json!(cases))
}

// ---------------------------------------------------------------- 5

fn hop_ball(map: &SampledMap, x: usize, radius: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([x]);
    let mut layer = vec![x];
    for _ in 0..radius {
        let mut next = Vec::new();
        for v in layer {
            for &w in map.neighbors(v) {
                if seen.insert(w) {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    seen
}

/// Depth-d equivalence by pairwise comparison of every level image.
fn brute_force_classes(map: &SampledMap, depth: usize) -> Vec<Vec<usize>> {
    let n = map.vertex_count();
    let images = |x: usize| -> Vec<BTreeSet<Point>> {
        (0..=depth)
            .map(|k| hop_ball(map, x, depth - k + 1).into_iter().map(|v| map.value(v).clone()).collect())
            .collect()
    };
    let imgs: Vec<_> = (0..n).map(images).collect();
    let mut label: Vec<Option<usize>> = vec![None; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if label[x].is_some() {
            continue;
        }
        label[x] = Some(classes.len());
        let mut c = vec![x];
        for y in x + 1..n {
            if label[y].is_none() && map.value(x) == map.value(y) && imgs[x] == imgs[y] {
                label[y] = Some(classes.len());
                c.push(y);
            }
        }
        classes.push(c);
    }
    classes
}

fn c5_factorization() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let proj = examples::projection_grid(6).unwrap();
    let f = filtered_quotient(&proj, DEFAULT_DEPTH).unwrap();
    let mut vals: Vec<(Q, usize)> = f.f_sharp.iter().enumerate().map(|(c, p)| (p.scalar().unwrap().clone(), c)).collect();
    vals.sort();
    let grid_ok = vals.iter().enumerate().all(|(i, (v, _))| *v == ratio(i as i64, 6)) && vals.len() == 7;
    let rank: BTreeMap<usize, usize> = vals.iter().enumerate().map(|(i, (_, c))| (*c, i)).collect();
    let edges: BTreeSet<(usize, usize)> = f
        .quotient_edges
        .iter()
        .map(|&(a, b)| (rank[&a].min(rank[&b]), rank[&a].max(rank[&b])))
        .collect();
    let order_iso = grid_ok && edges == (0..6).map(|i| (i, i + 1)).collect::<BTreeSet<_>>();
    let proj_ok = order_iso && f.f_sharp_injective && f.commutes(&proj);
    pass &= proj_ok;
    notes.push(json!({"map": "projection-grid", "classes": f.classes.len(), "order_isomorphic": order_iso,
        "f_sharp_injective": f.f_sharp_injective}));

    let id = examples::identity_interval(16).unwrap();
    let fi = filtered_quotient(&id, DEFAULT_DEPTH).unwrap();
    let id_ok = fi.classes.iter().all(|c| c.len() == 1) && fi.classes.len() == id.vertex_count();
    pass &= id_ok;
    notes.push(json!({"map": "identity", "classes": fi.classes.len(), "singletons": id_ok}));

    let dbl = examples::doubling(11).unwrap();
    let fd = filtered_quotient(&dbl, DEFAULT_DEPTH).unwrap();
    let atlas = default_atlas(&dbl.target, &examples::suggested_atlas("doubling")).unwrap();
    let cert = verify_etale(&atlas, &fd.quotient).unwrap();
    let two_to_one = cert.fiber_table.iter().all(|e| e.size == 2);
    let dbl_ok = fd.classes.iter().all(|c| c.len() == 1) && two_to_one;
    pass &= dbl_ok;
    notes.push(json!({"map": "doubling", "classes": fd.classes.len(), "fibers_two": two_to_one}));

    let mut brute = Vec::new();
    for (name, m, fac) in [("projection-grid", &proj, &f), ("identity", &id, &fi), ("doubling", &dbl, &fd)] {
        let same = brute_force_classes(m, DEFAULT_DEPTH) == fac.classes;
        pass &= same;
        brute.push(json!({"map": name, "matches": same}));
    }

    let mut refine = Vec::new();
    for name in examples::PRESETS {
        let m = examples::preset(name, None).unwrap();
        let ml = monotone_light(&m).unwrap();
        match filtered_quotient(&m, DEFAULT_DEPTH) {
            Ok(fq) => {
                let ok = ml.refines(&fq);
                pass &= ok;
                refine.push(json!({"map": name, "refines": ok}));
            }
            Err(e) => refine.push(json!({"map": name, "refines": null, "skipped": e.to_string()})),
        }
    }
    let skipped = refine.iter().filter(|r| r["refines"].is_null()).count();
    let detail = format!(
        "projection {proj_ok}, identity {id_ok}, doubling {dbl_ok}, brute force {}/3, refinement on {} maps ({skipped} not open)",
        brute.iter().filter(|b| b["matches"] == true).count(),
        refine.len() - skipped
    );
    outcome(pass, detail, json!({"maps": notes, "brute_force": brute, "refinement": refine}))
}

// ---------------------------------------------------------------- 6

fn c6_cubic() -> Outcome {
    let m = examples::cubic(100).unwrap();
    let rep = is_locally_open_onto_image(&m, DEFAULT_DEPTH);
    let grid = examples::cubic_grid(100);
    let xs: Vec<Q> = rep.failing_vertices.iter().map(|&v| grid[v].clone()).collect();
    // Grid vertex nearest to c.
    let nearest = |c: Q| (0..grid.len()).min_by_key(|&v| (&grid[v] - &c).abs()).unwrap();
    let flags_both = rep.failing_vertices.contains(&nearest(int(-1))) && rep.failing_vertices.contains(&nearest(int(1)));
    let band = xs.iter().all(|x| x.abs() >= ratio(9, 10) && x.abs() <= ratio(11, 10));
    let emb = is_locally_open_onto_image(&examples::cubic_embedding(100).unwrap(), DEFAULT_DEPTH);
    let pass = flags_both && band && emb.open;
    outcome(
        pass,
        format!("flagged {:?}, embedding open {}", xs.iter().map(render).collect::<Vec<_>>(), emb.open),
        json!({"flagged": xs.iter().map(render).collect::<Vec<_>>(), "both_extrema": flags_both,
            "within_band": band, "embedding_open": emb.open}),
    )
}

// ---------------------------------------------------------------- 7

fn c7_etale(seed: u64) -> Outcome {
    let mut pass = true;
    let mut rows = Vec::new();
    for name in ["square", "doubling", "figure-eight"] {
        let m = examples::preset(name, None).unwrap();
        let e = if name == "doubling" { filtered_quotient(&m, DEFAULT_DEPTH).unwrap().quotient } else { m };
        let atlas = default_atlas(&e.target, &examples::suggested_atlas(name)).unwrap();
        let cert = match verify_etale(&atlas, &e) {
            Ok(c) => c,
            Err(err) => {
                pass = false;
                rows.push(json!({"map": name, "error": err.to_string()}));
                continue;
            }
        };
        let disjoint = cert.non_injective_pairs.iter().all(|&(i, j)| {
            let a: BTreeSet<usize> = cert.chart_lifts[i].vertices.iter().copied().collect();
            cert.chart_lifts[j].vertices.iter().all(|v| !a.contains(v))
        });
        let finite = !cert.fiber_table.is_empty() && cert.fiber_table.iter().all(|f| f.size >= 1 && f.size <= e.vertex_count());
        let lifted = lift_atlas(&atlas, &e, &cert).unwrap();
        let axioms = check_axioms(&lifted.space, &lifted.atlas, &sample_points(&lifted.space, 30, seed)).unwrap();
        let ok = disjoint && finite && axioms.passed;
        pass &= ok;
        rows.push(json!({"map": name, "global": cert.global, "non_injective_pairs": cert.non_injective_pairs.len(),
            "disjoint": disjoint, "max_fiber": cert.max_fiber, "lifted_charts": lifted.atlas.len(),
            "lifted_axioms": axioms.passed, "lifted_tuples": axioms.tuples_checked}));
    }
    let detail = rows
        .iter()
        .map(|r| format!("{} pairs={} fiber<={} axioms={}", r["map"], r["non_injective_pairs"], r["max_fiber"], r["lifted_axioms"]))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(pass, detail, json!(rows))
}

// ---------------------------------------------------------------- 8

fn c8_momentum(timings: &mut Vec<Duration>) -> Outcome {
    let mut pass = true;
    let mut rows = Vec::new();
    let mut detail = Vec::new();
    for n in 1..=3 {
        let t = Instant::now();
        let res = momentum_demo(n, 64, &LgpConfig::default());
        let el = t.elapsed();
        timings.push(el);
        match res {
            Ok(d) => {
                let ok = d.report.weakly_convex()
                    && d.report.failures.is_empty()
                    && d.hull.hausdorff_bound <= ratio(2, 64)
                    && (n < 3 || el < Duration::from_secs(60));
                pass &= ok;
                detail.push(format!("n={n} pairs={} {:.1}s", d.report.pairs_checked, el.as_secs_f64()));
                rows.push(json!({"n": n, "vertices": d.vertices, "cells": d.cells, "pairs": d.report.pairs_checked,
                    "failures": d.report.failures.len(), "hull": d.hull}));
            }
            Err(e) => {
                pass = false;
                detail.push(format!("n={n} error {e}"));
                rows.push(json!({"n": n, "error": e.to_string()}));
            }
        }
    }
    outcome(pass, detail.join(", "), json!(rows))
}

// ---------------------------------------------------------------- 9

fn boxed(x0: i64, y0: i64, x1: i64, y1: i64) -> Polytope {
    Polytope::boxed(vec![int(x0), int(y0)], vec![int(x1), int(y1)], false).unwrap()
}

/// A pair of region points whose joining segment leaves the region, probing
/// part vertices and half-integer grid points at sixteenths along each segment.
fn brute_witness(r: &Region) -> Option<(Vec<Q>, Vec<Q>)> {
    let Region::Polytopes(ps) = r else { return None };
    let mut pts: BTreeSet<Vec<Q>> = ps.iter().flat_map(|p| p.vertices().iter().cloned()).collect();
    for x in 0..=16 {
        for y in 0..=16 {
            let p = vec![ratio(x, 2), ratio(y, 2)];
            if r.contains(&Point::Vector(p.clone())) {
                pts.insert(p);
            }
        }
    }
    let pts: Vec<Vec<Q>> = pts.into_iter().collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in 1..16 {
                let t = ratio(k, 16);
                let q: Vec<Q> = (0..2).map(|c| &pts[i][c] + (&pts[j][c] - &pts[i][c]) * &t).collect();
                if !r.contains(&Point::Vector(q)) {
                    return Some((pts[i].clone(), pts[j].clone()));
                }
            }
        }
    }
    None
}

fn random_region(r: &mut ChaCha8Rng) -> Region {
    if r.gen_bool(0.5) {
        loop {
            let k = r.gen_range(3..=7);
            let pts: Vec<Vec<Q>> = (0..k).map(|_| vec![int(r.gen_range(0..=8)), int(r.gen_range(0..=8))]).collect();
            let h = Polytope::hull(pts, false).unwrap();
            if h.dim() == 2 {
                return Region::Polytopes(vec![h]);
            }
        }
    }
    // Chain of boxes, each overlapping the previous in an open set.
    let k = r.gen_range(2..=3);
    let mut parts = Vec::new();
    let (mut x0, mut y0) = (r.gen_range(0..=3), r.gen_range(0..=3));
    for _ in 0..k {
        let (w, h) = (r.gen_range(2..=4), r.gen_range(2..=4));
        parts.push(boxed(x0, y0, (x0 + w).min(8), (y0 + h).min(8)));
        x0 = (x0 + r.gen_range(0..w)).min(6);
        y0 = (y0 + r.gen_range(0..h)).min(6);
    }
    Region::Polytopes(parts)
}

fn c9_klee(seed: u64) -> Outcome {
    let plane = models::make_euclidean(2, None).unwrap();
    let tri = Polytope::hull(vec![vec![int(0), int(0)], vec![int(2), int(0)], vec![int(0), int(2)]], false).unwrap();
    let named = [
        ("convex polygon", Region::Polytopes(vec![tri]), "convex"),
        ("l-shape", Region::Polytopes(vec![boxed(0, 0, 2, 1), boxed(0, 0, 1, 2)]), "not_locally_convex"),
        ("disconnected pair", Region::Polytopes(vec![boxed(0, 0, 1, 1), boxed(2, 0, 3, 1)]), "not_connected"),
    ];
    let mut pass = true;
    let mut fixed = Vec::new();
    for (name, reg, want) in &named {
        let got = klee_check(&plane, reg).unwrap();
        pass &= got.label() == *want;
        fixed.push(json!({"region": name, "verdict": got}));
    }
    let mut r = rng(seed ^ 0x9);
    let mut rows = Vec::new();
    let (mut with_witness, mut convex, mut bad) = (0, 0, 0);
    for _ in 0..50 {
        let reg = random_region(&mut r);
        let v = klee_check(&plane, &reg).unwrap();
        let w = brute_witness(&reg);
        with_witness += w.is_some() as usize;
        convex += matches!(v, KleeVerdict::Convex) as usize;
        // A witness rules out "convex"; the hypotheses never coexist with a failing segment.
        let wrong = (w.is_some() && matches!(v, KleeVerdict::Convex)) || matches!(v, KleeVerdict::NotConvex { .. });
        bad += wrong as usize;
        rows.push(json!({"parts": match &reg { Region::Polytopes(p) => p.len(), _ => 0 },
            "verdict": v.label(), "brute_witness": w.is_some()}));
    }
    pass &= bad == 0;
    outcome(
        pass,
        format!("named {}/3, random: {convex} convex, {with_witness} with witness, {bad} wrong",
            fixed.iter().zip(&named).filter(|(f, n)| f["verdict"]["verdict"] == n.2).count()),
        json!({"named": fixed, "random": rows}),
    )
}

// ---------------------------------------------------------------- 10

type Criterion = (&'static str, fn(u64, &mut Vec<Duration>) -> Outcome);

fn criteria() -> Vec<Criterion> {
    vec![
        ("axiom suite", |s, t| c1_axioms(s, t)),
        ("straightening, euclidean", |s, t| c2_straighten_euclidean(s, t)),
        ("straightening, trees", |s, _| c3_straighten_tree(s)),
        ("simplification", |s, _| c4_simplify(s)),
        ("factorization suite", |_, _| c5_factorization()),
        ("counterexample detection", |_, _| c6_cubic()),
        ("etale suite", |s, _| c7_etale(s)),
        ("momentum end to end", |_, t| c8_momentum(t)),
        ("klee check", |s, _| c9_klee(s)),
    ]
}

#[test]
fn acceptance() {
    let seed = seed();
    let list = criteria();
    let mut first = Vec::new();
    let mut all = true;
    for (i, (name, f)) in list.iter().enumerate() {
        let t = Instant::now();
        let out = f(seed, &mut Vec::new());
        all &= out.pass;
        println!(
            "criterion {:>2} {:<26} {} ({}; {:.1}s)",
            i + 1,
            name,
            if out.pass { "PASS" } else { "FAIL" },
            out.detail,
            t.elapsed().as_secs_f64()
        );
        first.push(serde_json::to_string(&out.report).unwrap());
    }
    // Second run on worker threads; reports must match byte for byte.
    let second: Vec<String> = std::thread::scope(|s| {
        let handles: Vec<_> = list
            .iter()
            .map(|(_, f)| s.spawn(move || serde_json::to_string(&f(seed, &mut Vec::new()).report).unwrap()))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let same = first.iter().zip(&second).filter(|(a, b)| a == b).count();
    let det = same == first.len();
    all &= det;
    println!(
        "criterion 10 {:<26} {} ({same}/{} reports byte-identical, seed {seed})",
        "determinism",
        if det { "PASS" } else { "FAIL" },
        first.len()
    );
    assert!(all, "acceptance failures; see the lines above");
}
