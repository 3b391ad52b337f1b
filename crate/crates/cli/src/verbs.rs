//! One function per verb. Each returns a report (exit 0 or 1) or an input error (exit 2).

use serde_json::{json, Value};

use convexa_core::factorization::{quotient::Factorization, DEFAULT_DEPTH};
use convexa_core::lgp::momentum::momentum_atlas_config;
use convexa_core::paths::{hull_compare, straighten, StraightenConfig, Verdict};
use convexa_core::sampling::sample_points;
use convexa_core::{
    check_axioms, filtered_quotient, is_locally_open_onto_image, klee_check, lift_atlas, momentum_demo, monotone_light,
    segment, verify_etale, verify_weak_convexity, ConvexError, KleeVerdict, LgpConfig, Point, Q, SampledMap,
    SpaceModel,
};

use crate::input::{self, is_input_error, InputError};
use crate::report::Report;
use crate::svg::Figure;
use crate::Opts;

pub struct Outcome {
    pub report: Report,
    pub figure: Option<Figure>,
}

fn need<'a, T>(v: &'a Option<T>, flag: &str, verb: &str) -> Result<&'a T, InputError> {
    v.as_ref().ok_or_else(|| InputError::new("usage", format!("{verb} needs --{flag}")))
}

/// Input errors abort; anything else is a failed property with a report.
fn failed(verb: &'static str, inputs: Value, e: ConvexError) -> Result<Outcome, InputError> {
    if is_input_error(&e) {
        return Err(e.into());
    }
    let result = json!({"error": {"kind": error_kind(&e), "message": e.to_string()}});
    Ok(Outcome { report: Report { verb, pass: false, seed: None, inputs, result }, figure: None })
}

fn error_kind(e: &ConvexError) -> &'static str {
    match e {
        ConvexError::NonUniqueGeodesic { .. } => "non_unique_geodesic",
        ConvexError::HullNotFinitelyRepresentable { .. } => "hull_not_finitely_representable",
        ConvexError::ArmsOverlap { .. } => "arms_overlap",
        ConvexError::NoChain(_) => "no_chain",
        ConvexError::MaxRoundsExceeded { .. } => "max_rounds_exceeded",
        ConvexError::NotLocallyOpen { .. } => "not_locally_open",
        ConvexError::NotEtale { .. } => "not_etale",
        ConvexError::HypothesisFailed { .. } => "hypothesis_failed",
        ConvexError::ResolutionTooCoarse { .. } => "resolution_too_coarse",
        _ => "invalid_input",
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("core types serialize")
}

fn granularity(o: &Opts) -> Result<Option<Q>, InputError> {
    o.atlas_granularity.as_deref().map(|s| input::rational_flag("atlas-granularity", s)).transpose()
}

fn straighten_cfg(o: &Opts) -> Result<StraightenConfig, InputError> {
    let mut cfg = StraightenConfig::default();
    if let Some(t) = &o.tol {
        cfg.tol = input::rational_flag("tol", t)?;
    }
    if let Some(m) = o.max_rounds {
        cfg.max_rounds = m;
    }
    Ok(cfg)
}

fn lgp_cfg(o: &Opts) -> Result<LgpConfig, InputError> {
    let mut cfg = LgpConfig { straighten: straighten_cfg(o)?, ..LgpConfig::default() };
    if let Some(d) = o.depth {
        cfg.depth = d;
    }
    if let Some(b) = o.pair_budget {
        cfg.pair_budget = b;
    }
    Ok(cfg)
}

pub fn check_axioms_verb(o: &Opts, seed: u64) -> Result<Outcome, InputError> {
    const VERB: &str = "check-axioms";
    let (space, doc) = input::space(need(&o.space, "space", VERB)?)?;
    let count = o.n.unwrap_or(12);
    let samples = sample_points(&space, count, seed);
    let cfg = input::atlas_config(&space, Default::default(), granularity(o)?.as_ref(), &samples);
    let atlas = input::atlas(&space, &cfg)?;
    let inputs = json!({"space": doc, "samples": count, "atlas": cfg, "charts": atlas.len()});
    let rep = match check_axioms(&space, &atlas, &samples) {
        Ok(r) => r,
        Err(e) => return failed(VERB, inputs, e),
    };
    let pass = rep.passed;
    Ok(Outcome { report: Report { verb: VERB, pass, seed: Some(seed), inputs, result: to_value(&rep) }, figure: None })
}

pub fn segment_verb(o: &Opts) -> Result<Outcome, InputError> {
    const VERB: &str = "segment";
    let (space, sdoc) = input::space(need(&o.space, "space", VERB)?)?;
    let (pts, pdoc) = input::path_points(need(&o.path, "path", VERB)?, &space)?;
    if pts.len() != 2 {
        return Err(InputError::new("usage", "segment reads exactly two breakpoints from --path"));
    }
    let inputs = json!({"space": sdoc, "path": pdoc});
    let seg = match segment(&space, &pts[0], &pts[1]) {
        Ok(s) => s,
        Err(e) => return failed(VERB, inputs, e),
    };
    let region = seg.region(&space);
    let result = json!({
        "segment": seg,
        "region": region,
        "extent": convexa_core::rational::render(&seg.extent(&space)),
        "distance": convexa_core::rational::render(&space.distance(&pts[0], &pts[1])),
    });
    let mut fig = Figure::new("segment", &space);
    fig.region(&region, "#1f5fbf", "#1f5fbf");
    fig.dots(&pts, "#000000", 4.0);
    Ok(Outcome { report: Report { verb: VERB, pass: true, seed: None, inputs, result }, figure: Some(fig) })
}

pub fn straighten_verb(o: &Opts) -> Result<Outcome, InputError> {
    const VERB: &str = "straighten";
    let (space, sdoc) = input::space(need(&o.space, "space", VERB)?)?;
    let (pts, pdoc) = input::path_points(need(&o.path, "path", VERB)?, &space)?;
    let acfg = input::atlas_config(&space, Default::default(), granularity(o)?.as_ref(), &pts);
    let atlas = input::atlas(&space, &acfg)?;
    let (path, refined) = input::line_path(&space, &atlas, &pts)?;
    let scfg = straighten_cfg(o)?;
    let inputs = json!({"space": sdoc, "path": pdoc, "atlas": acfg, "straighten": scfg, "legs_refined": refined});
    let out = match straighten(&space, &atlas, &path, &scfg) {
        Ok(s) => s,
        Err(e) => return failed(VERB, inputs, e),
    };
    let cmp = match hull_compare(&space, &out.path, &path) {
        Ok(c) => c,
        Err(e) => return failed(VERB, inputs, e),
    };
    let (before, after) = match (path.region(&space), out.path.region(&space)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return failed(VERB, inputs, e),
    };
    let unchanged = before.is_subset(&after) && after.is_subset(&before);
    let shrank = matches!(cmp.verdict, Verdict::Less | Verdict::Equivalent);
    let result = json!({
        "converged": out.converged,
        "rounds": out.rounds,
        "merges": out.merges,
        "breakpoints": out.path.breakpoints,
        "charts": out.path.legs.iter().map(|l| l.chart).collect::<Vec<_>>(),
        "simple": out.path.simple,
        "unchanged": unchanged,
        "hull_verdict": cmp.verdict,
        "hull": cmp.hull_a,
    });
    let mut fig = Figure::new("straighten: input grey, output blue", &space);
    fig.region(&cmp.hull_a, "#9ecae1", "#9ecae1");
    if matches!(space, SpaceModel::Euclidean { .. }) {
        fig.polyline(&path.breakpoints, "#888888", 2.0);
        fig.polyline(&out.path.breakpoints, "#1f5fbf", 2.0);
    } else {
        fig.region(&before, "#888888", "none");
        fig.region(&after, "#1f5fbf", "none");
    }
    fig.dots(&out.path.breakpoints, "#000000", 3.0);
    let pass = out.converged && shrank;
    Ok(Outcome { report: Report { verb: VERB, pass, seed: None, inputs, result }, figure: Some(fig) })
}

fn factorization_json(f: &Factorization) -> Value {
    json!({
        "classes": f.classes,
        "quotient_edges": f.quotient_edges,
        "f_sharp": f.f_sharp,
        "f_sharp_injective": f.f_sharp_injective,
        "f_sharp_locally_injective": f.f_sharp_locally_injective,
    })
}

fn map_figure(title: &str, map: &SampledMap) -> Figure {
    let mut fig = Figure::new(title, &map.target);
    for (a, b) in map.edges() {
        fig.polyline(&[map.value(a).clone(), map.value(b).clone()], "#bbbbbb", 1.0);
    }
    fig.dots(map.values(), "#1f5fbf", 2.5);
    fig
}

pub fn factorize_verb(o: &Opts) -> Result<Outcome, InputError> {
    const VERB: &str = "factorize";
    let m = input::map(need(&o.map, "map", VERB)?, o.resolution)?;
    let depth = o.depth.unwrap_or(DEFAULT_DEPTH);
    let inputs = json!({"map": m.doc, "depth": depth});
    let open = is_locally_open_onto_image(&m.map, depth);
    let light = match monotone_light(&m.map) {
        Ok(f) => f,
        Err(e) => return failed(VERB, inputs, e),
    };
    let mut result = json!({
        "openness": open,
        "monotone_light": factorization_json(&light),
    });
    let pass = open.witness.is_none();
    if pass {
        let fq = match filtered_quotient(&m.map, depth) {
            Ok(f) => f,
            Err(e) => return failed(VERB, inputs, e),
        };
        result["filtered"] = factorization_json(&fq);
        result["commutes"] = json!(fq.commutes(&m.map));
        result["monotone_light_refines_filtered"] = json!(light.refines(&fq));
    }
    let fig = map_figure("sampled map image", &m.map);
    Ok(Outcome { report: Report { verb: VERB, pass, seed: None, inputs, result }, figure: Some(fig) })
}

fn map_atlas(o: &Opts, m: &input::MapInput) -> Result<(convexa_core::Atlas, convexa_core::AtlasConfig), InputError> {
    let base = input::suggested(m.preset.as_deref());
    let cfg = input::atlas_config(&m.map.target, base, granularity(o)?.as_ref(), m.map.values());
    Ok((input::atlas(&m.map.target, &cfg)?, cfg))
}

pub fn etale_verb(o: &Opts) -> Result<Outcome, InputError> {
    const VERB: &str = "etale";
    let m = input::map(need(&o.map, "map", VERB)?, o.resolution)?;
    let (atlas, cfg) = map_atlas(o, &m)?;
    let inputs = json!({"map": m.doc, "atlas": cfg});
    let cert = match verify_etale(&atlas, &m.map) {
        Ok(c) => c,
        Err(e) => return failed(VERB, inputs, e),
    };
    let lifted = match lift_atlas(&atlas, &m.map, &cert) {
        Ok(l) => l,
        Err(e) => return failed(VERB, inputs, e),
    };
    let result = json!({
        "certificate": cert,
        "lifted": {"space": convexa_core::models::SpaceDoc::describe(&lifted.space), "charts": lifted.atlas.len()},
    });
    let fig = map_figure("etale map image", &m.map);
    Ok(Outcome { report: Report { verb: VERB, pass: true, seed: None, inputs, result }, figure: Some(fig) })
}

pub fn lgp_verb(o: &Opts) -> Result<Outcome, InputError> {
    const VERB: &str = "lgp";
    let m = input::map(need(&o.map, "map", VERB)?, o.resolution)?;
    let (atlas, acfg) = map_atlas(o, &m)?;
    let cfg = lgp_cfg(o)?;
    let inputs = json!({"map": m.doc, "atlas": acfg, "lgp": cfg});
    let rep = match verify_weak_convexity(&m.map, &atlas, &cfg) {
        Ok(r) => r,
        Err(e) => return failed(VERB, inputs, e),
    };
    let mut fig = map_figure("image with sample geodesics", &m.map);
    for g in &rep.geodesics {
        fig.polyline(&g.image, "#d62728", 1.5);
    }
    let pass = rep.weakly_convex();
    Ok(Outcome {
        report: Report { verb: VERB, pass, seed: None, inputs, result: json!({"weakly_convex": pass, "report": rep}) },
        figure: Some(fig),
    })
}

pub fn klee_verb(o: &Opts) -> Result<Outcome, InputError> {
    const VERB: &str = "klee";
    let (space, sdoc) = input::space(need(&o.space, "space", VERB)?)?;
    let (region, rdoc) = input::region(need(&o.region, "region", VERB)?)?;
    let inputs = json!({"space": sdoc, "region": rdoc});
    let verdict = match klee_check(&space, &region) {
        Ok(v) => v,
        Err(e) => return failed(VERB, inputs, e),
    };
    let mut fig = Figure::new(format!("klee: {}", verdict.label()), &space);
    fig.region(&region, "#1f5fbf", "#1f5fbf");
    let witnesses: Vec<Point> = match &verdict {
        KleeVerdict::NotLocallyConvex { witness } => vec![witness.clone()],
        KleeVerdict::NotConvex { x, y } => vec![x.clone(), y.clone()],
        _ => Vec::new(),
    };
    fig.dots(&witnesses, "#d62728", 6.0);
    let pass = matches!(verdict, KleeVerdict::Convex | KleeVerdict::WeaklyConvex);
    let result = json!({"verdict": verdict, "label": verdict.label()});
    Ok(Outcome { report: Report { verb: VERB, pass, seed: None, inputs, result }, figure: Some(fig) })
}

pub fn momentum_verb(o: &Opts) -> Result<Outcome, InputError> {
    const VERB: &str = "momentum-demo";
    let n = o.n.unwrap_or(2);
    let r = o.resolution.unwrap_or(64);
    if n == 0 || r == 0 {
        return Err(InputError::new("usage", "--n and --resolution must be positive"));
    }
    let cfg = lgp_cfg(o)?;
    let inputs = json!({"n": n, "resolution": r, "lgp": cfg, "atlas": momentum_atlas_config(n)});
    let demo = match momentum_demo(n, r, &cfg) {
        Ok(d) => d,
        Err(e) => return failed(VERB, inputs, e),
    };
    let mut fig = Figure::new(format!("momentum image, n = {n}, resolution {r}"), &demo.map.target);
    let stride = (demo.map.vertex_count() / 3000).max(1);
    let sample: Vec<Point> = demo.map.values().iter().step_by(stride).cloned().collect();
    fig.dots(&sample, "#9ecae1", 2.0);
    let mut ring = demo.hull.fixed_points.clone();
    if let Some(first) = ring.first().cloned() {
        ring.push(first);
    }
    fig.polyline(&ring, "#000000", 1.5);
    for g in &demo.report.geodesics {
        fig.polyline(&g.image, "#d62728", 1.0);
    }
    fig.note("blue: image samples; black: fixed-point hull; red: sample geodesics");
    let pass = demo.report.weakly_convex();
    Ok(Outcome { report: Report { verb: VERB, pass, seed: None, inputs, result: to_value(&demo) }, figure: Some(fig) })
}
