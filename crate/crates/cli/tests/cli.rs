use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jsonschema::{Retrieve, Uri};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn schemas_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn convexa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convexa")).args(args).env_remove("CONVEXA_SEED").output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("convexa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stderr)))
}

struct Dir;

impl Retrieve for Dir {
    fn retrieve(&self, uri: &Uri<String>) -> Result<Value, Box<dyn std::error::Error + Send + Sync>> {
        let file = uri.as_str().rsplit('/').next().unwrap().split('#').next().unwrap().to_string();
        Ok(serde_json::from_str(&std::fs::read_to_string(schemas_dir().join(file))?)?)
    }
}

fn valid(schema: &str, doc: &Value) -> bool {
    let s: Value = serde_json::from_str(&std::fs::read_to_string(schemas_dir().join(schema)).unwrap()).unwrap();
    jsonschema::options().with_retriever(Dir).build(&s).unwrap().is_valid(doc)
}

fn is_pq(s: &str) -> bool {
    let b = s.strip_prefix('-').unwrap_or(s);
    b.split_once('/').is_some_and(|(n, d)| {
        !n.is_empty() && !d.is_empty() && n.bytes().all(|c| c.is_ascii_digit()) && d.bytes().all(|c| c.is_ascii_digit())
    })
}

#[test]
fn momentum_demo_draws_the_triangle() {
    let svg = scratch("momentum.svg");
    let out = convexa(&["momentum-demo", "--n", "2", "--resolution", "64", "--svg", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["result"]["report"]["failures"].as_array().unwrap().len(), 0);
    assert_eq!(r["result"]["hull"]["fixed_points"].as_array().unwrap().len(), 3);
    let fig = std::fs::read_to_string(&svg).unwrap();
    assert!(fig.starts_with("<svg") && fig.contains("<polyline") && fig.contains("fixed-point hull"));
}

#[test]
fn klee_flags_the_l_shape() {
    let out = convexa(&["klee", "--space", data("plane.json").to_str().unwrap(), "--region", data("lshape.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["result"]["label"], "not_locally_convex");
    assert_eq!(r["result"]["verdict"]["witness"], serde_json::json!(["1/1", "1/1"]));
    assert_eq!(r["decimals"]["/result/verdict/witness/0"], 1.0);

    let ok = convexa(&["klee", "--space", data("plane.json").to_str().unwrap(), "--region", data("square.json").to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(report(&ok)["result"]["label"], "convex");
}

#[test]
fn straightening_a_tree_geodesic_keeps_it() {
    let out =
        convexa(&["straighten", "--space", data("tree.json").to_str().unwrap(), "--path", data("tree_path.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["result"]["unchanged"], true);
    assert_eq!(r["result"]["hull_verdict"], "equivalent");
    assert_eq!(r["result"]["breakpoints"][0], serde_json::json!({"vertex": 0}));
    assert_eq!(r["result"]["breakpoints"].as_array().unwrap().last().unwrap(), &serde_json::json!({"vertex": 2}));
}

#[test]
fn straightening_a_polyline_with_large_charts_gives_the_chord() {
    let out = convexa(&[
        "straighten",
        "--space",
        data("plane.json").to_str().unwrap(),
        "--path",
        data("polyline.json").to_str().unwrap(),
        "--atlas-granularity",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["breakpoints"], serde_json::json!([["0/1", "0/1"], ["3/2", "1/1"]]));
    assert_eq!(r["result"]["hull_verdict"], "less");
}

#[test]
fn reports_are_deterministic_and_match_the_schema() {
    let runs: Vec<Vec<&str>> = vec![
        vec!["check-axioms", "--space"],
        vec!["factorize", "--map", "preset:doubling"],
        vec!["etale", "--map", "preset:figure-eight"],
        vec!["lgp", "--map", "preset:square"],
        vec!["segment", "--space"],
    ];
    let tree = data("tree.json");
    let plane = data("plane.json");
    let polyline2 = scratch("two.json");
    std::fs::write(&polyline2, r#"{"breakpoints": [["0","0"], ["3","1/2"]]}"#).unwrap();
    for mut args in runs {
        match args[0] {
            "check-axioms" => args.push(tree.to_str().unwrap()),
            "segment" => args.extend([plane.to_str().unwrap(), "--path", polyline2.to_str().unwrap()]),
            _ => {}
        }
        let a = convexa(&args);
        let b = convexa(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?} is not deterministic");
        let r = report(&a);
        assert!(valid("report.schema.json", &r), "{args:?}");
        for (ptr, d) in r["decimals"].as_object().unwrap() {
            let exact = r.pointer(ptr).and_then(Value::as_str).unwrap();
            assert!(is_pq(exact), "{ptr}: {exact}");
            assert!(d.is_number());
        }
    }
}

#[test]
fn seed_controls_axiom_samples() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_convexa"))
            .args(["check-axioms", "--space", data("tree.json").to_str().unwrap(), "--n", "6"])
            .env("CONVEXA_SEED", seed)
            .output()
            .unwrap()
    };
    let (a, b, c) = (run("1"), run("1"), run("2"));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["seed"], 1);
    assert_eq!(report(&c)["seed"], 2);
}

#[test]
fn echoed_inputs_reparse_under_their_schemas() {
    let out = convexa(&["straighten", "--space", data("tree.json").to_str().unwrap(), "--path", data("tree_path.json").to_str().unwrap()]);
    let r = report(&out);
    assert!(valid("space.schema.json", &r["inputs"]["space"]));
    assert!(valid("path.schema.json", &r["inputs"]["path"]));
    // The straightened path is itself a valid path file.
    let path = serde_json::json!({"breakpoints": r["result"]["breakpoints"], "charts": r["result"]["charts"]});
    assert!(valid("path.schema.json", &path));
    assert!(valid("region.schema.json", &r["result"]["hull"]));

    let m = convexa(&["factorize", "--map", data("interval_map.json").to_str().unwrap()]);
    assert_eq!(m.status.code(), Some(0));
    assert!(valid("map.schema.json", &report(&m)["inputs"]["map"]));
}

#[test]
fn bad_input_exits_two_with_json_on_stderr() {
    let cases: Vec<Vec<String>> = vec![
        vec!["check-axioms".into(), "--space".into(), data("bad_space.json").to_str().unwrap().into()],
        vec!["klee".into(), "--space".into(), data("plane.json").to_str().unwrap().into()],
        vec!["factorize".into(), "--map".into(), "preset:nonesuch".into()],
        vec!["segment".into(), "--space".into(), "/nonexistent.json".into(), "--path".into(), "x".into()],
        vec!["frobnicate".into()],
    ];
    for args in cases {
        let out = Command::new(env!("CARGO_BIN_EXE_convexa")).args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        let err: Value = serde_json::from_slice(&out.stderr).unwrap_or_else(|_| panic!("{args:?}: stderr not JSON"));
        assert!(err["error"].is_string() && err["message"].is_string());
    }
    let schema_err = convexa(&["check-axioms", "--space", data("bad_space.json").to_str().unwrap()]);
    let err: Value = serde_json::from_slice(&schema_err.stderr).unwrap();
    assert_eq!(err["error"], "schema");
    assert!(err["details"][0].as_str().unwrap().starts_with("/a"));
}

#[test]
fn failed_hypotheses_exit_one_with_a_report() {
    let out = convexa(&["factorize", "--map", "preset:cubic"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    assert_eq!(r["result"]["openness"]["open"], false);
    let lgp = convexa(&["lgp", "--map", "preset:l-shape"]);
    assert_eq!(lgp.status.code(), Some(1));
    assert_eq!(report(&lgp)["result"]["error"]["kind"], "hypothesis_failed");
}
