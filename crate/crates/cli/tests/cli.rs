use std::path::{Path, PathBuf};
use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;

use interleavings::format::{parse_module, parse_variety, render_module, render_variety};
use interleavings_core::{build_variety, IntervalModule, PersistenceModule, Rational};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_interleavings"))
        .args(args)
        .output()
        .expect("run binary");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn module_file(dir: &Path, file: &str, name: &str, intervals: &[(&str, &str)]) -> PathBuf {
    let entries: Vec<Value> = intervals
        .iter()
        .map(|(b, d)| serde_json::json!({"birth": b, "death": d}))
        .collect();
    let path = dir.join(file);
    std::fs::write(&path, serde_json::json!({"name": name, "intervals": entries}).to_string()).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json(r: &Run) -> Value {
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    serde_json::from_str(&r.stdout).expect("valid JSON output")
}

fn cross_files(dir: &Path) -> (PathBuf, PathBuf) {
    (
        module_file(dir, "m.json", "M", &[("1", "4"), ("1.2", "3.9")]),
        module_file(dir, "n.json", "N", &[("1", "4"), ("0.9", "4.1")]),
    )
}

#[test]
fn window_tables_cover_all_four_directions() {
    let dir = tempfile::tempdir().unwrap();
    let (m, n) = cross_files(dir.path());
    let doc = json(&run(&["window", "--m", p(&m), "--n", p(&n)]));
    assert_eq!(doc["schema"], "interleavings.windows/1");
    let tables = doc["tables"].as_array().unwrap();
    let dirs: Vec<(String, String)> = tables
        .iter()
        .map(|t| (t["from"].as_str().unwrap().into(), t["to"].as_str().unwrap().into()))
        .collect();
    assert_eq!(
        dirs,
        [("M", "N"), ("N", "M"), ("M", "M"), ("N", "N")].map(|(a, b)| (a.to_string(), b.to_string()))
    );
    // S([6/5,39/10) -> [9/10,41/10)) = [1/5, 29/10)
    let entry = &tables[0]["entries"][3];
    assert_eq!((entry["source"].as_u64(), entry["target"].as_u64()), (Some(2), Some(2)));
    assert_eq!(entry["window"], serde_json::json!({"kind": "half-open", "lo": "1/5", "hi": "29/10"}));
    // S([9/10,41/10) -> [6/5,39/10)) = [3/10, 3)
    assert_eq!(
        tables[1]["entries"][3]["window"],
        serde_json::json!({"kind": "half-open", "lo": "3/10", "hi": "3"})
    );
}

#[test]
fn distance_of_identical_files_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let a = module_file(dir.path(), "a.json", "A", &[("1", "3")]);
    let doc = json(&run(&["distance", "--m", p(&a), "--n", p(&a)]));
    assert_eq!(doc["method"], "hom-life");
    assert_eq!(doc["distance"], "0");
    assert_eq!(doc["m1"], "0");
    assert_eq!(doc["m2"], "1");
}

#[test]
fn distance_for_single_intervals_reports_hom_lifetimes() {
    let dir = tempfile::tempdir().unwrap();
    let m = module_file(dir.path(), "m.json", "M", &[("1", "3")]);
    let n = module_file(dir.path(), "n.json", "N", &[("0", "2")]);
    let r = run(&["distance", "--m", p(&m), "--n", p(&n)]);
    let doc = json(&r);
    let keys = [
        "schema", "method", "distance", "m1", "m2", "sigma", "tau", "sigma_prime", "tau_prime",
        "matching", "unmatched_m", "unmatched_n",
    ];
    let positions: Vec<usize> = keys
        .iter()
        .map(|k| r.stdout.find(&format!("\"{k}\":")).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "key order in {}", r.stdout);
    assert_eq!(doc.as_object().unwrap().len(), keys.len());
    assert_eq!(
        (&doc["sigma"], &doc["sigma_prime"], &doc["tau"], &doc["tau_prime"]),
        (&Value::from("0"), &Value::from("1"), &Value::from("1"), &Value::from("3"))
    );
    assert_eq!(doc["distance"], "1");
}

#[test]
fn variety_at_three_has_two_free_variables() {
    let dir = tempfile::tempdir().unwrap();
    let (m, n) = cross_files(dir.path());
    let r = run(&["variety", "--m", p(&m), "--n", p(&n), "--epsilon", "3"]);
    let doc = json(&r);
    assert_eq!(doc["free_variables"], serde_json::json!(["k[2][1]", "l[1][2]"]));
    let gens = doc["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 6);
    assert!(gens.iter().all(|g| g["terms"].as_array().unwrap().len() == 1));
    assert_eq!(doc["status_hint"], "unknown");
    assert!(doc["probe"].is_null());
    // the document parses back to the presentation it came from
    let parsed = parse_variety(&r.stdout).unwrap();
    let module = |name: &str, xs: &[(&str, &str)]| {
        PersistenceModule::new(
            name,
            xs.iter()
                .map(|(b, d)| IntervalModule::new(b.parse().unwrap(), d.parse().unwrap()).unwrap())
                .collect(),
        )
    };
    let expected = build_variety(
        &module("M", &[("1", "4"), ("1.2", "3.9")]),
        &module("N", &[("1", "4"), ("0.9", "4.1")]),
        &Rational::from_integer(3),
    )
    .unwrap();
    assert_eq!(parsed, expected);
}

#[test]
fn variety_probe_records_a_verified_witness() {
    let dir = tempfile::tempdir().unwrap();
    let (m, n) = cross_files(dir.path());
    let r = run(&["variety", "--m", p(&m), "--n", p(&n), "--epsilon", "0.2", "--probe", "300", "--seed", "4"]);
    let doc = json(&r);
    assert_eq!(doc["status_hint"], "witness-found");
    assert_eq!(doc["probe"]["outcome"], "witness-found");
    assert_eq!(doc["forced_zero"], serde_json::json!(["l[2][2]"]));
    let parsed = parse_variety(&r.stdout).unwrap();
    assert!(parsed.accepts(parsed.witness.as_ref().unwrap()));
    // deterministic for a fixed seed
    let again = run(&["variety", "--m", p(&m), "--n", p(&n), "--epsilon", "0.2", "--probe", "300", "--seed", "4"]);
    assert_eq!(again.stdout, r.stdout);
}

#[test]
fn classify_and_progression_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let m = module_file(dir.path(), "m.json", "M", &[("6", "8")]);
    let n = module_file(dir.path(), "n.json", "N", &[("1", "2")]);
    let doc = json(&run(&["classify", "--m", p(&m), "--n", p(&n), "--epsilon", "6.5"]));
    assert_eq!(doc["class"], "l-axis");
    assert_eq!(doc["epsilon"], "13/2");

    let doc = json(&run(&["progression", "--m", p(&m), "--n", p(&n)]));
    assert_eq!(doc["breakpoints"], serde_json::json!(["1", "6", "7"]));
    assert_eq!(doc["segments"][0], serde_json::json!({"start": "0", "end": "1", "class": "empty"}));
    assert_eq!(doc["segments"][3], serde_json::json!({"start": "7", "end": null, "class": "origin"}));
    assert_eq!(doc["predicted"], serde_json::json!(["origin", "l-axis", "origin"]));

    let text = run(&["progression", "--m", p(&m), "--n", p(&n), "--format", "text"]);
    assert_eq!(text.code, 0);
    assert!(text.stdout.starts_with("M = [6, 8)   N = [1, 2)   D = 1\n"));
    assert!(text.stdout.contains("l-axis"));
}

#[test]
fn multi_summand_input_is_rejected_by_single_interval_commands() {
    let dir = tempfile::tempdir().unwrap();
    let (m, n) = cross_files(dir.path());
    for cmd in ["classify", "progression"] {
        let mut args = vec![cmd, "--m", p(&m), "--n", p(&n)];
        if cmd == "classify" {
            args.extend(["--epsilon", "1"]);
        }
        let r = run(&args);
        assert_eq!(r.code, 1);
        assert!(r.stderr.contains("needs single-interval modules"), "{}", r.stderr);
        assert!(r.stdout.is_empty());
    }
}

#[test]
fn bad_input_exits_with_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let good = module_file(dir.path(), "good.json", "G", &[("0", "1")]);
    let degenerate = module_file(dir.path(), "bad.json", "B", &[("2", "2")]);
    let malformed = dir.path().join("malformed.json");
    std::fs::write(&malformed, "{\"name\": ").unwrap();
    let missing = dir.path().join("missing.json");

    let cases: Vec<Vec<&str>> = vec![
        vec!["distance", "--m", p(&degenerate), "--n", p(&good)],
        vec!["distance", "--m", p(&malformed), "--n", p(&good)],
        vec!["distance", "--m", p(&missing), "--n", p(&good)],
        vec!["classify", "--m", p(&good), "--n", p(&good), "--epsilon", "-1"],
        vec!["classify", "--m", p(&good), "--n", p(&good), "--epsilon", "1/0"],
        vec!["distance", "--m", p(&good), "--n", p(&good), "--frobnicate"],
        vec!["frobnicate"],
        vec![],
    ];
    for args in cases {
        let r = run(&args);
        assert_eq!(r.code, 1, "{args:?}: {}", r.stderr);
        assert!(!r.stderr.is_empty(), "{args:?}");
    }
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("progression"));
}

#[test]
fn verify_small_run() {
    let r = run(&["verify", "--samples", "200", "--oracle-samples", "20", "--seed", "3"]);
    let doc = json(&r);
    assert_eq!(doc["schema"], "interleavings.verify/1");
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["theorem"]["samples"], 200);
    assert_eq!(doc["oracle"]["pairs"], 20);
    let again = run(&["verify", "--samples", "200", "--oracle-samples", "20", "--seed", "3"]);
    assert_eq!(again.stdout, r.stdout);
}

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(u, v)| Rational::new(u, v).unwrap())
}

fn interval() -> impl Strategy<Value = IntervalModule> {
    (rational(), rational())
        .prop_filter("distinct", |(a, b)| a != b)
        .prop_map(|(a, b)| if a < b { (a, b) } else { (b, a) })
        .prop_map(|(a, b)| IntervalModule::new(a, b).unwrap())
}

fn module(name: &'static str) -> impl Strategy<Value = PersistenceModule> {
    prop::collection::vec(interval(), 0..4).prop_map(move |xs| PersistenceModule::new(name, xs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn module_files_round_trip(m in module("M")) {
        prop_assert_eq!(parse_module(&render_module(&m)).unwrap(), m);
    }

    #[test]
    fn presentations_round_trip(
        m in module("M").prop_filter("nonempty", |m| !m.is_empty()),
        n in module("N").prop_filter("nonempty", |m| !m.is_empty()),
        e in (0i64..=40, 1i64..=8).prop_map(|(u, v)| Rational::new(u, v).unwrap()),
    ) {
        let pres = build_variety(&m, &n, &e).unwrap();
        let text = render_variety(&pres, None);
        prop_assert_eq!(parse_variety(&text).unwrap(), pres.clone());
        prop_assert_eq!(render_variety(&parse_variety(&text).unwrap(), None), text);
    }
}
