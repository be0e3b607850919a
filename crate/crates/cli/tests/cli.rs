use std::path::{Path, PathBuf};
use std::process::Command;

use chromatic_cli::{run, Output};
use serde_json::Value as Json;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .display()
        .to_string()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn chromatic(args: &[&str]) -> Output {
    run(std::iter::once("chromatic").chain(args.iter().copied()))
}

fn report(out: &Output) -> Json {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {out:?}"))
}

#[test]
fn unknown_color_is_an_input_error() {
    let out = chromatic(&["skel", "run", "--skeleton", &data("buchi_ab_skeleton.json"), "--word", "a,z"]);
    assert_eq!(out.code, 2, "{out:?}");
    assert!(out.stderr.contains("unknown color `z`"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two_and_help_exits_zero() {
    assert_eq!(chromatic(&["skel", "frobnicate"]).code, 2);
    assert_eq!(chromatic(&["ds", "classify", "--lambda", "1/2"]).code, 2);
    assert_eq!(chromatic(&["ds", "classify", "--lambda", "3/2", "--k", "1"]).code, 2);
    let help = chromatic(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("synthesize"));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = chromatic(&["skel", "supports", "--skeleton", &data("no_such_file.json")]);
    assert_eq!(out.code, 2);
}

#[test]
fn cycle_consistency_failure_carries_a_rechecked_witness() {
    let out = chromatic(&[
        "check",
        "cycle-consistency",
        "--condition",
        &data("buchi_ab.json"),
        "--skeleton",
        &data("trivial_abc.json"),
    ]);
    assert_eq!(out.code, 1, "{out:?}");
    let r = report(&out);
    assert_eq!(r["verdict"], "fail");
    assert_eq!(r["rechecked"], true);
    assert_eq!(r["witness"]["first"], serde_json::json!([["triv", "a"]]));
    assert_eq!(r["witness"]["second"], serde_json::json!([["triv", "b"]]));
    assert_eq!(r["inputs"]["condition"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn prefix_independence_failure_on_ab_prefix() {
    let out = chromatic(&[
        "check",
        "prefix-independence",
        "--condition",
        &data("ab_prefix.json"),
        "--skeleton",
        &data("ab_prefix_skeleton.json"),
    ]);
    assert_eq!(out.code, 1);
    let r = report(&out);
    assert_eq!(r["witness"]["first"], serde_json::json!([]));
    assert_eq!(r["witness"]["second"], serde_json::json!(["a"]));
    assert_eq!(r["rechecked"], true);
}

#[test]
fn support_cap_exits_three() {
    let out = chromatic(&["skel", "supports", "--skeleton", &data("competition_automaton.json"), "--cap", "5"]);
    assert_eq!(out.code, 3, "{out:?}");
}

#[test]
fn failed_precondition_reports_its_stage() {
    let out = chromatic(&[
        "synthesize",
        "--condition",
        &data("ab_prefix.json"),
        "--skeleton",
        &data("ab_prefix_skeleton.json"),
    ]);
    assert_eq!(out.code, 1);
    let r = report(&out);
    assert_eq!(r["stage"], "assignment");
    assert_eq!(r["precondition"], "transient transitions");
}

#[test]
fn mutated_automaton_fails_verification_on_m1c() {
    let out = chromatic(&[
        "verify",
        "--condition",
        &data("competition_muller.json"),
        "--automaton",
        &data("competition_mutated.json"),
    ]);
    assert_eq!(out.code, 1);
    assert_eq!(report(&out)["check"]["support_mismatch"]["support"], "{(m1,c)}");
    let good = chromatic(&[
        "verify",
        "--condition",
        &data("competition_muller.json"),
        "--automaton",
        &data("competition_automaton.json"),
    ]);
    assert_eq!(good.code, 0);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let runs: Vec<Vec<&str>> = vec![
        vec!["synthesize", "--condition", "C:buchi_ab.json", "--skeleton", "S:buchi_ab_skeleton.json", "--seed", "7"],
        vec!["game", "lift-experiment", "--condition", "C:buchi_ab.json", "--skeleton", "S:buchi_ab_skeleton.json", "--samples", "10"],
        vec!["ds", "demo-cc", "--lambda", "1/2", "--k", "2", "--samples", "30", "--seed", "3"],
        vec!["demo", "mp", "--n", "10"],
    ];
    for args in runs {
        let owned: Vec<String> = args
            .iter()
            .map(|a| match a.split_once(':') {
                Some((_, f)) if a.ends_with(".json") => data(f),
                _ => a.to_string(),
            })
            .collect();
        let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
        let (a, b) = (chromatic(&refs), chromatic(&refs));
        assert_eq!(a.code, 0, "{a:?}");
        assert_eq!(a, b, "{refs:?}");
    }
}

#[test]
fn gap_automaton_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("gap.json");
    let dot_path = dir.path().join("gap.dot");
    let out = chromatic(&[
        "ds",
        "gap-automaton",
        "--lambda",
        "1/2",
        "--k",
        "2",
        "--out",
        out_path.to_str().unwrap(),
        "--dot",
        dot_path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0);
    let want = std::fs::read_to_string(golden("gap_half_k2.json")).unwrap();
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), want);
    let doc: Json = serde_json::from_str(&want).unwrap();
    assert_eq!(report(&out)["automaton"], doc);
    // the rendering carries the same edge list, with parallel edges merged
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    let mut merged = std::collections::BTreeMap::<(String, String), Vec<String>>::new();
    for e in doc["upd"].as_array().unwrap() {
        let [s, c, t] = [0, 1, 2].map(|i| e[i].as_str().unwrap().to_string());
        merged.entry((s, t)).or_default().push(c);
    }
    for ((s, t), cs) in merged {
        let line = format!("\"{s}\" -> \"{t}\" [label=\"{}\"];", cs.join(", "));
        assert!(dot.contains(&line), "missing {line}");
    }
}

#[test]
fn solved_strategy_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.json");
    let strat = dir.path().join("s.json");
    let synth = chromatic(&[
        "synthesize",
        "--condition",
        &data("buchi_ab.json"),
        "--skeleton",
        &data("buchi_ab_skeleton.json"),
        "--out",
        d.to_str().unwrap(),
    ]);
    assert_eq!(synth.code, 0);
    let solve = chromatic(&[
        "game",
        "solve",
        "--arena",
        &data("one_state_arena.json"),
        "--automaton",
        d.to_str().unwrap(),
        "--out",
        strat.to_str().unwrap(),
    ]);
    assert_eq!(solve.code, 0, "{solve:?}");
    let verify = chromatic(&[
        "game",
        "verify",
        "--arena",
        &data("one_state_arena.json"),
        "--automaton",
        d.to_str().unwrap(),
        "--strategy",
        strat.to_str().unwrap(),
    ]);
    assert_eq!(verify.code, 0, "{verify:?}");

    // always playing `a` loses from a winnable state
    let mut doc: Json = serde_json::from_str(&std::fs::read_to_string(&strat).unwrap()).unwrap();
    for row in doc["next"].as_array_mut().unwrap() {
        row[2] = "a".into();
    }
    std::fs::write(&strat, doc.to_string()).unwrap();
    let bad = chromatic(&[
        "game",
        "verify",
        "--arena",
        &data("one_state_arena.json"),
        "--automaton",
        d.to_str().unwrap(),
        "--strategy",
        strat.to_str().unwrap(),
    ]);
    assert_eq!(bad.code, 1);
    assert_eq!(report(&bad)["witness"]["period"], serde_json::json!(["a"]));
}

#[test]
fn binary_exit_codes_match_the_library() {
    let bin = env!("CARGO_BIN_EXE_chromatic");
    let status = Command::new(bin)
        .args(["check", "cycle-consistency", "--condition", &data("buchi_ab.json"), "--skeleton", &data("trivial_abc.json")])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
    assert!(String::from_utf8(status.stdout).unwrap().contains("\"verdict\": \"fail\""));
    let status = Command::new(bin).args(["ds", "classify", "--lambda", "2/3", "--k", "1"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
}
