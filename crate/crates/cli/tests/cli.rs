//! End-to-end tests against the compiled binary: exit codes, JSON shapes,
//! file-based inputs, the closure-cap environment knob, and survey
//! determinism across reruns and worker counts.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const CAP_ENV: &str = "TRANSVERSAL_LAB_CAP";

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_transversal-lab"));
    cmd.args(args).env_remove(CAP_ENV);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output {
        status,
        stdout,
        stderr,
    } = cmd.output().expect("binary runs");
    (
        status.code().expect("no signal"),
        String::from_utf8(stdout).expect("stdout is utf-8"),
        String::from_utf8(stderr).expect("stderr is utf-8"),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_env(args, &[])
}

fn json(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("stdout is a single JSON document")
}

#[test]
fn help_and_version_exit_zero() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    for sub in [
        "catalog",
        "subgroups",
        "transversals",
        "loop",
        "torsion",
        "verify",
        "survey",
    ] {
        assert!(stdout.contains(sub), "help should mention {sub}");
    }
    let (code, _, _) = run(&["--version"]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["verify", "--help"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_and_bad_references_exit_three() {
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 3);

    let (code, _, stderr) = run(&[
        "verify",
        "bogus",
        "--group",
        "symmetric:3",
        "--subgroup",
        "2",
    ]);
    assert_eq!(code, 3);
    for id in [
        "prop1",
        "thm_norm",
        "cor_norm",
        "thm2",
        "cor_elem_ab",
        "cameron",
        "embed_gss",
        "iso3_soft",
    ] {
        assert!(
            stderr.contains(id),
            "claim list should mention {id}: {stderr}"
        );
    }

    let (code, _, stderr) = run(&["subgroups", "--group", "nosuch:7"]);
    assert_eq!(code, 3);
    assert!(!stderr.is_empty());

    let (code, _, _) = run(&["subgroups", "--group", "./does-not-exist.json"]);
    assert_eq!(code, 3);

    // cycle words need a permutation realization; table-built groups refuse
    let (code, _, stderr) = run(&[
        "transversals",
        "--group",
        "dihedral:4",
        "--subgroup",
        "(1 2)",
    ]);
    assert_eq!(code, 3);
    assert!(
        stderr.contains("indices"),
        "should point at index syntax: {stderr}"
    );

    let (code, _, _) = run(&["transversals", "--group", "symmetric:3"]);
    assert_eq!(code, 3, "transversals requires a subgroup");
}

#[test]
fn catalog_lists_groups_and_hash() {
    let (code, stdout, _) = run(&["catalog", "--max-order", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["groups"].as_array().unwrap().len(), 1);
    assert_eq!(v["groups"][0]["name"], "cyclic:1");
    assert_eq!(v["groups"][0]["order"], 1);
    let hash = v["catalog_hash"].as_str().unwrap();
    assert_eq!(hash.len(), 64);
    assert!(hash.chars().all(|c| c.is_ascii_hexdigit()));

    let (code, stdout, _) = run(&["catalog"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("symmetric:3"));
    assert!(stdout.contains("quaternion8"));
}

#[test]
fn subgroups_reports_flags() {
    let (code, stdout, _) = run(&["subgroups", "--group", "symmetric:3", "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    let subs = v["subgroups"].as_array().unwrap();
    assert_eq!(subs.len(), 6);
    let whole = subs.iter().find(|s| s["order"] == 6).unwrap();
    assert_eq!(whole["normal"], true);
    assert_eq!(whole["core_free"], false);
    let reflection = subs
        .iter()
        .find(|s| s["elements"] == serde_json::json!([0, 2]))
        .unwrap();
    assert_eq!(reflection["normal"], false);
    assert_eq!(reflection["core_free"], true);
    assert_eq!(reflection["index"], 3);
}

#[test]
fn transversals_counts_and_generating_flags() {
    let (code, stdout, _) = run(&[
        "transversals",
        "--group",
        "symmetric:3",
        "--subgroup",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["total"], 4);
    let ts = v["transversals"].as_array().unwrap();
    assert_eq!(ts.len(), 4);
    let find = |reps: [usize; 3]| {
        ts.iter()
            .find(|t| t["reps"] == serde_json::json!(reps))
            .unwrap_or_else(|| panic!("transversal {reps:?} missing"))
    };
    assert_eq!(find([0, 1, 3])["generating"], true);
    assert_eq!(find([0, 4, 3])["generating"], false);
}

#[test]
fn verify_cor_norm_uses_the_first_generating_transversal() {
    let (code, stdout, _) = run(&[
        "verify",
        "cor_norm",
        "--group",
        "symmetric:3",
        "--subgroup",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["claim"], "cor_norm");
    assert_eq!(v["outcome"], "pass");
    assert_eq!(v["holds"], true);
    assert_eq!(v["transversal"], serde_json::json!([0, 1, 3]));
    // both sides are false on this witness, and they agree
    assert_eq!(v["details"]["group_side"], false);
    assert_eq!(v["details"]["loop_side"], false);
}

#[test]
fn verify_thm2_dihedral_witness_has_nontrivial_torsion() {
    let (code, stdout, _) = run(&[
        "verify",
        "thm2",
        "--group",
        "dihedral:4",
        "--subgroup",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["outcome"], "pass");
    assert_eq!(v["details"]["inner_order"], 2);
    assert_eq!(v["details"]["elementary_abelian"], true);
}

#[test]
fn verify_iso3_soft_counts_three_classes() {
    let (code, stdout, _) = run(&[
        "verify",
        "iso3_soft",
        "--group",
        "symmetric:3",
        "--subgroup",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["outcome"], "pass");
    assert_eq!(v["details"]["actual"], 3);
}

#[test]
fn hypothesis_violations_exit_two() {
    // the subgroup is not contained in the proposed normal subgroup
    let (code, stdout, _) = run(&[
        "verify",
        "cor_elem_ab",
        "--group",
        "symmetric:3",
        "--subgroup",
        "2",
        "--normal",
        "0,3,4",
        "--format",
        "json",
    ]);
    assert_eq!(code, 2);
    let v = json(&stdout);
    assert_eq!(v["error"], "hypothesis_violated");
    assert_eq!(v["claim"], "cor_elem_ab");

    // a normal subgroup is never core-free (unless trivial)
    let (code, _, _) = run(&[
        "verify",
        "cameron",
        "--group",
        "cyclic:4",
        "--subgroup",
        "2",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn flag_misuse_is_refused() {
    let (code, _, stderr) = run(&[
        "verify",
        "prop1",
        "--group",
        "symmetric:3",
        "--subgroup",
        "2",
        "--normal",
        "0",
    ]);
    assert_eq!(code, 3);
    assert!(stderr.contains("--normal"), "{stderr}");

    let (code, _, stderr) = run(&[
        "verify",
        "cameron",
        "--group",
        "symmetric:3",
        "--subgroup",
        "2",
        "--transversal",
        "0,1,3",
    ]);
    assert_eq!(code, 3);
    assert!(stderr.contains("--transversal"), "{stderr}");
}

#[test]
fn closure_cap_env_is_enforced_and_validated() {
    let args = ["torsion", "--group", "symmetric:3", "--subgroup", "2"];
    let (code, _, _) = run(&args);
    assert_eq!(code, 0);

    // the multiplication group has order 6, over a cap of 5
    let (code, _, stderr) = run_env(&args, &[(CAP_ENV, "5")]);
    assert_eq!(code, 3);
    assert!(!stderr.is_empty());

    let (code, _, stderr) = run_env(&["catalog"], &[(CAP_ENV, "banana")]);
    assert_eq!(code, 3);
    assert!(stderr.contains(CAP_ENV), "{stderr}");

    let (code, _, _) = run_env(&["catalog"], &[(CAP_ENV, "0")]);
    assert_eq!(code, 3);
}

#[test]
fn loop_json_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();

    let (code, stdout, _) = run(&[
        "loop",
        "--group",
        "symmetric:3",
        "--subgroup",
        "2",
        "--transversal",
        "0,1,3",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let direct = json(&stdout);
    assert_eq!(direct["associative"], false);
    assert_eq!(direct["mult_order"], 6);
    assert_eq!(direct["inner_order"], 2);
    assert_eq!(
        direct["loop"]["table"],
        serde_json::json!([[0, 1, 2], [1, 0, 0], [2, 2, 1]])
    );

    let path = dir.path().join("loop.json");
    fs::write(&path, serde_json::to_string(&direct["loop"]).unwrap()).unwrap();
    let (code, stdout, _) = run(&["loop", "--loop", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0);
    let reloaded = json(&stdout);
    assert_eq!(reloaded["loop"], direct["loop"]);
    assert_eq!(reloaded["mult_order"], 6);

    // verify claims about a free-standing loop work straight off the file
    let (code, stdout, _) = run(&[
        "verify",
        "prop1",
        "--loop",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(json(&stdout)["outcome"], "pass");

    // a non-Latin column is a malformed loop
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"order":2,"table":[[0,1],[1,1]]}"#).unwrap();
    let (code, _, _) = run(&["loop", "--loop", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
}

#[test]
fn group_files_realize_tables_and_permutations() {
    let dir = tempfile::tempdir().unwrap();

    let perm = dir.path().join("s3.json");
    fs::write(
        &perm,
        r#"{"type":"perm","degree":3,"generators":["(1 2)","(1 2 3)"]}"#,
    )
    .unwrap();
    let (code, stdout, _) = run(&[
        "subgroups",
        "--group",
        perm.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(json(&stdout)["subgroups"].as_array().unwrap().len(), 6);

    // cycle-word subgroup specs work for file groups with a realization
    let (code, stdout, _) = run(&[
        "transversals",
        "--group",
        perm.to_str().unwrap(),
        "--subgroup",
        "(1 2)",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(json(&stdout)["total"], 4);

    let table = dir.path().join("z2.json");
    fs::write(&table, r#"{"type":"table","n":2,"table":[[0,1],[1,0]]}"#).unwrap();
    let (code, stdout, _) = run(&[
        "subgroups",
        "--group",
        table.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(json(&stdout)["subgroups"].as_array().unwrap().len(), 2);

    let broken = dir.path().join("broken.json");
    fs::write(&broken, r#"{"type":"table","n":2,"table":[[0,1]]}"#).unwrap();
    let (code, _, _) = run(&["subgroups", "--group", broken.to_str().unwrap()]);
    assert_eq!(code, 3);
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn survey_outputs_are_deterministic_across_runs_and_workers() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let c = tempfile::tempdir().unwrap();

    let base = ["survey", "--max-order", "8", "--format", "json"];
    let (code, stdout_a, _) = run(&[
        &base[..],
        &["--jobs", "1", "--out", a.path().to_str().unwrap()],
    ]
    .concat());
    assert_eq!(code, 0);
    let (code, stdout_b, _) = run(&[
        &base[..],
        &["--jobs", "3", "--out", b.path().to_str().unwrap()],
    ]
    .concat());
    assert_eq!(code, 0);
    let (code, _, _) = run(&[
        &base[..],
        &["--jobs", "1", "--out", c.path().to_str().unwrap()],
    ]
    .concat());
    assert_eq!(code, 0);

    for name in ["report.jsonl", "summary.json", "summary.csv"] {
        assert!(a.path().join(name).exists(), "{name} missing");
    }

    // records never depend on the worker count, and reruns are bit-exact
    assert_eq!(
        read(a.path(), "report.jsonl"),
        read(b.path(), "report.jsonl")
    );
    assert_eq!(
        read(a.path(), "report.jsonl"),
        read(c.path(), "report.jsonl")
    );
    assert_eq!(
        read(a.path(), "summary.json"),
        read(c.path(), "summary.json")
    );
    assert_eq!(read(a.path(), "summary.csv"), read(c.path(), "summary.csv"));

    let summary = json(&stdout_a);
    assert_eq!(summary["failures"], 0);
    assert_eq!(summary["config"]["max_group_order"], 8);
    assert_eq!(json(&stdout_b)["records"], summary["records"]);

    // every line of the report parses back into a record with a known claim
    for line in read(a.path(), "report.jsonl").lines() {
        let rec: Value = serde_json::from_str(line).unwrap();
        assert!(rec["claim"].is_string());
        assert!(rec["holds"].is_boolean());
    }
}
