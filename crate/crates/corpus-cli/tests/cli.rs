//! End-to-end coverage of the `anc` command line: exit codes, report
//! shapes, and the corpus override hook.

use std::fs;
use std::process::Command;

use corpus_cli::run_cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli(&args, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf8"),
        String::from_utf8(err).expect("utf8"),
    )
}

fn corpus_path(rel: &str) -> String {
    format!("{}/corpus/{rel}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn check_accepts_a_bundled_proof() {
    let (code, out, _) = run(&["check", &corpus_path("moods/barbara.anc")]);
    assert_eq!(code, 0, "{out}");
    assert!(
        out.contains("proof barbara: accepted (constructive)"),
        "{out}"
    );
}

#[test]
fn check_requires_a_file_argument() {
    let (code, _, err) = run(&["check"]);
    assert_eq!(code, 2, "{err}");
    assert!(!err.is_empty());
}

#[test]
fn unknown_subcommands_are_usage_errors() {
    let (code, _, err) = run(&["conjure"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn help_prints_to_stdout_and_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("anc"));
    assert!(out.contains("corpus"));
}

#[test]
fn missing_files_exit_two() {
    let (code, _, err) = run(&["check", "/no/such/file.anc"]);
    assert_eq!(code, 2);
    assert!(err.contains("/no/such/file.anc"));
}

#[test]
fn parse_errors_exit_one_and_land_on_stderr() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("broken.anc");
    fs::write(&path, "sort u;\nproof p : all x:u. {\n").expect("write");
    let (code, _, err) = run(&["check", path.to_str().expect("utf8 path")]);
    assert_eq!(code, 1, "{err}");
    assert!(err.contains("error["), "{err}");
}

#[test]
fn rejected_proofs_exit_one() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("wrong.anc");
    fs::write(
        &path,
        "pred A;\npred B;\n\nproof swap : A -> B {\n  {\n    assume h: A;\n    l1: B by reit h;\n  }\n  l2: A -> B by imp_i h;\n}\n",
    )
    .expect("write");
    let (code, out, _) = run(&["check", path.to_str().expect("utf8 path")]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("proof swap: rejected"), "{out}");
}

#[test]
fn oracle_exit_three_when_the_budget_caps_the_sweep() {
    let (code, out, _) = run(&["oracle", &corpus_path("physics/mover_moved.anc")]);
    assert_eq!(code, 3, "{out}");
    assert!(
        out.contains("budget exceeded, verified up to size 2"),
        "{out}"
    );
}

#[test]
fn oracle_exit_one_on_a_countermodel() {
    let dir = tempfile::tempdir().expect("tempdir");

    // Axioms count as premises: a goal that restates one holds.
    let leap = dir.path().join("leap.anc");
    let text = "sort u;\npred P(u);\n\naxiom leap : (ex x:u. P(x)) -> all x:u. P(x);\n\nproof sound : (ex x:u. P(x)) -> all x:u. P(x) {\n  l1: (ex x:u. P(x)) -> all x:u. P(x) by axiom leap;\n}\n";
    fs::write(&leap, text).expect("write");
    let (code, out, _) = run(&["oracle", leap.to_str().expect("utf8 path")]);
    assert_eq!(code, 0, "{out}");

    // The same goal with no axiom behind it is refuted.
    let bare = dir.path().join("bare.anc");
    fs::write(
        &bare,
        "sort u;\npred P(u);\n\nproof nope : (ex x:u. P(x)) -> all x:u. P(x) {\n  {\n    assume h: ex x:u. P(x);\n    l1: all x:u. P(x) by reit h;\n  }\n  l2: (ex x:u. P(x)) -> all x:u. P(x) by imp_i h;\n}\n",
    )
    .expect("write");
    let (code, out, _) = run(&["oracle", bare.to_str().expect("utf8 path")]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("countermodel found"), "{out}");
}

#[test]
fn stoic_checks_only_derivations() {
    let (code, out, _) = run(&["stoic", &corpus_path("stoic/second_thema.anc")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("chrysippus: accepted"), "{out}");
    assert!(out.contains("detach: accepted"), "{out}");
    assert!(out.contains("indem (mp)"), "{out}");
}

#[test]
fn constructive_only_fails_the_classical_entries() {
    let (code, out, _) = run(&["--constructive-only", "corpus", "run"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL baroco"), "{out}");
    assert!(out.contains("FAIL e_conversion"), "{out}");
    assert!(
        out.lines()
            .any(|l| l.starts_with("ok") && l.contains("barbara")),
        "{out}"
    );
}

#[test]
fn mutate_reports_a_clean_sweep_in_json() {
    let (code, out, _) = run(&["--json", "mutate", "--seed", "9"]);
    assert_eq!(code, 0, "{out}");
    let report: serde_json::Value = serde_json::from_str(&out).expect("json");
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["ok"], true);
    assert_eq!(report["seed"], 9);
    assert!(report["mutants"].as_u64().expect("count") >= 60);
    assert_eq!(report["mutants"], report["rejected"]);
    assert_eq!(report["survivors"].as_array().expect("array").len(), 0);
}

#[test]
fn json_reports_are_deterministic_apart_from_the_timestamp() {
    let (code1, out1, _) = run(&["--json", "corpus", "list"]);
    let (code2, out2, _) = run(&["--json", "corpus", "list"]);
    assert_eq!((code1, code2), (0, 0));
    let mut v1: serde_json::Value = serde_json::from_str(&out1).expect("json");
    let mut v2: serde_json::Value = serde_json::from_str(&out2).expect("json");
    assert!(v1["generated_at"].as_u64().is_some());
    v1["generated_at"] = 0.into();
    v2["generated_at"] = 0.into();
    assert_eq!(v1, v2);
    assert_eq!(v1["entries"].as_array().expect("array").len(), 16);
}

#[test]
fn json_check_reports_items_with_classifications() {
    let (code, out, _) = run(&["--json", "check", &corpus_path("moods/baroco.anc")]);
    assert_eq!(code, 0, "{out}");
    let report: serde_json::Value = serde_json::from_str(&out).expect("json");
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["command"], "check");
    let item = &report["files"][0]["items"][0];
    assert_eq!(item["name"], "baroco");
    assert_eq!(item["kind"], "proof");
    assert_eq!(item["accepted"], true);
    assert_eq!(item["classification"], "classical");
}

#[test]
fn spawned_binary_wires_the_exit_code_through() {
    let output = Command::new(env!("CARGO_BIN_EXE_anc"))
        .args(["check", &corpus_path("moods/celarent.anc")])
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).expect("utf8");
    assert!(text.contains("proof celarent: accepted"), "{text}");
}

#[test]
fn corpus_dir_override_redirects_one_entry() {
    let dir = tempfile::tempdir().expect("tempdir");
    fs::create_dir_all(dir.path().join("moods")).expect("mkdir");
    let original =
        fs::read_to_string(corpus_path("moods/barbara.anc")).expect("bundled text on disk");
    let tampered = original.replace("by imp_e l1 h3", "by imp_e h3 l1");
    assert_ne!(tampered, original);
    fs::write(dir.path().join("moods/barbara.anc"), tampered).expect("write override");

    // A spawned process keeps the environment change out of this one.
    let output = Command::new(env!("CARGO_BIN_EXE_anc"))
        .args(["corpus", "run"])
        .env("ANC_CORPUS_DIR", dir.path())
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(1));
    let text = String::from_utf8(output.stdout).expect("utf8");
    assert!(text.contains("FAIL barbara"), "{text}");
    assert!(
        text.lines()
            .any(|l| l.starts_with("ok") && l.contains("celarent")),
        "{text}"
    );
    let summary = "16 entries, 15 ok, 1 failing";
    assert!(text.contains(summary), "{text}");
}
