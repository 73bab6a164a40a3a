//! Black-box tests driving the compiled binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("stdout is JSON")
}

#[test]
fn kappa_single_part_two() {
    let out = run(&["kappa", "--partition", "2:1", "--oracle"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("= -2"));

    let out = run(&["--json", "kappa", "--partition", "1:4,3:1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["oracleChecked"], false);
    assert_eq!(v["partition"], "1:4,3:1");
}

#[test]
fn stch_dichotomy_and_expression() {
    let out = run(&["--json", "stch", "--d", "4", "--p", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["decomposable"], false);
    assert_eq!(v["form"]["l"], 1);
    assert_eq!(v["form"]["t"], 2);

    let out = run(&["--json", "stch", "--d", "5", "--p", "2", "--express"]);
    let v = json(&out);
    assert_eq!(v["decomposable"], true);
    assert_eq!(v["identity"]["verified"], true);
}

#[test]
fn stch_rejects_composite_p() {
    let out = run(&["stch", "--d", "4", "--p", "6"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mi_search_reports_power_sums() {
    let out = run(&["--json", "mi-search", "--r", "2", "--d", "3", "--p", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["sumAtR"], 1);
    assert_eq!(v["sumAtD"], 0);
}

#[test]
fn schedule_range_error_exits_one() {
    let out = run(&["--json", "schedule", "--r", "2", "--p", "3", "--dim", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["code"], "RangeExceeded");
}

#[test]
fn schedule_build_then_apply_round_trip() {
    let out = run(&["--json", "schedule", "--r", "2", "--p", "3", "--dim", "5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["mode"], "full");
    assert_eq!(v["moves"].as_array().unwrap().len(), 3);

    let dir = std::env::temp_dir().join("charcalc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("schedule.json");
    std::fs::write(&path, stdout(&out)).unwrap();

    let out = run(&[
        "--json",
        "schedule",
        "--r",
        "2",
        "--p",
        "3",
        "--dim",
        "5",
        "--apply",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["report"]["c_r_preserved"], true);
    for entry in v["report"]["entries"].as_array().unwrap() {
        assert_eq!(entry["in_ideal"], true);
    }
}

#[test]
fn steenrod_component_selection() {
    let out = run(&["--json", "steenrod", "--partition", "2:1", "--p", "3", "--k", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    let terms = v.as_array().unwrap();
    assert!(!terms.is_empty());
    for term in terms {
        // every listed partition lives in degree 2 + 1*(3-1) = 4
        let part = term["partition"].as_str().unwrap();
        let total: u64 = part
            .split(',')
            .map(|pair| {
                let (i, r) = pair.split_once(':').unwrap();
                i.parse::<u64>().unwrap() * r.parse::<u64>().unwrap()
            })
            .sum();
        assert_eq!(total, 4);
    }
}

#[test]
fn blowup_sweep_passes() {
    let out = run(&["--json", "blowup", "--n", "3", "--verify-all"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["chernClassesMatch"], true);
    assert_eq!(v["sweep"]["families"], 19);
    assert_eq!(v["sweep"]["pairFailures"], 0);
    assert_eq!(v["sweep"]["principalCollectionPass"], true);
}

#[test]
fn toy_pairing_and_triviality() {
    let out = run(&["--json", "toy", "--ring", "P2xP1", "--pair", "h1^2", "h2"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["value"], "1");

    let out = run(&["--json", "toy", "--ring", "P2xP1", "--trivial", "h1^2*h2 - h2*h1^2"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["numericallyTrivial"], true);

    let out = run(&["toy", "--ring", "P2xP1", "--trivial", "h1", "--pair", "h1", "h2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn toy_padic_tower() {
    let out = run(&[
        "--json", "toy", "--ring", "P1", "--p", "2", "--padic", "2*h1", "--depth", "3",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["verdicts"], serde_json::json!([true, false, false]));
}

#[test]
fn verify_named_suite() {
    let out = run(&["--json", "verify", "--suite", "modp"]);
    assert!(out.status.success());
    for check in json(&out).as_array().unwrap() {
        assert_eq!(check["pass"], true);
    }

    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["kappa"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}
