use std::process::Command;

use monolith_core::report::{overall_status, parse_json, CheckReport, RunReport, Status};
use monolith_forge::{run, status_code, EXIT_CONFIG, EXIT_FAIL, EXIT_PASS, EXIT_UNSTABLE};
use proptest::prelude::*;

fn forge(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("monolith-forge").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn without_timestamp(json: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(json).unwrap();
    v.as_object_mut().unwrap().remove("timestamp");
    v
}

#[test]
fn list_names_every_family() {
    let (code, out, _) = forge(&["list"]);
    assert_eq!(code, EXIT_PASS);
    for fam in ["quantum-plane", "weyl", "ore", "down-up"] {
        assert!(out.lines().any(|l| l.starts_with(fam)), "{fam} missing from {out}");
    }
}

#[test]
fn verify_weyl_symbolic_passes() {
    let (code, out, err) = forge(&["verify", "weyl", "--q", "t", "--degree", "8", "--seed", "42"]);
    assert_eq!(code, EXIT_PASS, "{out}{err}");
    assert!(out.starts_with("PASS run"));
    assert!(out.contains("PASS weyl_closed_form"));
}

#[test]
fn kappa_equal_to_epsilon_is_a_config_error() {
    let (code, _, err) = forge(&["construct", "down-up", "--eta", "2", "--kappa", "1"]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("mu = 0"));
}

#[test]
fn bad_flags_are_config_errors() {
    assert_eq!(forge(&["verify", "weyl", "--bogus"]).0, EXIT_CONFIG);
    assert_eq!(forge(&["verify", "ore", "--q", "2"]).0, EXIT_CONFIG);
    assert_eq!(forge(&["verify", "ore", "--r", "1/2"]).0, EXIT_CONFIG);
    assert_eq!(forge(&["verify", "quantum-plane", "--q", "1"]).0, EXIT_CONFIG);
    assert_eq!(forge(&["verify", "quantum-plane", "--q", "x/"]).0, EXIT_CONFIG);
}

#[test]
fn small_slack_cap_is_unstable() {
    let (code, _, err) = forge(&["verify", "down-up", "--slack-cap", "0"]);
    assert_eq!(code, EXIT_UNSTABLE);
    assert!(err.contains("did not stabilize"));
}

#[test]
fn suite_writes_a_round_tripping_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let p = path.to_str().unwrap();
    let (code, out, err) = forge(&["suite", "--degree", "8", "--seed", "7", "--json", p]);
    assert_eq!(code, EXIT_PASS, "{out}{err}");
    let text = std::fs::read_to_string(&path).unwrap();
    let report: RunReport = parse_json(&text).unwrap();
    assert_eq!(report.overall, Status::Pass);
    assert_eq!(report.configuration["seed"], "7");
    assert_eq!(report.configuration["verb"], "suite");
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(parse_json(&again).unwrap(), report);
}

#[test]
fn same_seed_same_report() {
    let args = ["construct", "quantum-plane", "--q", "2", "--seed", "11", "--format", "json"];
    let (c1, a, _) = forge(&args);
    let (c2, b, _) = forge(&args);
    assert_eq!((c1, c2), (EXIT_PASS, EXIT_PASS));
    assert_eq!(without_timestamp(&a), without_timestamp(&b));
}

#[test]
fn unwritable_json_sink() {
    let (code, _, err) = forge(&["verify", "ore", "--json", "/nonexistent/dir/out.json"]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("unwritable"));
}

#[test]
fn binary_exit_status() {
    let status = Command::new(env!("CARGO_BIN_EXE_monolith-forge"))
        .args(["construct", "down-up", "--kappa", "1"])
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(EXIT_CONFIG));
}

fn check(status: Status, informational: bool) -> CheckReport {
    let mut c = CheckReport::new("injected");
    match status {
        Status::Pass => {}
        Status::Fail => c.fail("Injected", "x"),
        Status::Unstable => c.mark_unstable("x"),
    }
    if informational {
        c = c.informational();
    }
    c
}

fn any_status() -> impl Strategy<Value = Status> {
    prop_oneof![Just(Status::Pass), Just(Status::Fail), Just(Status::Unstable)]
}

proptest! {
    #[test]
    fn exit_code_follows_injected_failures(checks in prop::collection::vec((any_status(), any::<bool>()), 0..8)) {
        let mut report = RunReport::new("0", "now", Default::default());
        for (s, info) in &checks {
            report.push(check(*s, *info));
        }
        let counted: Vec<Status> = checks.iter().filter(|(_, i)| !i).map(|(s, _)| *s).collect();
        let want = if counted.contains(&Status::Fail) {
            EXIT_FAIL
        } else if counted.contains(&Status::Unstable) {
            EXIT_UNSTABLE
        } else {
            EXIT_PASS
        };
        prop_assert_eq!(status_code(report.overall), want);
        prop_assert_eq!(report.overall, overall_status(&report.checks));
    }
}
