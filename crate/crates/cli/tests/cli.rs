use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperchiral"))
        .args(args)
        .env_remove("CHIRALITY_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(&[args, &["--format", "json"]].concat());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn group_orders() {
    assert_eq!(
        json(&["group", "--family", "PSL", "--n", "2", "--q", "7"])["order"],
        168
    );
    assert_eq!(json(&["group", "--family", "ALT", "--n", "7"])["order"], 2520);
    let psu = json(&["group", "--family", "PSU", "--n", "3", "--q", "3"]);
    assert_eq!(psu["order"], 6048);
    assert_eq!(psu["aut"]["order"], 12096);
}

#[test]
fn delta_of_alt5() {
    let v = json(&["delta", "--family", "ALT", "--n", "5"]);
    assert_eq!(v["delta"], "1/1");
    assert_eq!(v["n_generating_pairs"], 2280);
    assert_eq!(v["exact"], true);
}

#[test]
fn lemma_over_gf3() {
    let v = json(&["lemma", "--n", "3", "--q", "3"]);
    assert_eq!(v["solutions"], 26);
    assert_eq!(v["all_in_singer"], true);
}

#[test]
fn exit_codes() {
    let cap = run(&[
        "group", "--family", "PSL", "--n", "3", "--q", "5", "--cap", "1000",
    ]);
    assert_eq!(cap.status.code(), Some(3));
    let usage = run(&["group", "--family", "NOPE", "--n", "2"]);
    assert_eq!(usage.status.code(), Some(2));
    let missing_q = run(&["group", "--family", "PSL", "--n", "2"]);
    assert_eq!(missing_q.status.code(), Some(2));
    let failing_claim = run(&["lemma", "--n", "3", "--q", "4"]);
    assert_eq!(failing_claim.status.code(), Some(1));
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperchiral"))
        .args(["group", "--family", "ALT", "--n", "7"])
        .env("CHIRALITY_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn census_csv_is_independent_of_thread_count() {
    let args = ["census", "--family", "ALT", "--n", "6", "--format", "csv"];
    let one = run(&[&args[..], &["--threads", "1"]].concat());
    let four = run(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert!(text.starts_with("x,y,type_x,type_y,type_xy,reflexible,mirror_x,mirror_y\n"));
    // 53 hypermaps, all reflexible.
    assert_eq!(text.lines().count(), 54);
    assert!(!text.contains("false"));
}

#[test]
fn strongly_symmetric_verdicts() {
    let v = json(&[
        "strongly-symmetric",
        "--family",
        "PSL",
        "--n",
        "2",
        "--q",
        "8",
        "--exhaustive",
    ]);
    assert_eq!(v["verdict"], "strongly-symmetric");
    let v = json(&["strongly-symmetric", "--family", "ALT", "--n", "7"]);
    assert_eq!(v["verdict"], "not-strongly-symmetric");
    assert!(v["witness"]["x"].is_u64());
}

#[test]
fn verify_suite_and_out_file() {
    let path = std::env::temp_dir().join(format!("hyperchiral-cli-{}.json", std::process::id()));
    let out = run(&[
        "verify",
        "--suite",
        "alt7",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let claims: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    let claims = claims.as_array().unwrap();
    assert!(claims.len() >= 8);
    assert!(claims.iter().all(|c| c["pass"] == true));

    let table = run(&["verify", "--suite", "macbeath", "--q", "7"]);
    assert!(table.status.success());
    assert!(String::from_utf8(table.stdout).unwrap().contains("PASS"));
}

#[test]
fn sampling_is_reproducible() {
    let args = [
        "delta", "--family", "PSL", "--n", "2", "--q", "11", "--sample", "300", "--seed", "5",
    ];
    let a = json(&args);
    assert_eq!(a, json(&args));
    assert_eq!(a["exact"], false);
    assert_eq!(a["sample"]["n_samples"], 300);
}
