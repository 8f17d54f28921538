use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logiqec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("json output")
}

#[test]
fn apc_k4_and_zero() {
    let out = run(&["--format", "json", "apc", &fixture("k4.fn"), "--verify"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["distance"], 2);
    assert_eq!(v["oracle_distance"], 2);

    let out = run(&["--format", "json", "apc", &fixture("zero.fn")]);
    assert_eq!(json(&out)["distance"], 1);
}

#[test]
fn apc_product4_matches_oracle() {
    let out = run(&[
        "--format",
        "json",
        "apc",
        &fixture("product4.fn"),
        "--verify",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["distance"], v["oracle_distance"]);
}

#[test]
fn graph_code_k4() {
    let out = run(&[
        "--format",
        "json",
        "graph-code",
        &fixture("k4.graph"),
        "--classes",
        &fixture("k4.classes"),
        "--d",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["spec"]["K"], 4);
    assert_eq!(v["report"]["verdict"], "pass");
    // key order of the spec object is part of the format
    let text = stdout(&out);
    assert!(text.starts_with(r#"{"spec":{"p":2,"n":4,"K":4,"claimed_d":2,"provenance":"#));
}

#[test]
fn graph_code_rejections() {
    let out = run(&[
        "graph-code",
        &fixture("k4.graph"),
        "--classes",
        &fixture("k4_no_empty.classes"),
        "--d",
        "2",
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("condition (1)"));

    let out = run(&[
        "graph-code",
        &fixture("missing.graph"),
        "--classes",
        "x",
        "--d",
        "2",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn graph_code_c5() {
    let out = run(&[
        "--format",
        "json",
        "graph-code",
        &fixture("c5.graph"),
        "--classes",
        &fixture("c5.classes"),
        "--d",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["report"]["max_weight"], 2);
}

#[test]
fn matrix_check_cases() {
    let out = run(&[
        "matrix-check",
        &fixture("zero5.graph"),
        "--k",
        "1",
        "--d",
        "2",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("rejected"));

    for name in ["matrix_f2.graph", "matrix_f3.graph"] {
        let out = run(&[
            "--format",
            "json",
            "matrix-check",
            &fixture(name),
            "--k",
            "1",
            "--d",
            "2",
            "--build",
            "--verify",
        ]);
        assert_eq!(code(&out), 0, "{name}");
        let v = json(&out);
        assert_eq!(v["check"]["accepted"], true);
        assert_eq!(v["report"]["verdict"], "pass");
    }

    let out = run(&["matrix-check", &fixture("k4.fn"), "--k", "1", "--d", "2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn coset_code_verifies() {
    let out = run(&[
        "--format",
        "json",
        "coset-code",
        &fixture("k4.fn"),
        "--betas",
        "0000,1100,1010,1001",
        "--verify",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["spec"]["claimed_d"], 2);

    let out = run(&["coset-code", &fixture("k4.fn"), "--betas", "0000,0000"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn projector_product4() {
    let out = run(&[
        "--format",
        "json",
        "projector",
        &fixture("product4.fn"),
        "--matrix",
        &fixture("product4.af"),
        "--extract-basis",
    ]);
    let v = json(&out);
    assert_eq!(v["projector"]["trace"], 4);
    assert_eq!(v["projector"]["rank"], 4);
    assert_eq!(v["spec"]["K"], 4);
    // the Zset premise fails and the oracle finds weight-1 errors
    assert_eq!(v["passed"], false);
    assert_eq!(v["report"]["verdict"], "fail");
    assert_eq!(code(&out), 1);

    let derived = run(&["--format", "json", "projector", &fixture("product4.fn")]);
    assert_eq!(json(&derived)["A_f"], v["A_f"]);
}

#[test]
fn projector_rejects_bent() {
    let out = run(&["projector", &fixture("bent.fn")]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("bent"));
}

#[test]
fn solve_basis_product4() {
    let out = run(&["--format", "json", "solve-basis", &fixture("product4.fn")]);
    assert_eq!(code(&out), 0);
    let basis = json(&out)["basis"].as_array().unwrap().clone();
    let ts: Vec<&str> = basis.iter().map(|b| b["t"].as_str().unwrap()).collect();
    assert_eq!(ts, ["0011", "0100", "1000", "1111"]);

    let out = run(&["solve-basis", &fixture("product4.fn"), "--t", "0000"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn bent_and_zset() {
    let out = run(&["--format", "json", "bent", &fixture("bent.fn")]);
    assert_eq!(json(&out)["bent"], true);
    assert_eq!(json(&out)["weight"], 6);
    let out = run(&["--format", "json", "bent", &fixture("product4.fn")]);
    assert_eq!(json(&out)["bent"], false);

    let direct = run(&["--format", "json", "zset", &fixture("product4.fn")]);
    let via = run(&[
        "--format",
        "json",
        "zset",
        &fixture("product4.fn"),
        "--via-autocorrelation",
    ]);
    assert_eq!(stdout(&direct), stdout(&via));
    assert!(!json(&direct)["zset"]
        .as_array()
        .unwrap()
        .contains(&Value::from("1011")));
}

#[test]
fn mds_m3_reports_oracle_verdict() {
    let out = run(&["--format", "json", "mds", "--m", "3", "--verify"]);
    let v = json(&out);
    assert_eq!(v["spec"]["K"], 16);
    assert_eq!(v["spec"]["claimed_d"], 2);
    let pass = v["report"]["verdict"] == "pass";
    assert_eq!(code(&out), if pass { 0 } else { 1 });

    let out = run(&["mds", "--m", "1"]);
    assert_eq!(code(&out), 2);
    let out = run(&["mds", "--m", "6"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn json_roundtrips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let built = run(&[
        "--format",
        "json",
        "graph-code",
        &fixture("k4.graph"),
        "--classes",
        &fixture("k4.classes"),
        "--d",
        "2",
    ]);
    let v = json(&built);
    let whole = dir.path().join("whole.json");
    let bare = dir.path().join("spec.json");
    std::fs::write(&whole, stdout(&built)).unwrap();
    std::fs::write(&bare, v["spec"].to_string()).unwrap();
    for path in [&whole, &bare] {
        let out = run(&["--format", "json", "verify", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        assert_eq!(json(&out), v["report"]);
    }
    let out = run(&[
        "--format",
        "json",
        "verify",
        bare.to_str().unwrap(),
        "--max-weight",
        "2",
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["verdict"], "fail");

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(code(&run(&["verify", bad.to_str().unwrap()])), 2);
}

#[test]
fn single_state_distance_matches_apc() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"p":2,"n":4,"K":1,"claimed_d":2,"provenance":"k4","basis":["x1*x2 + x1*x3 + x1*x4 + x2*x3 + x2*x4 + x3*x4"]}"#;
    let path = dir.path().join("k1.json");
    std::fs::write(&path, spec).unwrap();
    let out = run(&[
        "--format",
        "json",
        "verify",
        path.to_str().unwrap(),
        "--distance",
    ]);
    assert_eq!(code(&out), 0);
    let apc = run(&["--format", "json", "apc", &fixture("k4.fn")]);
    assert_eq!(json(&out)["distance"], json(&apc)["distance"]);
}

#[test]
fn jobs_do_not_change_output() {
    let args = |jobs: &'static str| {
        vec![
            "--format", "json", "--jobs", jobs, "mds", "--m", "3", "--verify",
        ]
    };
    let one = run(&args("1"));
    let four = run(&args("4"));
    assert_eq!(stdout(&one), stdout(&four));
    assert_eq!(code(&run(&["--jobs", "0", "mds", "--m", "2"])), 2);
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.fn");
    std::fs::write(&path, "2 3\nanf: x9\n").unwrap();
    let out = run(&["--format", "json", "apc", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["exit_code"], 2);
}
