use std::process::Command;

use jetcalc::cli::{run, CommandOutcome, EXIT_LIMIT, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};

fn jc(args: &[&str]) -> CommandOutcome {
    run(std::iter::once("jetcalc").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut v = vec!["--json"];
    v.extend_from_slice(args);
    serde_json::from_str(&jc(&v).stdout).expect("stdout is JSON")
}

#[test]
fn x6_verifies_on_elliptic() {
    let out = jc(&["verify", "--eq", "elliptic", "--name", "X6"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("residual: 0\n"), "{}", out.stdout);
    let doc = json(&["verify", "--eq", "elliptic", "--name", "X6"]);
    assert_eq!(doc["results"][0]["residual_text"], "0");
}

#[test]
fn u_x_control_prints_residual() {
    let out = jc(&["verify", "--eq", "elliptic", "--expr", "u[1,0]"]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert!(
        out.stdout
            .contains("residual: 1/(x + y)*u[1,0] + 1/(x + y)*u[0,1]"),
        "{}",
        out.stdout
    );
}

#[test]
fn all_entries_verify_serially_and_in_parallel() {
    for eq in ["elliptic", "hyperbolic"] {
        let a = jc(&["--json", "verify", "--eq", eq, "--all"]);
        let b = jc(&["--json", "--parallel", "verify", "--eq", eq, "--all"]);
        assert_eq!(a.code, EXIT_OK);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn first_hierarchy_table_vanishes_at_three() {
    let out = jc(&["hierarchy", "--m", "1", "--max-j", "3"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out
        .stdout
        .contains("j = 3\n  operator: 0\n  restricted image: 0\n  vanishes: yes"));
    let doc = json(&["hierarchy", "--m", "1", "--max-j", "3"]);
    let rows = doc["generators"].as_array().unwrap();
    let vanish: Vec<bool> = rows
        .iter()
        .map(|r| r["vanishes"].as_bool().unwrap())
        .collect();
    assert_eq!(vanish, [false, false, false, true]);
}

#[test]
fn hierarchy_relations_report_signs() {
    let doc = json(&["hierarchy", "--m", "1", "--relations"]);
    assert_eq!(doc["relations_pass"], true);
    let rel = doc["relations"].as_array().unwrap();
    assert_eq!(rel.len(), 8);
    assert_eq!(rel[0]["family"], "box");
    assert_eq!(rel[0]["measured"], "2");
    let y = json(&["hierarchy", "--m", "1", "--relations", "--eq", "hyperbolic"]);
    assert_eq!(y["relations_pass"], true);
    assert_eq!(y["relations"][0]["measured"], "-2");
}

#[test]
fn json_output_is_deterministic() {
    let cases: &[&[&str]] = &[
        &["--json", "blocks", "--k", "3"],
        &["--json", "catalog"],
        &["--json", "transform", "--theta", "--name", "phi2"],
        &[
            "--json", "bracket", "--eq", "elliptic", "--a", "rho1", "--b", "X3",
        ],
    ];
    for args in cases {
        let a = jc(args);
        assert_eq!(a.code, EXIT_OK, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, jc(args).stdout);
    }
}

#[test]
fn blocks_report_matrices() {
    let doc = json(&["blocks", "--k", "1"]);
    assert_eq!(
        doc["P"],
        serde_json::json!([["1/2", "-1/2*i"], ["1/2", "1/2*i"]])
    );
    assert_eq!(doc["Q"], serde_json::json!([["1", "1"], ["i", "-i"]]));
    assert_eq!(doc["all_pass"], true);
}

#[test]
fn transform_maps_generators() {
    let doc = json(&["transform", "--pullback", "--name", "phi1", "--restrict"]);
    let rho = json(&["catalog", "--name", "rho1"]);
    let out = doc["output_text"].as_str().unwrap();
    let expected: String = rho["text"].as_str().unwrap().to_string();
    let e = jetcalc::expr_io::parse_expr(&expected, jetcalc::jet::Chart::Elliptic).unwrap();
    let o = jetcalc::expr_io::parse_expr(out, jetcalc::jet::Chart::Elliptic).unwrap();
    assert_eq!(o, e.scale(&jetcalc::exact_arith::GaussRat::i()));
    let back = jc(&["transform", "--theta-prime", "--expr", &expected]);
    assert_eq!(back.code, EXIT_OK);
    let id = json(&["transform", "--theta", "--expr", "u"]);
    assert_eq!(id["output_text"], "u");
}

#[test]
fn parse_errors_echo_the_span() {
    let out = jc(&["verify", "--eq", "elliptic", "--expr", "u[1,0] + q"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("1:10"), "{}", out.stderr);
    assert!(
        out.stderr.contains("\n  u[1,0] + q\n           ^"),
        "{}",
        out.stderr
    );
    let doc = json(&["verify", "--eq", "elliptic", "--expr", "u[1,0]*u[0,1]"]);
    assert_eq!(doc["kind"], "nonlinearity");
    assert_eq!(doc["span"]["start"], 7);
    let mismatch = json(&["verify", "--eq", "elliptic", "--expr", "xi*u[1,0]"]);
    assert_eq!(mismatch["kind"], "chart-mismatch");
}

#[test]
fn usage_errors() {
    assert_eq!(jc(&["verify", "--eq", "elliptic"]).code, EXIT_USAGE);
    assert_eq!(
        jc(&["verify", "--eq", "elliptic", "--name", "phi0"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        jc(&["verify", "--eq", "elliptic", "--name", "nope"]).code,
        EXIT_USAGE
    );
    assert_eq!(jc(&["hierarchy", "--m", "0"]).code, EXIT_USAGE);
    assert_eq!(jc(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(jc(&["--help"]).code, EXIT_OK);
}

#[test]
fn limits_exit_three() {
    assert_eq!(jc(&["blocks", "--k", "17"]).code, EXIT_LIMIT);
    assert_eq!(
        jc(&[
            "--max-order",
            "3",
            "verify",
            "--eq",
            "elliptic",
            "--name",
            "X1"
        ])
        .code,
        EXIT_LIMIT
    );
    assert_eq!(
        jc(&["--max-order", "2", "hierarchy", "--m", "3"]).code,
        EXIT_LIMIT
    );
}

#[test]
fn file_input_round_trips() {
    let dir = std::env::temp_dir().join(format!("jetcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("x2.json");
    let doc = json(&["catalog", "--name", "X2"]);
    std::fs::write(&path, serde_json::to_string(&doc["value"]).unwrap()).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(
        jc(&["verify", "--eq", "elliptic", "--file", p]).code,
        EXIT_OK
    );
    let wrong = jc(&["verify", "--eq", "hyperbolic", "--file", p]);
    assert_eq!(wrong.code, EXIT_USAGE);
    assert!(
        wrong.stderr.contains("chart-mismatch") || wrong.stderr.contains("chart mismatch"),
        "{}",
        wrong.stderr
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_jetcalc");
    let ok = Command::new(bin)
        .args(["verify", "--eq", "elliptic", "--name", "X6"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("verdict: symmetry"));
    let neg = Command::new(bin)
        .args(["verify", "--eq", "elliptic", "--expr", "u[1,0]"])
        .output()
        .unwrap();
    assert_eq!(neg.status.code(), Some(EXIT_NEGATIVE));
}
