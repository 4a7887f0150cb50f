use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn sflat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sflat")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = sflat(&all);
    let doc = serde_json::from_slice(&out.stdout).expect("one JSON document");
    (out.status.code().unwrap(), doc)
}

#[test]
fn mu_values() {
    let (code, doc) = json(&["mu", "4"]);
    assert_eq!((code, doc["report"]["mu"].as_u64()), (0, Some(6)));
    assert_eq!(json(&["mu", "0"]).1["report"]["mu"], 0);
    assert_eq!(json(&["mu", "7"]).1["report"]["mu"], 16);
    let text = String::from_utf8(sflat(&["mu", "4"]).stdout).unwrap();
    assert_eq!(text, "mu(4) = 6\nPASS\n");
}

#[test]
fn distinguish_modes() {
    let (code, doc) = json(&["distinguish", &data("diamond.json"), "--mode", "dim2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["subsets"], 2);
    assert_eq!(doc["report"]["verification"]["agree"], true);
    let (code, doc) = json(&["distinguish", &data("chain1.json"), "--mode", "dim1"]);
    assert_eq!((code, doc["report"]["subsets"].as_u64()), (0, Some(1)));
    let (code, doc) = json(&["distinguish", &data("chain3.json"), "--mode", "dim2"]);
    assert_eq!((code, doc["error"]["kind"].as_str()), (2, Some("DimensionMismatch")));
    let (code, doc) = json(&["distinguish", &data("chain3.json")]);
    assert_eq!((code, doc["report"]["subsets"].as_u64()), (0, Some(4)));
    let (code, _) = json(&["distinguish", &data("chain3.json"), "--mode", "wave:3"]);
    assert_eq!(code, 1);
    let (code, _) = json(&["distinguish", &data("chain3.json"), "--mode", "wave"]);
    assert_eq!(code, 2);
}

#[test]
fn artinian_examples() {
    let (code, doc) = json(&["artinian", "--s", "3", "--t", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["quotient_order"], 3);
    let (code, doc) = json(&["artinian", "--s", "0", "--t", "0,1"]);
    assert_eq!((code, doc["error"]["kind"].as_str()), (2, Some("NotInS1")));
    let (code, doc) = json(&["artinian", "--s", "2", "--t", "0,2"]);
    assert_eq!((code, doc["error"]["kind"].as_str()), (2, Some("NotInS2")));
    let (code, _) = json(&["artinian", "--s", "[[1]]", "--t", "[[0,1],[1]]", "--base", "F5[t]"]);
    assert_eq!(code, 0);
    assert_eq!(json(&["artinian", "--s", "1", "--t", "1", "--base", "F4[t]"]).0, 2);
}

#[test]
fn complete_examples() {
    let (code, doc) = json(&["complete", "--module", "12", "--generators", "2", "--depth", "8"]);
    assert_eq!(code, 0);
    let r = &doc["report"];
    assert_eq!(r["delta"]["lambda"], serde_json::json!([4]));
    assert_eq!(r["delta"]["lim1"]["verdict"], "zero");
    assert_eq!(r["quotient_tower"]["stages"].as_array().unwrap().len(), 8);
    let (code, doc) = json(&["complete", "--module", "5", "--generators", "2", "--depth", "8"]);
    assert_eq!((code, doc["report"]["delta"]["delta"].clone()), (0, serde_json::json!([])));
    let (code, doc) = json(&["complete", "--module", "0", "--generators", "1", "--depth", "8"]);
    assert_eq!((code, doc["report"]["delta"]["delta"].clone()), (0, serde_json::json!([])));
    let (code, doc) = json(&["complete", "--module", "0", "--generators", "2"]);
    assert_eq!((code, doc["error"]["kind"].as_str()), (1, Some("NotStabilized")));
    assert_eq!(json(&["complete", "--module", "[[1],[1,2]]", "--generators", "2"]).0, 2);
}

#[test]
fn telescope_and_wc_check() {
    let (code, doc) = json(&["telescope", "--module", "10", "--generators", "2,3", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["report"]["complex"]["differential"], serde_json::json!([[-2, 0], [1, -3]]));
    assert_eq!(doc["report"]["homology"]["h0"], serde_json::json!([2]));
    let (code, doc) = json(&["wc-check", "--module", "0,6", "--m", "10"]);
    assert_eq!((code, doc["report"]["weakly_cotorsion"].as_bool()), (0, Some(false)));
    assert_eq!(doc["report"]["evidence"]["kind"], "lambda_growth");
    let (code, doc) = json(&["wc-check", "--module", "8", "--m", "2"]);
    assert_eq!((code, doc["report"]["weakly_cotorsion"].as_bool()), (0, Some(true)));
}

#[test]
fn verify_cert_exit_codes() {
    let (code, doc) = json(&["verify-cert", &data("seed_only.json")]);
    assert_eq!((code, doc["report"]["level"].as_u64()), (0, Some(1)));
    assert_eq!(doc["report"]["structural_only"], true);
    let (code, doc) = json(&["verify-cert", &data("kernel.json")]);
    assert_eq!((code, doc["report"]["level"].as_u64()), (0, Some(2)));
    let cases = [
        ("level_violation.json", 1, "LevelViolation"),
        ("payload_mismatch.json", 1, "PayloadMismatch"),
        ("malformed.json", 2, "MalformedTree"),
        ("missing.json", 2, "Input"),
    ];
    for (file, want, kind) in cases {
        let (code, doc) = json(&["verify-cert", &data(file)]);
        assert_eq!((code, doc["error"]["kind"].as_str()), (want, Some(kind)), "{file}");
    }
    let (code, doc) = json(&["verify-cert", &data("kernel.json"), "--tests", &data("tests_projective.json")]);
    assert_eq!((code, doc["report"]["orthogonality"]["pass"].as_bool()), (0, Some(true)));
    let (code, doc) = json(&["verify-cert", &data("kernel.json"), "--tests", &data("tests_precondition.json")]);
    assert_eq!((code, doc["error"]["kind"].as_str()), (1, Some("PreconditionFailed")));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(sflat(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(sflat(&["mu", "x"]).status.code(), Some(2));
}
