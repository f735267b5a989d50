use std::process::{Command, Output};

use ferrand_core::doubling::{ag_fixtures, conic_odd_ideal, AgKind};
use ferrand_core::idealops::Ideal;
use serde_json::Value;
use sha2::{Digest, Sha256};

fn ferrand(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ferrand")).args(args).output().expect("binary runs")
}

fn ferrand_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ferrand")).args(args).env(key, val).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn construct_twisted_cubic_example() {
    let v = json(&ferrand(&["construct", "--r", "3", "--n", "3", "--a", "1", "--mu", "t,u"]));
    assert_eq!(v["genus"], 3);
    assert_eq!(v["hilbert_polynomial"], "6t - 2");
    assert_eq!(v["mu"]["block1"], serde_json::json!(["t", "u"]));
}

#[test]
fn construct_rejects_non_surjective_mu() {
    assert_eq!(code(&ferrand(&["construct", "--r", "2", "--n", "2", "--a", "1", "--mu", "t"])), 2);
    assert_eq!(code(&ferrand(&["construct", "--r", "3", "--n", "3", "--a", "1", "--mu", "t,t"])), 2);
    assert_eq!(code(&ferrand(&["construct", "--r", "3", "--n", "3", "--a", "1", "--mu", "t^"])), 2);
    assert_eq!(code(&ferrand(&["construct", "--r", "3", "--n", "3", "--a", "2", "--mu", "t,u"])), 2);
    assert_eq!(code(&ferrand(&["construct", "--r", "3", "--n", "3"])), 2);
}

#[test]
fn construct_odd_conic() {
    let v = json(&ferrand(&["construct", "--r", "2", "--n", "3", "--a", "6", "--mu", "u^6,t^4"]));
    let doc: ferrand_core::idealops::IdealDoc = serde_json::from_value(v["ideal"].clone()).unwrap();
    let got = Ideal::from_doc(&doc).unwrap();
    let want = conic_odd_ideal(3).unwrap().recast(got.ring()).unwrap();
    assert!(got.equals(&want));
    assert_eq!(v["genus"], -3);
}

#[test]
fn output_is_deterministic() {
    let args = ["construct", "--r", "3", "--n", "4", "--a", "3", "--mu", "random", "--seed", "5"];
    let a = ferrand(&args);
    let b = ferrand(&args);
    assert!(a.status.success());
    assert_eq!(Sha256::digest(&a.stdout), Sha256::digest(&b.stdout));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    let mut with_out: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    assert!(ferrand(&with_out).status.success());
    assert_eq!(Sha256::digest(std::fs::read(&path).unwrap()), Sha256::digest(&a.stdout));
    let c = ferrand(&["analyze", "--input", p]);
    let d = ferrand(&["analyze", "--input", p]);
    assert_eq!(Sha256::digest(json(&c).to_string()), Sha256::digest(json(&d).to_string()));
}

#[test]
fn analyze_elliptic_fixture() {
    let x = ag_fixtures(AgKind::Elliptic, 3).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("elliptic.json");
    std::fs::write(&path, serde_json::to_string(&x.to_doc().unwrap()).unwrap()).unwrap();
    let v = json(&ferrand(&["analyze", "--input", path.to_str().unwrap()]));
    assert_eq!(v["ag"], true);
    assert_eq!(v["acm"], true);
    assert_eq!((v["triple"]["degree"].as_i64(), v["triple"]["genus"].as_i64(), v["triple"]["n"].as_i64()), (Some(6), Some(1), Some(5)));
    assert_eq!(v["h_vector"], serde_json::json!([1, 4, 1]));
}

#[test]
fn tampered_input_is_an_invariant_error() {
    let out = ferrand(&["construct", "--r", "3", "--n", "3", "--a", "1", "--mu", "t,u"]);
    let mut v = json(&out);
    v["ideal"]["generators"][0] = Value::String("x0^3".into());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(code(&ferrand(&["analyze", "--input", path.to_str().unwrap()])), 4);
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(code(&ferrand(&["analyze", "--input", path.to_str().unwrap()])), 2);
}

#[test]
fn resolve_even_conic() {
    let v = json(&ferrand(&["resolve", "--r", "2", "--n", "3", "--a", "5", "--mu", "u^5,t^3"]));
    let mut twists: Vec<Vec<i64>> = serde_json::from_value(v["twists"].clone()).unwrap();
    for t in twists.iter_mut() {
        t.sort();
    }
    assert_eq!(twists, vec![vec![0], vec![2, 3, 4, 4, 4], vec![4, 5, 5, 5, 5, 5], vec![6, 6]]);
    assert_eq!(v["ranks"], serde_json::json!([1, 5, 6, 2]));
}

#[test]
fn normal_sheaf_odd_conic() {
    let v = json(&ferrand(&["normal-sheaf", "--r", "2", "--n", "3", "--a", "4", "--mu", "u^4,t^2"]));
    assert_eq!(v["h0_normal"], 16);
    assert_eq!(v["family_dimension"], 15);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["family_dimension", "h0_normal", "smooth_point_evidence", "t_used"]);
    let v = json(&ferrand(&["normal-sheaf", "--r", "2", "--n", "4", "--a", "5", "--mu", "u^5,t^3,0"]));
    assert_eq!((v["h0_normal"].as_i64(), v["smooth_point_evidence"].as_bool()), (Some(24), Some(true)));
}

#[test]
fn family_fibers() {
    let v = json(&ferrand(&["family", "--which", "g-1", "--samples", "0,1,2,-1"]));
    assert_eq!(v["flatness"]["constant"], true);
    assert_eq!(v["flatness"]["kind"], "evidence");
    assert_eq!(v["fibers"].as_array().unwrap().len(), 4);
    assert!(v["fibers"].as_array().unwrap().iter().all(|f| f["hilbert_polynomial"] == "4t + 2"));
    assert_eq!(code(&ferrand(&["family", "--which", "g7"])), 2);
    assert_eq!(code(&ferrand(&["family", "--which", "g0", "--samples", "1,2,3"])), 2);
}

#[test]
fn caps_from_environment_and_flags() {
    let args = ["construct", "--r", "2", "--n", "3", "--a", "8", "--mu", "u^8,t^6"];
    assert!(ferrand(&args).status.success());
    assert_eq!(code(&ferrand_env(&args, "FERRAND_DEGREE_CAP", "3")), 3);
    let mut flagged = args.to_vec();
    flagged.extend(["--degree-cap", "3"]);
    assert_eq!(code(&ferrand(&flagged)), 3);
    let ns = ["normal-sheaf", "--r", "2", "--n", "3", "--a", "8", "--mu", "u^8,t^6"];
    assert_eq!(code(&ferrand_env(&ns, "FERRAND_T_CAP", "1")), 3);
}

#[test]
fn verify_runs_a_section() {
    let out = ferrand(&["verify", "--section", "gorenstein", "--max-r", "3"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("[PASS] criterion 7"));
    let out = ferrand(&["verify", "--section", "infrastructure", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v[0]["id"], 13);
    assert_eq!(v[0]["pass"], true);
    assert_eq!(code(&ferrand(&["verify", "--section", "nope"])), 2);
}
