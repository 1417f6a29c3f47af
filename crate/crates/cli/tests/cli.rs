use std::process::{Command, Output};

use num_bigint::BigInt;
use serde_json::Value;

use cyclosim::classifier::{rt_lattice, to_coords};
use cyclosim::rep::parse_rep;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclosim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (v, out.status.code().unwrap())
}

fn big(v: &Value) -> BigInt {
    match v {
        Value::Number(n) => BigInt::from(n.as_i64().unwrap()),
        Value::String(s) => s.parse().unwrap(),
        other => panic!("not an integer: {other}"),
    }
}

#[test]
fn six_dimensional_similarity() {
    let (v, code) = json(&["decide", "--r", "4", "--v1", "t,t", "--v2", "t9,t9", "--w", "rminus:1,rplus:1"]);
    assert_eq!(code, 0);
    assert_eq!(v["decision"], "Yes");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["decision", "theta", "parity", "mixed", "depth", "missing", "rt_coefficients"]);
}

#[test]
fn negative_verdict_exits_zero() {
    let (v, code) = json(&["decide", "--r", "4", "--v1", "t,t", "--v2", "t9,t9", "--w", "rminus"]);
    assert_eq!(code, 0);
    assert_eq!(v["decision"], "No");
    assert_eq!(v["missing"][0], "rplus");
}

#[test]
fn presentation_and_order() {
    let (v, _) = json(&["rtop", "--r", "4"]);
    assert_eq!(v["invariant_factors"], serde_json::json!([4, 2, 2]));
    let (v, _) = json(&["order", "--r", "5", "--x", "t - t5"]);
    assert_eq!(v["order"], 8);
}

#[test]
fn verdicts_revalidate_against_the_lattice() {
    for (r, dim) in [(4u32, "2"), (5, "3"), (6, "2")] {
        let rs = r.to_string();
        let (v, code) = json(&["enumerate", "--r", &rs, "--dim", dim, "--w", "rplus, rminus", "--all"]);
        assert_eq!(code, 0);
        let n = 1u64 << r;
        let lattice = rt_lattice(r).unwrap();
        let mut checked = 0;
        for pair in v["results"].as_array().unwrap() {
            let Some(coeffs) = pair["verdict"]["rt_coefficients"].as_array() else {
                assert_eq!(pair["verdict"]["decision"], "NotInRt");
                continue;
            };
            let v1 = parse_rep(n, pair["v1"].as_str().unwrap()).unwrap();
            let v2 = parse_rep(n, pair["v2"].as_str().unwrap()).unwrap();
            let target = to_coords(&v1.sub(&v2).unwrap()).unwrap().coords;
            let mut sum = vec![BigInt::from(0); target.len()];
            for (c, (_, g)) in coeffs.iter().zip(lattice.generators()) {
                for (s, gi) in sum.iter_mut().zip(&g.coords) {
                    *s += big(c) * gi;
                }
            }
            assert_eq!(sum, target, "r={r} {pair}");
            checked += 1;
        }
        assert!(checked > 0, "r={r}: no lattice elements");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["enumerate", "--r", "4", "--dim", "2", "--w", "rminus, rplus", "--all"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["normal", "--r", "5", "--sweep"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn exit_codes() {
    let (v, code) = json(&["decide", "--r", "4", "--v1", "t", "--v2", "t,t"]);
    assert_eq!((code, v["error"].as_str()), (2, Some("domain")));
    let (v, code) = json(&["enumerate", "--r", "6", "--dim", "3", "--max-enum", "10"]);
    assert_eq!((code, v["error"].as_str()), (4, Some("capacity_exceeded")));
    let (v, code) = json(&["order", "--r", "4", "--x", "t +* t5"]);
    assert_eq!((code, v["error"].as_str()), (2, Some("parse")));
    assert_eq!(run(&["decide", "--r"]).status.code(), Some(2));
}

#[test]
fn stable_and_literals() {
    let lit = r#"{"N": 16, "weights": [1, 1]}"#;
    let (v, code) = json(&["stable", "--r", "4", "--v1", lit, "--v2", "t9,t9"]);
    assert_eq!(code, 0);
    assert_eq!(v["stable"], true);
    assert!(v["witness_w"].as_str().unwrap().contains("rplus"));
    let (v, _) = json(&["stable", "--r", "4", "--v1", "t", "--v2", "t5"]);
    assert_eq!(v["stable"], false);
}

#[test]
fn tate_from_inline_module() {
    let m = r#"{"gens": 2, "relations": [[4, 0], [0, 4]], "involution": [[0, 1], [1, 0]]}"#;
    let (v, code) = json(&["tate", "--module", m]);
    assert_eq!(code, 0);
    assert_eq!(v["h0"]["invariant_factors"], serde_json::json!([]));
    assert_eq!(v["h1"]["invariant_factors"], serde_json::json!([]));
}

#[test]
fn identity_and_kernel_reports_hold() {
    let (v, code) = json(&["identities", "--q", "5", "--r", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["v"]["holds"], true);
    assert!(v["gamma"].as_array().unwrap().iter().all(|g| g["holds"] == true));
    assert!(v["sigma_v"].as_array().unwrap().iter().all(|g| g["holds"] == true));
    let (v, _) = json(&["oliver", "--n", "1"]);
    assert_eq!(v["status"], "Pass");
    let (v, _) = json(&["normal", "--r", "4", "--s", "1", "--i", "1", "--k", "2", "--q", "3"]);
    assert_eq!(v[0]["agrees"], true);
}

#[test]
fn table_output() {
    let out = run(&["rtop", "--r", "5", "--table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("invariant_factors"));
    assert!(text.lines().any(|l| l.starts_with("alpha")) || text.contains("alpha1"));
}
