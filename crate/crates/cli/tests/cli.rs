use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_so3wb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn exterior_square_of_tangent() {
    let v = json(&["rep", "power", "--ext", "2", "S2+S4"]);
    assert_eq!(v["result"].to_string(), r#"{"S6":2,"S4":1,"S2":3}"#);
    assert_eq!(v["anchors"][0], "Λ²(S²⊕S⁴) = 2S⁶⊕S⁴⊕3S²");
    assert_eq!(v["passed"], true);
}

#[test]
fn zeroth_power_is_trivial() {
    let v = json(&["rep", "power", "--ext", "0", "S2"]);
    assert_eq!(v["result"].to_string(), r#"{"S0":1}"#);
}

#[test]
fn rep_tensor_and_decompose() {
    assert_eq!(
        json(&["rep", "tensor", "S2", "S4"])["result"].to_string(),
        r#"{"S6":1,"S4":1,"S2":1}"#
    );
    assert_eq!(
        json(&["rep", "decompose", "2,0,-2,0"])["result"].to_string(),
        r#"{"S2":1,"S0":1}"#
    );
    assert_eq!(
        json(&["rep", "power", "--sym", "2", "S1"])["result"].to_string(),
        r#"{"S2":1}"#
    );
}

#[test]
fn intersection_is_g() {
    let v = json(&["alg", "intersect", "su3", "sp2sp1"]);
    assert_eq!(v["result"]["dim"], 3);
    assert_eq!(v["result"]["equals_g"], true);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["rep", "power", "S2"]).status.code(), Some(2));
    assert_eq!(run(&["rep", "tensor", "S2", "X"]).status.code(), Some(2));
    assert_eq!(run(&["alg", "build", "e8"]).status.code(), Some(2));
}

#[test]
fn corrupted_basis_fails_verification() {
    let out = run(&["verify-paper", "--corrupt-basis"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("𝒢 = PSU(3) ∩ Sp(2)Sp(1)"), "{err}");
    let out = run(&["alg", "intersect", "so3so5", "su3", "--corrupt-basis"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_paper_passes_with_two_errata() {
    let v = json(&["verify-paper"]);
    assert_eq!(v["passed"], true);
    let checks = v["result"]["checks"].as_array().unwrap();
    let errata: Vec<&Value> = checks.iter().filter(|c| c["status"] == "erratum").collect();
    assert_eq!(errata.len(), 2);
    assert!(checks.iter().all(|c| c["anchor"].is_string() && c["status"] != "fail"));
    let criteria: std::collections::BTreeSet<u64> = checks.iter().map(|c| c["criterion"].as_u64().unwrap()).collect();
    assert_eq!(criteria.len(), 11);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["torsion", "cases", "--samples", "500"][..],
        &["forms", "pencil"],
        &["torsion", "table", "--json"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), Some(0));
    }
    let s1 = json(&["torsion", "cases", "--samples", "300", "--seed", "7"]);
    let s2 = json(&["torsion", "cases", "--samples", "300", "--seed", "8"]);
    assert_eq!(s1["result"]["sampling"]["seed"], 7);
    assert_ne!(
        s1["result"]["sampling"]["per_family"],
        s2["result"]["sampling"]["per_family"]
    );
}

#[test]
fn forms_json_round_trips() {
    let v = json(&["forms", "invariants"]);
    assert_eq!(v["result"]["dims"].to_string(), "[1,0,0,2,2,2,0,0,1]");
    let alpha = &v["result"]["forms"]["alpha"];
    assert_eq!(alpha["degree"], 3);
    assert_eq!(alpha["coeffs"].to_string(), r#"{"123":"1"}"#);
    let f: so3wb_core::exforms::KForm = serde_json::from_value(alpha.clone()).unwrap();
    assert_eq!(f.to_string(), "e1^e2^e3");
    let star = json(&["forms", "star", "e1^e2^e3"]);
    assert_eq!(star["result"]["star"]["coeffs"].to_string(), r#"{"45678":"1"}"#);
    let stab = json(&["forms", "stabilizer", "gamma"]);
    assert_eq!(stab["result"]["dim"], 3);
}

#[test]
fn pencil_and_resolution() {
    let v = json(&["forms", "pencil"]);
    let jumps: Vec<String> = v["result"]["jumps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|j| j["slope"].to_string())
        .collect();
    assert_eq!(jumps, [r#""-1""#, r#""1""#]);
    let coarse = json(&["forms", "pencil", "--resolution", "1"]);
    assert_eq!(coarse["result"]["jumps"].as_array().unwrap().len(), 2);
}

#[test]
fn charclass_report_schema() {
    let v = json(&["charclass", "report"]);
    let r = &v["result"];
    assert_eq!(r["ch"], "8 + 6x^2 + (3/2)x^4");
    assert_eq!(r["p1"], "6x^2");
    assert_eq!(r["p2"], "9x^4");
    assert_eq!(r["relations"]["four_p2_eq_p1sq"], true);
    assert_eq!(r["relations"]["euler_zero"], true);
    assert_eq!(r["relations"]["divisibility"], "8640");
    assert_eq!(json(&["charclass", "acs"])["result"].as_array().unwrap().len(), 3);
}

#[test]
fn torsion_classify_and_table() {
    let v = json(&["torsion", "classify", "--a", "1,0;0,0", "--b", "0,2;0,3"]);
    assert_eq!(v["result"]["family"], "I");
    assert_eq!(v["result"]["m"], "2");
    let bad = json(&["torsion", "classify", "--a", "1,0;0,1", "--b", "0,0;0,0"]);
    assert!(bad["result"]["family"].is_null());
    let t = json(&["torsion", "table"]);
    let rows = t["result"]["table"]["rows"].as_array().unwrap();
    let psu3 = rows.iter().find(|r| r["group"] == "psu3").unwrap();
    assert_eq!(psu3["dim"], 160);
    assert!(psu3["note"].as_str().unwrap().contains("158"));
}

#[test]
fn conventions_are_printed() {
    let out = run(&["conventions"]);
    let s = String::from_utf8(out.stdout).unwrap();
    for key in ["basis", "orientation", "Casimir", "action on forms"] {
        assert!(s.contains(key), "{key}");
    }
}
