//! End-to-end tests of the command-line interface.

use quartics::cli::{run, Outcome, Report};
use serde_json::Value;

fn quartics(args: &[&str]) -> Outcome {
    run(std::iter::once("quartics").chain(args.iter().copied()))
}

fn report(args: &[&str]) -> Report {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = quartics(&full);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).expect("report json")
}

#[test]
fn exit_codes() {
    assert_eq!(quartics(&["family", "--tag", "III", "--a", "t", "--b", "1", "--c", "1"]).code, 0);
    assert_eq!(quartics(&["family", "--tag", "III", "--a", "t", "--b", "0", "--c", "1"]).code, 1);
    assert_eq!(quartics(&["resolve", "--pencil", "sextic"]).code, 2);
    assert_eq!(quartics(&["frobnicate"]).code, 2);
    assert_eq!(quartics(&["scan"]).code, 2);
    let bad = quartics(&["--json", "resolve", "--pencil", "sextic"]);
    assert!(bad.stdout.is_empty());
    let err: Value = serde_json::from_str(&bad.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "usage");
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "--seed", "7", "--field-m", "4", "scan", "--fibration", "pi3", "--sample", "20"];
    assert_eq!(quartics(&args), quartics(&args));
    let other = ["--json", "--seed", "8", "--field-m", "4", "scan", "--fibration", "pi3", "--sample", "20"];
    assert_ne!(quartics(&args).stdout, quartics(&other).stdout);
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["family", "--tag", "V", "--a", "t", "--b", "t", "--c", "1", "--d", "1"],
        vec!["resolve", "--pencil", "cubic"],
        vec!["fibre", "--fibration", "pi4", "--params", "0,1,1"],
    ] {
        let r = report(&args);
        let back: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(r.pass());
    }
}

#[test]
fn resolve_quartic_pencil() {
    let r = report(&["resolve", "--pencil", "quartic"]);
    assert_eq!(r.results["counts"], serde_json::json!([4, 12]));
    let named = r.results["named"].as_array().unwrap();
    let w = named.iter().find(|c| c["id"] == "W").unwrap();
    assert_eq!(w["self_int"], -6);
    let labels: Vec<String> = r.results["dynkin"].as_object().unwrap().values().map(|v| v["label"].as_str().unwrap().to_string()).collect();
    assert!(labels.contains(&"A3".to_string()) && labels.contains(&"A11".to_string()), "{labels:?}");
}

#[test]
fn resolve_cubic_pencil_labels() {
    let r = report(&["resolve", "--pencil", "cubic"]);
    let kodaira: Vec<&str> = r.results["dynkin"].as_object().unwrap().values().filter_map(|v| v["kodaira"].as_str()).collect();
    assert!(kodaira.contains(&"III") && kodaira.contains(&"III*"), "{kodaira:?}");
}

#[test]
fn scans() {
    let r = report(&["scan", "--fibration", "pi4"]);
    assert_eq!(r.results["total"], 8);
    assert_eq!(r.results["counts"]["IntegralQuartic(multiplicity 2)"], 4);
    assert_eq!(r.results["counts"]["IntegralQuartic(multiplicity 3)"], 4);

    let r = report(&["--field-m", "2", "scan", "--fibration", "pi5", "--fix", "d=0"]);
    assert_eq!(r.results["total"], 64);
    assert_eq!(r.results["counts"]["DoubleConic"], 64);
}

#[test]
fn empty_grid() {
    let r = report(&["--field-m", "2", "scan", "--fibration", "pi5", "--fix", "d=g", "--fix", "d=0"]);
    assert_eq!(r.results["total"], 0);
    assert!(r.results["entries"].as_array().unwrap().is_empty());
}

#[test]
fn out_file() {
    let path = std::env::temp_dir().join(format!("quartics-cli-{}.json", std::process::id()));
    let out = quartics(&["--json", "--out", path.to_str().unwrap(), "tower", "--kind", "A", "--consts", "1,1,t,1,1"]);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let r: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(r.command, "tower");
}
