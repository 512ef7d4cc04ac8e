use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmodpoly")).args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout_of(args)).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn eval_counts_the_filtration() {
    assert_eq!(stdout_of(&["eval", &path("two_block.json"), "--at", "3,3"]).trim(), "82");
    assert_eq!(stdout_of(&["eval", &path("two_block.json"), "--at", "0,0"]).trim(), "1");
    assert_eq!(stdout_of(&["eval", &path("two_block.json"), "--at", "-1,2"]).trim(), "0");
}

#[test]
fn dimpoly_reports_canonical_coefficients() {
    let doc = json(&["dimpoly", &path("two_block.json")]);
    assert_eq!(doc["holonomic"], false);
    assert_eq!(doc["total_degree"], 3);
    // C(t1+2,2)C(t2+2,2) - C(t1+1,2)C(t2,2) expanded in the basis C(t1+i,i)C(t2+j,j)
    let mut canonical: Vec<(Vec<u64>, String)> = doc["phi"]["canonical"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let idx = e["index"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
            (idx, e["coeff"].as_str().unwrap().to_string())
        })
        .collect();
    canonical.sort();
    let expected: Vec<(Vec<u64>, String)> = vec![
        (vec![1, 0], "1".into()),
        (vec![1, 1], "-2".into()),
        (vec![1, 2], "1".into()),
        (vec![2, 0], "-1".into()),
        (vec![2, 1], "2".into()),
    ];
    assert_eq!(canonical, expected);
}

#[test]
fn dimpoly_detects_holonomic_modules() {
    let doc = json(&["dimpoly", &path("holonomic.json")]);
    assert_eq!(doc["holonomic"], true);
    assert_eq!(doc["phi"]["text"], "C(t1+1,1)*C(t2+1,1)");
}

#[test]
fn invariants_of_the_example() {
    let doc = json(&["invariants", &path("two_block.json")]);
    assert_eq!(doc["total_degree"], 3);
    let top: Vec<(Vec<u64>, String)> = doc["top_coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let m = e["monomial"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
            (m, e["coeff"].as_str().unwrap().to_string())
        })
        .collect();
    assert!(top.contains(&(vec![2, 1], "1".into())), "{:?}", top);
    assert!(top.contains(&(vec![1, 2], "1/2".into())), "{:?}", top);
    assert_eq!(top.len(), 2);
}

#[test]
fn bernstein_of_the_example() {
    let doc = json(&["bernstein", &path("two_block.json")]);
    assert_eq!(doc["dimension"], 3);
    assert_eq!(doc["multiplicity"], "3");
}

#[test]
fn gb_lists_leaders_and_stages() {
    let doc = json(&["gb", &path("two_block.json")]);
    assert_eq!(doc["certified_stages"], serde_json::json!([1, 2]));
    for e in doc["elements"].as_array().unwrap() {
        assert_eq!(e["leaders"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn check_passes_on_the_example() {
    let doc = json(&["check", &path("two_block.json"), "--rmax", "3"]);
    assert_eq!(doc["mismatches"], 0);
    assert_eq!(doc["points"].as_array().unwrap().len(), 16);
}

#[test]
fn output_is_byte_stable() {
    for cmd in ["gb", "dimpoly", "invariants", "bernstein"] {
        let a = stdout_of(&[cmd, &path("two_block.json")]);
        let b = stdout_of(&[cmd, &path("two_block.json")]);
        assert_eq!(a, b, "{}", cmd);
    }
}

#[test]
fn input_errors_exit_with_one() {
    let out = run(&["dimpoly", &path("bad_gen.json")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("relations[0][0].gen"), "{}", err);
    let out = run(&["eval", &path("two_block.json"), "--at", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["dimpoly", &path("missing.json")]);
    assert_eq!(out.status.code(), Some(1));
}
