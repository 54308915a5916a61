use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn nilchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilchar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn example_characteristic_dense() {
    let out = nilchar(&["characteristic", "--module", "example-2x3", "--orbit", "O_5", "--mode", "dense"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(strings(&v["point"]), ["2", "4"]);
    assert_eq!(v["orbit"], "O_5");
    assert_eq!(v["norm_sq"], "40");
}

#[test]
fn dense_undefined_exit_code() {
    let out = nilchar(&["characteristic", "--module", "example-2x3", "--orbit", "O_2", "--mode", "dense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let out = nilchar(&["characteristic", "--module", "example-2x3", "--orbit", "O_2"]);
    assert!(out.status.success());
    assert_eq!(strings(&json(&out)["point"]), ["2", "0"]);
}

#[test]
fn errors_exit_one() {
    let out = nilchar(&["characteristic", "--module", "example-2x3", "--orbit", "O_9"]);
    assert_eq!(out.status.code(), Some(1));
    let out = nilchar(&["characteristic", "--type", "B", "--rank", "2", "--module", "little-adjoint", "--orbit", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no orbit classification"));
    let out = nilchar(&["regions", "--type", "A", "--rank", "3", "--max-hyperplanes", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--max-hyperplanes"));
}

#[test]
fn sl4_all_orbits() {
    let out = nilchar(&["characteristic", "--type", "A", "--rank", "3", "--orbit", "all"]);
    assert!(out.status.success());
    let v = json(&out);
    let labels: Vec<(String, Vec<String>)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["orbit"].as_str().unwrap().to_string(), strings(&c["labels"])))
        .collect();
    assert_eq!(labels.len(), 5);
    assert_eq!(labels[0], ("(4)".to_string(), vec!["2".to_string(), "2".into(), "2".into()]));
    assert_eq!(labels[2].1, ["0", "2", "0"]);
}

#[test]
fn regions_document_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = nilchar(&["regions", "--type", "A", "--rank", "2", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["regions"].as_array().unwrap().len(), 5);
    assert_eq!(v["hyperplanes"].as_array().unwrap().len(), 3);
    let parsed: nilchar::io::RegionsDoc = nilchar::io::from_json(std::str::from_utf8(&ta).unwrap()).unwrap();
    assert_eq!(parsed.regions[0].signs, "---");
}

#[test]
fn example_regions_carry_labels() {
    let out = nilchar(&["regions", "--module", "example-2x3"]);
    let v = json(&out);
    let mut labels: Vec<&str> = v["regions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["label"].as_str().unwrap())
        .collect();
    labels.sort_unstable();
    assert_eq!(labels, ["I", "II", "III", "IV", "V", "VI"]);
}

fn check_svg(path: &Path, hyperplanes: usize) -> String {
    let text = std::fs::read_to_string(path).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("well-formed XML");
    let lines = doc.descendants().filter(|n| n.has_tag_name("line")).count();
    assert_eq!(lines, hyperplanes);
    text
}

#[test]
fn plots() {
    let dir = tempfile::tempdir().unwrap();
    let fig = dir.path().join("fig.svg");
    let out = nilchar(&[
        "plot",
        "--module",
        "example-2x3",
        "--svg",
        fig.to_str().unwrap(),
        "--characteristics",
        "--mode",
        "dense",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = check_svg(&fig, 4);
    for label in [">I<", ">II<", ">III<", ">IV<", ">V<", ">VI<", ">O_5<"] {
        assert!(text.contains(label), "missing {label}");
    }
    // O_2 has no dense characteristic; O_3, O_4, O_5 are marked.
    assert_eq!(text.matches("<circle").count(), 3);

    for (ty, rank, module, count) in [("A", "2", "adjoint", 3), ("G", "2", "little-adjoint", 3), ("B", "2", "adjoint", 4)] {
        let svg = dir.path().join(format!("{ty}{rank}.svg"));
        let out = nilchar(&[
            "regions", "--type", ty, "--rank", rank, "--module", module, "--svg", svg.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        check_svg(&svg, count);
    }

    let out = nilchar(&["plot", "--type", "A", "--rank", "3", "--svg", fig.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_example_suite() {
    let out = nilchar(&["verify", "--suite", "example"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 16);
    assert!(!text.contains("FAIL"));
}

#[test]
fn scales_and_level_flags() {
    let out = nilchar(&[
        "characteristic", "--type", "A,A", "--rank", "1,1", "--module", "example-2x3", "--orbit", "O_5",
        "--mode", "dense", "--scales", "1,3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["orbit"], "O_5");
    let out = nilchar(&["characteristic", "--module", "example-2x3", "--orbit", "O_5", "--scales", "1,-1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = nilchar(&["regions", "--module", "example-2x3", "--level", "1"]);
    assert_eq!(json(&out)["level"], "1");
}

#[test]
fn small_presets() {
    let out = nilchar(&["regions", "--type", "A", "--rank", "1"]);
    assert_eq!(json(&out)["regions"].as_array().unwrap().len(), 2);

    let out = nilchar(&["regions", "--type", "B", "--rank", "2", "--module", "little-adjoint"]);
    let v = json(&out);
    let normals: Vec<Vec<i64>> = v["hyperplanes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| h["weight_fw"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect())
        .collect();
    // Positive short roots of B2: α_2 = (-1,2) and α_1 + α_2 = (1,0).
    assert_eq!(normals, vec![vec![-1, 2], vec![1, 0]]);

    let out = nilchar(&["characteristic", "--type", "A", "--rank", "2", "--orbit", "1,1,1"]);
    assert_eq!(strings(&json(&out)["point"]), ["0", "0"]);
}
