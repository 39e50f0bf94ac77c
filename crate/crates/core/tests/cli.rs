use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tropical_core::io::{lifting_to_json, to_canonical_string};
use tropical_core::subdivision::build_maximal_lifting;

fn tropical(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropical")).args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn invariants_of_quartic_surface() {
    let v = json_of(&tropical(&["invariants", "2", "4"]));
    assert_eq!(v["p_g"], 1);
    assert_eq!(v["chi"], 24);
    assert_eq!(v["sigma"], -16);
}

#[test]
fn decompose_cubic_curve() {
    let v = json_of(&tropical(&["decompose", "--n", "1", "--d", "3"]));
    assert_eq!(v["pieces"], 9);
    assert_eq!(v["table"].as_array().unwrap().len(), 9);
    let dir = tempfile::tempdir().unwrap();
    let lifting = write(dir.path(), "v.json", &to_canonical_string(&lifting_to_json(&build_maximal_lifting(1, 3).unwrap())));
    assert_eq!(json_of(&tropical(&["decompose", "--input", &lifting]))["pieces"], 9);
}

#[test]
fn tampered_complex_fails_balance() {
    let dir = tempfile::tempdir().unwrap();
    let lifting = write(dir.path(), "v.json", r#"{"ambient_dim":2,"points":[[0,0],[1,0],[0,1],[1,1]],"values":["0","0","0","1"]}"#);
    let complex = tropical(&["tropicalize", "--input", &lifting]);
    let text = String::from_utf8(json_of(&complex).to_string().into_bytes()).unwrap();
    let good = write(dir.path(), "c.json", &text);
    let ok = tropical(&["check-balance", "--input", &good]);
    assert!(ok.status.success());
    assert_eq!(json_of(&ok)["balanced"], true);

    let mut v: Value = serde_json::from_str(&text).unwrap();
    let cell = v["cells"].as_array_mut().unwrap().iter_mut().find(|c| c["weight"] == 1).unwrap();
    cell["weight"] = 3.into();
    let bad = write(dir.path(), "bad.json", &v.to_string());
    let out = tropical(&["check-balance", "--input", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let cert: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["balanced"], false);
    assert!(cert["failing_cell"].is_u64());
}

#[test]
fn malformed_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "broken.json", "{\n  \"ambient_dim\": 2,\n  \"points\": [[0, 0],\n}");
    let out = tropical(&["tropicalize", "--input", &p]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
    let p = write(dir.path(), "field.json", r#"{"ambient_dim":1,"points":[[0],[1]],"values":["0",true]}"#);
    let err = String::from_utf8_lossy(&tropical(&["tropicalize", "--input", &p]).stderr).to_string();
    assert!(err.contains("$.values[1]"), "{err}");
}

#[test]
fn canonical_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let lifting = write(dir.path(), "v.json", r#"{"values":["1/2","0","-4/6","1"],"points":[[0,0],[2,0],[0,1],[1,1]],"ambient_dim":2}"#);
    let regions = tropical(&["regions", "--input", &lifting]);
    let first = String::from_utf8(regions.stdout).unwrap();
    let r = write(dir.path(), "r.json", &first);
    let back = tropical(&["reconstruct", "--input", &r]);
    let w = write(dir.path(), "w.json", &String::from_utf8(back.stdout).unwrap());
    let again = tropical(&["regions", "--input", &w]);
    let c1 = tropical(&["tropicalize", "--input", &lifting]);
    let c2 = tropical(&["tropicalize", "--input", &w]);
    assert!(again.status.success() && c1.status.success() && c2.status.success());
    let cells = |o: &Output| json_of(o)["cells"].clone();
    assert_eq!(cells(&c1), cells(&c2));
    // re-emitting a complex file is byte-identical
    let c = write(dir.path(), "c.json", &String::from_utf8(c1.stdout.clone()).unwrap());
    let sub = tropical(&["check-balance", "--input", &c]);
    assert!(sub.status.success());
    let text = String::from_utf8(c1.stdout).unwrap();
    let parsed = tropical_core::io::complex_from_json(&serde_json::from_str(&text).unwrap(), "$").unwrap();
    assert_eq!(to_canonical_string(&tropical_core::io::complex_to_json(&parsed)), text);
}

#[test]
fn homology_of_quartic() {
    let v = json_of(&tropical(&["homology", "--n", "2", "--d", "4"]));
    assert_eq!(v["betti"], serde_json::json!([1, 0, 1]));
}

#[test]
fn amoeba_sample_records_seed() {
    let dir = tempfile::tempdir().unwrap();
    let lifting = write(
        dir.path(),
        "h.json",
        r#"{"ambient_dim":2,"points":[[0,0],[1,0],[0,1],[1,1]],"values":["0","0","0","0"],"coefficients":[-1,1,1,1]}"#,
    );
    let out_path = dir.path().join("s.csv");
    let out = tropical(&[
        "amoeba-sample", "--input", &lifting, "--t", "10,1000", "--grid", "21x8", "--seed", "42", "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&out_path).unwrap();
    assert!(csv.starts_with("# seed=42 grid=21x8"));
    assert_eq!(csv.lines().filter(|l| l.starts_with("# t=")).count(), 2);
    let svg = tropical(&["render-svg", "--input", &lifting, "--samples", out_path.to_str().unwrap(), "--seed", "42"]);
    let svg = String::from_utf8(svg.stdout).unwrap();
    assert!(svg.contains("<!-- seed=42 -->"));
    assert!(svg.contains("class=\"sample\""));
    assert_eq!(tropical(&["amoeba-sample", "--input", &lifting, "--t", "0.5"]).status.code(), Some(1));
}

#[test]
fn kapranov_and_patchwork() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "f.json",
        r#"{"terms":[
            {"exponent":[2],"coefficient":{"terms":[{"exp":"0","re":1,"im":0}],"trunc":"4"}},
            {"exponent":[1],"coefficient":{"terms":[{"exp":"-1","re":1,"im":0}],"trunc":"4"}},
            {"exponent":[0],"coefficient":{"terms":[{"exp":"0","re":1,"im":0}],"trunc":"4"}}]}"#,
    );
    let v = json_of(&tropical(&["kapranov", "--input", &f]));
    assert_eq!(v["breakpoints"], serde_json::json!(["-1/1", "1/1"]));

    let lifting = write(dir.path(), "v.json", &to_canonical_string(&lifting_to_json(&build_maximal_lifting(1, 3).unwrap())));
    let svg = dir.path().join("m.svg");
    let m = json_of(&tropical(&["patchwork", "--input", &lifting, "--vertex", "1,1", "--svg", svg.to_str().unwrap()]));
    assert_eq!(m["report"]["closed"], true);
    assert_eq!(m["report"]["euler"], 0);
    assert_eq!(m["base_class"]["pairing"], 1);
    assert!(std::fs::read_to_string(svg).unwrap().contains("class=\"membrane\""));
    assert_eq!(tropical(&["patchwork", "--input", &lifting, "--vertex", "7,7"]).status.code(), Some(1));
}

#[test]
fn phase_limit_table_decreases() {
    let dir = tempfile::tempdir().unwrap();
    let one = r#"{"terms":[{"exp":"0","re":1,"im":0}],"trunc":"4"}"#;
    let f = write(
        dir.path(),
        "line.json",
        &format!(r#"{{"terms":[{{"exponent":[0,0],"coefficient":{one}}},{{"exponent":[1,0],"coefficient":{one}}},{{"exponent":[0,1],"coefficient":{one}}}]}}"#),
    );
    let out = tropical(&["phase-limit", "--input", &f, "--t", "10,1000,1000000"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let d: Vec<f64> = text
        .lines()
        .skip(2)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(d.len(), 3);
    assert!(d[0] > d[1] && d[1] > d[2], "{d:?}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tropical(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(tropical(&["invariants", "2"]).status.code(), Some(2));
}
