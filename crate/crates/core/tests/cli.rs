use minkoscope::cli::{execute, run, RunConfig};
use minkoscope::counterexample::build_instance;
use minkoscope::duality::{confocal_caustic, confocal_dual};
use minkoscope::geometry::v2;
use minkoscope::io::{body_from_json, body_to_json, write_text};
use minkoscope::ConvexBody;
use clap::Parser;
use nalgebra::Matrix2;
use std::path::{Path, PathBuf};
use tempfile::TempDir;

fn put(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    write_text(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn body(dir: &Path, name: &str, b: &ConvexBody) -> String {
    put(dir, name, &body_to_json(b))
}

fn exec(args: &[&str]) -> minkoscope::cli::Output {
    let mut full = vec!["minkoscope"];
    full.extend_from_slice(args);
    execute(&RunConfig::try_parse_from(full).unwrap()).unwrap()
}

fn run_args(args: &[&str]) -> i32 {
    let mut full = vec!["minkoscope"];
    full.extend_from_slice(args);
    run(full)
}

#[test]
fn string_construct_point_gives_disk() {
    let dir = TempDir::new().unwrap();
    let spec = put(
        dir.path(),
        "spec.json",
        r#"{"caustic": {"variant": "polygon", "vertices": [[0, 0]]}, "metric": {"variant": "disk", "radius": 1}, "length": 4}"#,
    );
    let out = exec(&["string-construct", &spec]);
    assert_eq!(out.code, 0);
    let k = body_from_json(&out.text).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
    assert_eq!(v["variant"], "sampled");
    for knot in v["knots"].as_array().unwrap() {
        let r = (knot[1].as_f64().unwrap().powi(2) + knot[2].as_f64().unwrap().powi(2)).sqrt();
        assert!((r - 2.0).abs() < 1e-9);
    }
    assert!((k.h(v2(0.3, 0.4)) - 1.0).abs() < 1e-9);
}

#[test]
fn string_construct_interval_in_l1_gives_octagon() {
    let dir = TempDir::new().unwrap();
    let spec = put(
        dir.path(),
        "spec.json",
        r#"{"caustic": {"variant": "polygon", "vertices": [[-1, 0], [1, 0]]}, "metric": {"variant": "lp", "p": 1}, "length": 6}"#,
    );
    let out = exec(&["string-construct", &spec]);
    let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
    assert_eq!(v["variant"], "polygon");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
}

#[test]
fn short_string_exits_2() {
    let dir = TempDir::new().unwrap();
    let spec = put(
        dir.path(),
        "spec.json",
        r#"{"caustic": {"variant": "polygon", "vertices": [[-1, 0], [1, 0]]}, "metric": {"variant": "disk", "radius": 1}, "length": 3}"#,
    );
    assert_eq!(run_args(&["string-construct", &spec]), 2);
    let err = RunConfig::try_parse_from(["minkoscope", "string-construct", &spec]).map(|c| execute(&c));
    let msg = err.unwrap().unwrap_err().to_string();
    assert!(msg.contains("string length must exceed caustic perimeter"));
}

#[test]
fn malformed_json_names_the_field() {
    let dir = TempDir::new().unwrap();
    let spec = put(dir.path(), "spec.json", r#"{"caustic": {"variant": "disk", "radius": 1}, "metric": {"variant": "disk"}, "length": 9}"#);
    let cfg = RunConfig::try_parse_from(["minkoscope", "string-construct", &spec]).unwrap();
    let msg = execute(&cfg).unwrap_err().to_string();
    assert!(msg.contains("radius"), "{msg}");
    assert_eq!(run_args(&["string-construct", &spec]), 2);
}

#[test]
fn simulate_disk_rows() {
    let dir = TempDir::new().unwrap();
    let d = body(dir.path(), "d.json", &ConvexBody::disk(1.0).unwrap());
    let out = exec(&["simulate", &d, &d, "--iterations", "100", "--seed", "3"]);
    let mut rdr = csv::Reader::from_reader(out.text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["n", "q1", "q2", "p1", "p2", "r", "s", "seg_len"]);
    let lens: Vec<f64> = rdr.records().map(|r| r.unwrap()[7].parse().unwrap()).collect();
    assert_eq!(lens.len(), 100);
    assert!(lens.iter().all(|l| (l - lens[0]).abs() < 1e-12));
    // identical invocation, identical bytes
    let again = exec(&["simulate", &d, &d, "--iterations", "100", "--seed", "3"]);
    assert_eq!(out.text, again.text);
}

#[test]
fn invariants_circle() {
    let dir = TempDir::new().unwrap();
    let k = body(dir.path(), "k.json", &ConvexBody::disk(2.0).unwrap());
    let t = body(dir.path(), "t.json", &ConvexBody::disk(1.0).unwrap());
    let out = exec(&["invariants", &k, &t, &t, "--iterations", "5000"]);
    let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
    assert!((v["omega"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-4);
    let again = exec(&["invariants", &k, &t, &t, "--iterations", "5000"]);
    assert_eq!(out.text, again.text);
}

fn a32() -> Matrix2<f64> {
    Matrix2::new(1.0 / 3.0, 0.0, 0.0, 0.5)
}

#[test]
fn dual_confocal_pair_exits_0() {
    let dir = TempDir::new().unwrap();
    let k = body(dir.path(), "k.json", &ConvexBody::ellipse(3.0, 2.0).unwrap());
    let t = body(dir.path(), "t.json", &ConvexBody::disk(1.0).unwrap());
    let c = body(dir.path(), "c.json", &confocal_caustic(&a32(), 1.0).unwrap());
    let out = exec(&["dual", &k, &t, &c, "--iterations", "5000"]);
    assert_eq!(out.code, 0, "{}", out.text);
    let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
    assert_eq!(v["report"]["verdict"], "dual");
    let d = body(dir.path(), "d.json", &confocal_dual(&a32(), 1.0).unwrap());
    let out = exec(&["verify", &k, &t, &c, &d, "--iterations", "5000"]);
    assert_eq!(out.code, 0);
    let rep = exec(&["invariants", &k, &t, &c, "--dual", &d, "--iterations", "5000"]);
    let v: serde_json::Value = serde_json::from_str(&rep.text).unwrap();
    assert!(v["delta_perimeter"].as_f64().unwrap() < 1e-4);
}

#[test]
fn dual_polygon_caustic_lists_vertices() {
    let dir = TempDir::new().unwrap();
    let tri = ConvexBody::polygon(vec![v2(1.0, 0.0), v2(-0.5, 0.8), v2(-0.5, -0.8)]).unwrap();
    let t = ConvexBody::disk(1.0).unwrap();
    let spec = put(
        dir.path(),
        "spec.json",
        &format!(r#"{{"caustic": {}, "metric": {}, "length": 7.5}}"#, body_to_json(&tri), body_to_json(&t)),
    );
    let k_out = exec(&["string-construct", &spec]);
    let k = put(dir.path(), "k.json", &k_out.text);
    let tp = body(dir.path(), "t.json", &t);
    let c = body(dir.path(), "c.json", &tri);
    let out = exec(&["dual", &k, &tp, &c, "--iterations", "2000"]);
    let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
    assert_eq!(v["method"], "polygon");
    assert_eq!(v["dual"]["variant"], "polygon");
    assert!(v["dual"]["vertices"].as_array().unwrap().len() >= 6);
    assert!(v["report"]["tangency_error"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn dual_of_counterexample_exits_1() {
    let dir = TempDir::new().unwrap();
    let inst = build_instance(16).unwrap();
    let k = body(dir.path(), "k.json", &inst.k_n);
    let t = body(dir.path(), "t.json", &inst.t_n);
    let c = body(dir.path(), "c.json", &inst.caustic);
    assert_eq!(run_args(&["dual", &k, &t, &c, "--iterations", "2000", "--out", dir.path().join("o.json").to_str().unwrap()]), 1);
}

#[test]
fn not_a_caustic_exits_2() {
    let dir = TempDir::new().unwrap();
    let k = body(dir.path(), "k.json", &ConvexBody::ellipse(3.0, 2.0).unwrap());
    let t = body(dir.path(), "t.json", &ConvexBody::disk(1.0).unwrap());
    let c = body(dir.path(), "c.json", &ConvexBody::disk(1.0).unwrap());
    assert_eq!(run_args(&["dual", &k, &t, &c, "--iterations", "100"]), 2);
}

#[test]
fn counterexample_csv() {
    let out = exec(&["counterexample", "--n", "16,32"]);
    let mut rdr = csv::Reader::from_reader(out.text.as_bytes());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["n", "p_n", "eps_n", "gap_n", "violation", "verdict"]);
    assert_eq!(rdr.records().count(), 2);
    let json = exec(&["counterexample", "--n", "16,32", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json.text).unwrap();
    assert_eq!(v["verdict"], "no-dual-caustic");
}

#[test]
fn render_one_path_per_body() {
    let dir = TempDir::new().unwrap();
    let k = body(dir.path(), "k.json", &ConvexBody::ellipse(3.0, 2.0).unwrap());
    let t = body(dir.path(), "t.json", &ConvexBody::disk(1.0).unwrap());
    let c = body(dir.path(), "c.json", &confocal_caustic(&a32(), 1.0).unwrap());
    let out_path: PathBuf = dir.path().join("fig.svg");
    assert_eq!(run_args(&["render", &k, &t, &c, "--orbit", "30", "--out", out_path.to_str().unwrap()]), 0);
    let svg = std::fs::read_to_string(&out_path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<path ").count(), 3);
    assert_eq!(svg.matches("<polyline ").count(), 1);
    assert_eq!(svg.matches('<').count(), svg.matches('>').count());
    assert!(svg.contains("viewBox=\"-3.300000 -2.300000 6.600000 4.600000\""), "{}", &svg[..120]);
}

#[test]
fn bad_options_exit_2() {
    assert_eq!(run_args(&["counterexample", "--resolution", "8"]), 2);
    assert_eq!(run_args(&["counterexample", "--tol", "0"]), 2);
    assert_eq!(run_args(&["render", "/nonexistent.json"]), 2);
    assert_eq!(run_args(&["nonsense"]), 2);
}
