use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use shortcut_cli::document::SolutionDocument;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    fn network(&self, kind: &str, vertices: &[(f64, f64)]) -> PathBuf {
        let vs: Vec<[f64; 2]> = vertices.iter().map(|&(x, y)| [x, y]).collect();
        let text = serde_json::json!({ "kind": kind, "vertices": vs }).to_string();
        self.file(&format!("{kind}-{}.json", vertices.len()), &text)
    }
}

fn shortcut(args: &[&str], input: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shortcut"))
        .args(args)
        .arg(input)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const SQUARE: [(f64, f64); 4] = [(0., 0.), (1., 0.), (1., 1.), (0., 1.)];
const L_PATH: [(f64, f64); 3] = [(0., 0.), (4., 0.), (4., 4.)];

#[test]
fn diameters() {
    let fx = Fixture::new();
    let out = json(&shortcut(&["diameter"], &fx.network("cycle", &SQUARE)));
    assert_eq!(out["diameter"], 2.0);
    let out = json(&shortcut(&["diameter"], &fx.network("path", &[(0., 0.), (10., 0.)])));
    assert_eq!(out["diameter"], 10.0);
}

#[test]
fn malformed_input() {
    let fx = Fixture::new();
    let out = shortcut(&["diameter"], &fx.network("path", &[(0., 0.)]));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vertices"));
    let out = shortcut(&["diameter"], &fx.file("bad.json", "{\"kind\": \"path\",\n\"vertices\": [}"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn path_shortcut_on_l_path() {
    let fx = Fixture::new();
    let out = json(&shortcut(&["path-shortcut"], &fx.network("path", &L_PATH)));
    let d = out["diameter"].as_f64().unwrap();
    assert!((d - 6.18767264271).abs() < 1e-9, "{d}");
    assert!(out["improvement"].as_f64().unwrap() > 1.8);
}

#[test]
fn straight_path_warns() {
    let fx = Fixture::new();
    let out = shortcut(&["path-shortcut"], &fx.network("path", &[(0., 0.), (10., 0.)]));
    let value = json(&out);
    assert_eq!(value["improvement"], 0.0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no shortcut"));
}

#[test]
fn error_exit_codes() {
    let fx = Fixture::new();
    let square = fx.network("cycle", &SQUARE);
    assert_eq!(shortcut(&["path-shortcut"], &square).status.code(), Some(3));
    let reflex = fx.network("cycle", &[(0., 0.), (2., 0.), (1., 0.5), (1., 2.)]);
    assert_eq!(shortcut(&["cycle-pair"], &reflex).status.code(), Some(4));
    let segment = fx.network("cycle", &[(0., 0.), (1., 0.)]);
    assert_eq!(shortcut(&["cycle-pair"], &segment).status.code(), Some(5));
    assert_eq!(shortcut(&["oracle", "cycle", "--grid", "100"], &square).status.code(), Some(6));
}

#[test]
fn oracle_diameter_of_square() {
    let fx = Fixture::new();
    let out = json(&shortcut(&["oracle", "diameter", "--spacing", "0.01"], &fx.network("cycle", &SQUARE)));
    let d = out["diameter"].as_f64().unwrap();
    assert!((d - 2.0).abs() <= 0.02, "{d}");
}

#[test]
fn path_oracle_agrees() {
    let fx = Fixture::new();
    let out = shortcut(&["oracle", "path", "--grid", "400"], &fx.network("path", &L_PATH));
    let value = json(&out);
    let d = value["oracle_diameter"].as_f64().unwrap();
    assert!((d - 6.18767264271).abs() < 1e-2, "{d}");
    assert_eq!(value["agrees"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("agree"));
}

#[test]
fn cycle_pair_output() {
    let fx = Fixture::new();
    let svg = fx.dir.path().join("pair.svg");
    let out = shortcut(
        &["cycle-pair", "--svg", svg.to_str().unwrap()],
        &fx.network("cycle", &SQUARE),
    );
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let value = json(&out);
    let d = value["diameter"].as_f64().unwrap();
    assert!((d - 1.82842712475).abs() < 1e-9, "{d}");

    let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(matches!(
        serde_json::from_str::<SolutionDocument>(&text).unwrap(),
        SolutionDocument::Cycle(_)
    ));

    let svg = std::fs::read_to_string(svg).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 1);
    assert_eq!(svg.matches("<line").count(), 2);
    assert!(svg.matches("<circle").count() >= 4);
}

#[test]
fn path_svg_uses_polyline() {
    let fx = Fixture::new();
    let svg = fx.dir.path().join("path.svg");
    let out = shortcut(&["path-shortcut", "--svg", svg.to_str().unwrap()], &fx.network("path", &L_PATH));
    let value = json(&out);
    assert!(matches!(serde_json::from_value::<SolutionDocument>(value).unwrap(), SolutionDocument::Path(_)));
    let svg = std::fs::read_to_string(svg).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert_eq!(svg.matches("<line").count(), 1);
}

#[test]
fn regular_64_gon() {
    let fx = Fixture::new();
    let pts: Vec<(f64, f64)> = (0..64)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / 64.0;
            (t.cos(), t.sin())
        })
        .collect();
    let value = json(&shortcut(&["cycle-pair"], &fx.network("cycle", &pts)));
    let d = value["diameter"].as_f64().unwrap();
    assert!((d - 3.048967).abs() < 1e-2, "{d}");
}
