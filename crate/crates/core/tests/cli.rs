// Copyright 2026 The stcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use stcorr::document::{Loaded, MatrixDocument};
use stcorr::pdm::corr_vec3;

fn stcorr() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_stcorr"));
    c.env_remove("STCORR_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    stcorr().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let d = std::env::temp_dir().join(format!("stcorr-cli-{tag}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&d);
        fs::create_dir_all(&d).unwrap();
        TempDir(d)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }

    fn arg(&self, name: &str) -> String {
        self.path(name).to_string_lossy().into_owned()
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn pdm_json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", stderr(o));
    serde_json::from_str(&stdout(o)).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

fn assert_close(a: &[f64], b: &[f64], tol: f64) {
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
    }
}

#[test]
fn build_swap_over_two() {
    let v = pdm_json(&run(&["build", "--state", "maximally-mixed", "--channel", "identity"]));
    assert_eq!(v["kind"], "pdm");
    assert_eq!(v["payload"]["f_tr"].as_f64(), Some(1.0));
    assert_eq!(floats(&v["payload"]["corr"]), vec![1.0, 1.0, 1.0]);
    assert_eq!(floats(&v["payload"]["eigenvalues"]), vec![-0.5, 0.5, 0.5, 0.5]);
}

#[test]
fn build_bell_state() {
    let v = pdm_json(&run(&["build", "--spatial", "bell-phi-plus"]));
    assert_eq!(v["payload"]["f_tr"].as_f64(), Some(0.0));
    assert_eq!(floats(&v["payload"]["corr"]), vec![1.0, -1.0, 1.0]);
    let v = pdm_json(&run(&["build", "--spatial", "singlet"]));
    assert_eq!(floats(&v["payload"]["corr"]), vec![-1.0, -1.0, -1.0]);
}

#[test]
fn build_extremal_from_cli_angles() {
    let v = pdm_json(&run(&[
        "build", "--state", "bloch", "0,0,1", "--channel", "extremal", "2.0944,1.0472",
    ]));
    assert_close(&floats(&v["payload"]["corr"]), &[-0.5, 0.5, 0.5], 1e-4);
    // The compact form and a negative Bloch component parse too.
    let v = pdm_json(&run(&["build", "--state", "bloch:0,0,-1", "--channel", "extremal:0,0,213"]));
    assert_close(&floats(&v["payload"]["corr"]), &[1.0, 1.0, 1.0], 1e-12);
    let v = pdm_json(&run(&["build", "--state", "bloch", "-1,0,0", "--channel", "depolarizing:1"]));
    assert_close(&floats(&v["payload"]["corr"]), &[0.0, 0.0, 0.0], 1e-12);
}

#[test]
fn build_then_analyze_round_trips() {
    let dir = TempDir::new("roundtrip");
    let o = run(&[
        "build", "--state", "bloch", "0.3,-0.2,0.5", "--channel", "amplitude-damping:0.35", "-o",
        &dir.arg("r.json"),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let stored = match MatrixDocument::read(&dir.path("r.json")).unwrap().load().unwrap() {
        Loaded::Pdm(p) => p,
        other => panic!("unexpected {other:?}"),
    };
    let a = pdm_json(&run(&["analyze", "--pdm", &dir.arg("r.json"), "--format", "json"]));
    let table: Vec<f64> = a["table"].as_array().unwrap().iter().flat_map(floats).collect();
    let want: Vec<f64> = stored.table().0.iter().flatten().copied().collect();
    assert_close(&table, &want, 1e-12);
    let c = corr_vec3(&stored);
    assert_close(
        &[a["corr"]["x"].as_f64().unwrap(), a["corr"]["y"].as_f64().unwrap(), a["corr"]["z"].as_f64().unwrap()],
        &c.to_array(),
        1e-12,
    );
}

#[test]
fn analyze_text_reports() {
    let dir = TempDir::new("analyze");
    let swap = dir.arg("swap.json");
    assert!(run(&["build", "--state", "maximally-mixed", "--channel", "identity", "-o", &swap]).status.success());
    let text = stdout(&run(&["analyze", "--pdm", &swap]));
    assert!(text.contains("f_tr             1\n"), "{text}");
    assert!(text.contains("dist_octahedron  1.15470053838\n"), "{text}");
    assert!(text.contains("hypothesis       temporal-only"), "{text}");

    let mixed = dir.arg("mixed.json");
    assert!(run(&["build", "--spatial", "maximally-mixed", "-o", &mixed]).status.success());
    let text = stdout(&run(&["analyze", "--pdm", &mixed]));
    assert!(text.contains("f_tr             0\n"));
    assert!(text.contains("corr             0 0 0\n"));
    assert!(text.contains("separable-compatible"));

    let bell = dir.arg("bell.json");
    assert!(run(&["build", "--spatial", "bell-psi-plus", "-o", &bell]).status.success());
    let text = stdout(&run(&["analyze", "--pdm", &bell]));
    assert!(text.contains("pt_negativity    0.5\n"), "{text}");
    assert!(text.contains("spatial-only"));
}

#[test]
fn classify_examples() {
    let v = pdm_json(&run(&["classify", "--point", "-0.5,0.5,0.5"]));
    let h = &v["hypothesis"];
    assert_eq!(h["compatible_spatial"], true);
    assert_eq!(h["compatible_temporal_cptp"], true);
    assert_eq!(h["compatible_separable"], false);

    let v = pdm_json(&run(&["classify", "--point", "1,-1,1"]));
    assert_eq!(v["summary"], "spatial-only");
    let v = pdm_json(&run(&["classify", "--point", "1.2,0,0"]));
    assert_eq!(v["hypothesis"]["unphysical"], true);
    assert_eq!(v["region"]["in_cube"], false);
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["classify", "--point", "a,b,c"],
        vec!["classify", "--point", "1,2"],
        vec!["build", "--state", "bloch", "1,1,1", "--channel", "identity"],
        vec!["build", "--state", "maximally-mixed", "--channel", "transpose"],
        vec!["build", "--state", "maximally-mixed", "--channel", "extremal", "7,0"],
        vec!["build", "--state", "maximally-mixed", "--channel", "no-such-channel"],
        vec!["build", "--state", "maximally-mixed"],
        vec!["sample", "--family", "nope"],
        vec!["sample", "--family", "spatial-dm", "--count", "0"],
        vec!["figures", "--figure", "4"],
        vec!["figures", "--figure", "1", "--resolution", "1"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn invalid_documents_name_the_invariant() {
    let dir = TempDir::new("invalid");
    fs::write(dir.path("bad.json"), "{not json").unwrap();
    let o = run(&["analyze", "--pdm", &dir.arg("bad.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("malformed document"));

    let table = r#"{"kind":"correlations","payload":{"table":[[0.5,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}}"#;
    fs::write(dir.path("t.json"), table).unwrap();
    let o = run(&["build", "--correlations", &dir.arg("t.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("T[0][0]"), "{}", stderr(&o));

    let state = r#"{"kind":"state","payload":{"matrix":[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]}}"#;
    fs::write(dir.path("s.json"), state).unwrap();
    let o = run(&["build", "--state", &dir.arg("s.json"), "--channel", "identity"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("validation failed"), "{}", stderr(&o));

    let o = run(&["analyze", "--pdm", &dir.arg("missing.json")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn documents_as_inputs() {
    let dir = TempDir::new("docs");
    let table = r#"{"kind":"correlations","payload":{"table":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}}"#;
    fs::write(dir.path("t.json"), table).unwrap();
    let v = pdm_json(&run(&["build", "--correlations", &dir.arg("t.json")]));
    assert_eq!(v["payload"]["f_tr"].as_f64(), Some(1.0));

    let channel = r#"{"kind":"channel","payload":{"ptm":[[1,0,0,0],[0,1,0,0],[0,0,-1,0],[0,0,0,-1]]}}"#;
    fs::write(dir.path("c.json"), channel).unwrap();
    let v = pdm_json(&run(&["build", "--state", "maximally-mixed", "--channel", &dir.arg("c.json")]));
    assert_eq!(floats(&v["payload"]["corr"]), vec![1.0, -1.0, -1.0]);

    let rho = r#"{"kind":"state","payload":{"matrix":[
        [[0.5,0],[0,0],[0,0],[0.5,0]],
        [[0,0],[0,0],[0,0],[0,0]],
        [[0,0],[0,0],[0,0],[0,0]],
        [[0.5,0],[0,0],[0,0],[0.5,0]]]}}"#;
    fs::write(dir.path("rho.json"), rho).unwrap();
    let v = pdm_json(&run(&["build", "--spatial", &dir.arg("rho.json")]));
    assert_eq!(floats(&v["payload"]["corr"]), vec![1.0, -1.0, 1.0]);
}

#[test]
fn precision_flag() {
    let v = pdm_json(&run(&[
        "--precision", "4", "build", "--state", "bloch", "0,0,1", "--channel", "extremal", "1,1",
    ]));
    for x in floats(&v["payload"]["corr"]) {
        let s = format!("{x}");
        let digits = s.trim_start_matches('-').replace("0.", "").trim_start_matches('0').len();
        assert!(digits <= 4, "{s}");
    }
    assert_eq!(run(&["--precision", "0", "classify", "--point", "0,0,0"]).status.code(), Some(2));
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let text = fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'));
    text.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn sample_is_reproducible() {
    let dir = TempDir::new("sample");
    let args = |out: &str| {
        vec!["sample", "--family", "random-cptp", "--count", "300", "--seed", "41", "-o"]
            .into_iter()
            .map(str::to_string)
            .chain([out.to_string()])
            .collect::<Vec<_>>()
    };
    let a = stcorr().args(args(&dir.arg("a"))).output().unwrap();
    let b = stcorr().args(args(&dir.arg("b"))).output().unwrap();
    assert!(a.status.success() && b.status.success());
    let fa = fs::read(dir.path("a/random-cptp.csv")).unwrap();
    assert_eq!(fa, fs::read(dir.path("b/random-cptp.csv")).unwrap());
    let rows = csv_rows(&dir.path("a/random-cptp.csv"));
    assert_eq!(rows[0].join(","), "index,bx,by,bz,x,y,z,f_tr,in_ts,in_tt,in_elliptope");
    assert_eq!(rows.len(), 301);
    assert!(rows[1..].iter().all(|r| r[10] == "1"));
    assert!(stdout(&a).contains("violations 0"));

    let c = run(&["sample", "--family", "random-cptp", "--count", "300", "--seed", "42", "-o", &dir.arg("c")]);
    assert!(c.status.success());
    assert_ne!(fa, fs::read(dir.path("c/random-cptp.csv")).unwrap());
}

#[test]
fn cube_mixture_fills_the_cube() {
    let dir = TempDir::new("cube");
    let o = run(&["sample", "--family", "cube-mixture", "--count", "1000", "-o", &dir.arg("")]);
    assert!(o.status.success());
    let rows = csv_rows(&dir.path("cube-mixture.csv"));
    for k in 4..7 {
        let col: Vec<f64> = rows[1..].iter().map(|r| r[k].parse().unwrap()).collect();
        let lo = col.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(lo < -0.95 && hi > 0.95, "column {k}: [{lo}, {hi}]");
    }
    // Spatial samples carry no input state.
    assert_eq!(rows[1][1], "");
}

#[test]
fn sample_with_fixed_state_lands_in_tt() {
    let dir = TempDir::new("fixed");
    let o = run(&[
        "sample", "--family", "random-cptp", "--state", "maximally-mixed", "--count", "500", "-o", &dir.arg(""),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv_rows(&dir.path("random-cptp.csv"));
    assert!(rows[1..].iter().all(|r| r[9] == "1" && r[1] == "0"));
    let o = run(&["sample", "--family", "spatial-dm", "--state", "maximally-mixed", "-o", &dir.arg("")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn figure_one_mesh() {
    let dir = TempDir::new("fig1");
    let o = run(&["figures", "--figure", "1", "--resolution", "100", "-o", &dir.arg("")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("violations 0"));
    let rows = csv_rows(&dir.path("fig1_surface.csv"));
    assert_eq!(rows.len(), 10_001);
    for r in &rows[1..] {
        let v: Vec<f64> = r.iter().map(|s| s.parse().unwrap()).collect();
        let (x, y, z) = (v[2], v[3], v[4]);
        // 12 significant digits in the file bound the residual.
        assert!((1.0 + 2.0 * x * y * z - x * x - y * y - z * z).abs() < 1e-10);
    }
}

#[test]
fn figures_two_and_three_use_env_dir() {
    let dir = TempDir::new("fig23");
    for f in ["2", "3"] {
        let o = stcorr()
            .args(["figures", "--figure", f, "--resolution", "12"])
            .env("STCORR_OUT_DIR", &dir.0)
            .output()
            .unwrap();
        assert!(o.status.success(), "{}", stderr(&o));
    }
    for name in ["fig2_bodies.json", "fig2_clouds.csv", "fig3_regions.json", "fig3_clouds.csv"] {
        assert!(dir.path(name).exists(), "{name}");
    }
    let regions: Value = serde_json::from_str(&fs::read_to_string(dir.path("fig3_regions.json")).unwrap()).unwrap();
    let labels: Vec<&str> = regions.as_array().unwrap().iter().map(|r| r["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["a", "b", "c"]);
    let clouds = csv_rows(&dir.path("fig2_clouds.csv"));
    assert_eq!(clouds[0].join(","), "label,x,y,z");
    for label in ["spatial", "temporal-maximally-mixed", "temporal", "cube-mixture"] {
        assert_eq!(clouds.iter().filter(|r| r[0] == label).count(), 144, "{label}");
    }
}

#[test]
fn io_failure_exits_3() {
    let dir = TempDir::new("io");
    fs::write(dir.path("file"), "x").unwrap();
    let blocked = dir.path("file").join("sub").to_string_lossy().into_owned();
    assert_eq!(run(&["figures", "--figure", "1", "--resolution", "3", "-o", &blocked]).status.code(), Some(3));
    assert_eq!(run(&["sample", "--family", "spatial-dm", "--count", "3", "-o", &blocked]).status.code(), Some(3));
    let out = format!("{blocked}/r.json");
    assert_eq!(run(&["build", "--spatial", "singlet", "-o", &out]).status.code(), Some(3));
}

#[test]
fn help_documents_units_and_environment() {
    let o = run(&["--help"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("radians"));
    assert!(text.contains("STCORR_OUT_DIR"));
    let o = run(&["build", "--help"]);
    assert!(stdout(&o).contains("extremal u,v[,perm]"));
}
