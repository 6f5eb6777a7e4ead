//! End-to-end tests of the `ward` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use ward_cli::serial::SurfaceFile;

fn ward(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ward")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn build_writes_valid_surfaces() {
    let dir = tempfile::tempdir().unwrap();
    for (n, polys, genus) in [("3", 3, 1), ("4", 3, 3), ("5", 3, 4)] {
        let o = ward(&["build", "--n", n, "--out", "s.json"], dir.path());
        assert!(o.status.success(), "{o:?}");
        let v = read_json(&dir.path().join("s.json"));
        assert_eq!(v["format"], "ward-surface");
        assert_eq!(v["polygons"].as_array().unwrap().len(), polys);
        assert_eq!(v["derived"]["genus"], genus, "n={n}");
    }
}

#[test]
fn surface_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["build", "--n", "6", "--out", "a.json"][..], &["build", "--torus", "--out", "a.json"]] {
        assert!(ward(args, dir.path()).status.success());
        let text = std::fs::read_to_string(dir.path().join("a.json")).unwrap();
        let s = SurfaceFile::from_json(&text).unwrap().to_surface().unwrap();
        assert_eq!(SurfaceFile::from_surface(&s).to_json(), text);
        // building twice gives the same bytes
        assert!(ward(args, dir.path()).status.success());
        assert_eq!(std::fs::read_to_string(dir.path().join("a.json")).unwrap(), text);
    }
}

#[test]
fn decompose_reports_cylinders() {
    let dir = tempfile::tempdir().unwrap();
    assert!(ward(&["build", "--n", "4", "--out", "s4.json"], dir.path()).status.success());
    let o = ward(&["decompose", "--surface", "s4.json", "--out", "d.json", "--svg", "d.svg"], dir.path());
    assert!(o.status.success(), "{o:?}");
    let v = read_json(&dir.path().join("d.json"));
    assert_eq!(v["cylinder_count"], 3);
    for c in v["cylinders"].as_array().unwrap() {
        assert_eq!(c["modulus"]["approx"], "3.414213562 (approx)");
    }
    let svg = std::fs::read_to_string(dir.path().join("d.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("fill-opacity"));

    let o = ward(&["decompose", "--n", "6", "--out", "d6.json"], dir.path());
    assert!(o.status.success());
    assert_eq!(read_json(&dir.path().join("d6.json"))["cylinder_count"], 5);

    let o = ward(&["decompose", "--torus", "--out", "dt.json"], dir.path());
    assert!(o.status.success());
    let v = read_json(&dir.path().join("dt.json"));
    assert_eq!(v["cylinder_count"], 1);
    assert_eq!(v["cylinders"][0]["modulus"]["approx"], "1 (approx)");

    let o = ward(&["decompose", "--n", "5", "--direction", "rot 1"], dir.path());
    assert!(stdout(&o).contains("4 cylinders"), "{}", stdout(&o));
}

#[test]
fn svg_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["decompose", "--n", "5", "--direction", "vertical", "--svg", "a.svg"][..],
        &["search", "--n", "4", "--denominator-bound", "3", "--svg", "a.svg"],
    ] {
        assert!(ward(args, dir.path()).status.success());
        let first = std::fs::read(dir.path().join("a.svg")).unwrap();
        assert!(ward(args, dir.path()).status.success());
        assert_eq!(std::fs::read(dir.path().join("a.svg")).unwrap(), first);
    }
}

#[test]
fn search_counts_periodic_points() {
    let dir = tempfile::tempdir().unwrap();
    for (n, total, centers) in [("4", 4, 3), ("6", 6, 3), ("8", 4, 3)] {
        let o = ward(&["search", "--n", n, "--out", "r.json", "--svg", "r.svg"], dir.path());
        assert!(o.status.success(), "{o:?}");
        let v = read_json(&dir.path().join("r.json"));
        assert_eq!(v["table"]["total"], total, "n={n}");
        assert_eq!(v["table"]["centers"], centers, "n={n}");
        assert_eq!(v["parameters"]["denominator_bound"], 8);
        assert!(v["inconclusive"].as_array().unwrap().is_empty());
        assert!(!v["witness_sample"].as_array().unwrap().is_empty());
        assert!(stdout(&o).contains("#singularities"));
    }
}

#[test]
fn orbit_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let o = ward(&["orbit", "--n", "4", "--point", "0: 0, 0"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("verdict: finite (visited 3)"), "{}", stdout(&o));

    let o = ward(&["orbit", "--n", "4", "--point", "0: 1/3, 1/3", "--out", "o.json"], dir.path());
    assert!(o.status.success());
    let v = read_json(&dir.path().join("o.json"));
    assert_eq!(v["verdict"], "infinite");
    assert!(v["witness"]["word"].is_string());

    let o = ward(&["orbit", "--torus", "--point", "1/2, 1/2"], dir.path());
    assert!(stdout(&o).starts_with("verdict: finite"), "{}", stdout(&o));

    let o = ward(&["orbit", "--n", "5", "--point", "0: 0, sin(1/5 pi)/2", "--word", "psi^-1*phi"], dir.path());
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).contains("ψ⁻¹·φ maps the point"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| ward(args, dir.path()).status.code();
    assert_eq!(code(&["search", "--n", "2"]), Some(2));
    assert_eq!(code(&["decompose", "--n", "4", "--direction", "sideways"]), Some(2));
    assert_eq!(code(&["orbit", "--n", "4", "--point", "0: cos(, 1"]), Some(2));
    assert_eq!(code(&["orbit", "--n", "4", "--point", "0: 9, 9"]), Some(2));
    assert_eq!(code(&["search", "--torus"]), Some(2));
    assert_eq!(code(&["bogus"]), Some(2));
    std::fs::write(dir.path().join("bad.json"), "{}").unwrap();
    assert_eq!(code(&["decompose", "--surface", "bad.json"]), Some(2));
    assert_eq!(code(&["decompose", "--surface", "missing.json"]), Some(4));
    assert_eq!(code(&["build", "--n", "4", "--out", "no/such/dir/s.json"]), Some(4));
    assert_eq!(code(&["search", "--n", "4", "--cap", "2"]), Some(3));
}

#[test]
fn selftest_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = ward(&["selftest", "--seed", "7", "--cases", "8"], dir.path());
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).contains("selftest passed"));
}
