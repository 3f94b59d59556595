use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use linf_spanner::delaunay::{triangulate, validate_triangulation};
use linf_spanner::geometry::Metric;
use linf_spanner::spanner::stretch_summary;
use linf_spanner_cli::{
    read_json, read_points, CertificateFile, PairReportFile, StretchReportFile, TriangulationFile,
};
use tempfile::TempDir;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linf-spanner"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = bin(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn p(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn chew_generation_reports_size_and_closed_form() {
    let dir = TempDir::new().unwrap();
    let f = p(&dir, "chew.json");
    let out = ok(&["gen", "--family", "chew", "--m", "12", "--out", s(&f)]);
    assert!(out.contains("points 22"), "{out}");
    assert!(out.contains("expected stretch"), "{out}");
    assert_eq!(read_points(&f).unwrap().len(), 22);
}

#[test]
fn random_generation_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (f1, f2) = (p(&dir, "a.json"), p(&dir, "b.json"));
    ok(&["gen", "--random", "10", "--seed", "1", "--out", s(&f1)]);
    ok(&["gen", "--random", "10", "--seed", "1", "--out", s(&f2)]);
    assert_eq!(fs::read(&f1).unwrap(), fs::read(&f2).unwrap());
    ok(&["gen", "--random", "10", "--seed", "2", "--out", s(&f2)]);
    assert_ne!(fs::read(&f1).unwrap(), fs::read(&f2).unwrap());
}

#[test]
fn bad_generator_flags_fail() {
    let dir = TempDir::new().unwrap();
    let f = p(&dir, "x.json");
    for args in [
        vec!["gen", "--family", "chew", "--m", "3", "--out", s(&f)],
        vec!["gen", "--out", s(&f)],
        vec!["gen", "--random", "5", "--dist", "bogus", "--out", s(&f)],
    ] {
        let out = bin(&args);
        assert!(!out.status.success(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert!(!f.exists());
}

#[test]
fn triangulation_file_validates_on_reload() {
    let dir = TempDir::new().unwrap();
    let pts = p(&dir, "pts.json");
    ok(&["gen", "--random", "30", "--seed", "4", "--dist", "clustered", "--out", s(&pts)]);
    for metric in ["linf", "l1"] {
        let tri = p(&dir, &format!("tri-{metric}.json"));
        let out = bin(&["triangulate", "--in", s(&pts), "--metric", metric, "--out", s(&tri)]);
        if !out.status.success() {
            // The rotated image of a random set can lose general position.
            assert_eq!(metric, "l1");
            assert_eq!(out.status.code(), Some(2));
            continue;
        }
        let file: TriangulationFile = read_json(&tri).unwrap();
        assert_eq!(file.schema_version, 1);
        let t = file.to_triangulation().unwrap();
        assert!(validate_triangulation(&t).is_empty());
        let direct = triangulate(&read_points(&pts).unwrap(), t.metric()).unwrap();
        assert_eq!(t.edge_pairs(), direct.edge_pairs());
    }
}

#[test]
fn general_position_violations_are_listed() {
    let dir = TempDir::new().unwrap();
    let pts = p(&dir, "bad.json");
    fs::write(&pts, r#"{"points": [[0,1,0,1], [0,1,1,1], [2,1,5,1]]}"#).unwrap();
    let out = bin(&["triangulate", "--in", s(&pts), "--out", s(&p(&dir, "t.json"))]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("general-position") && err.contains("shared-abscissa(0,1)"), "{err}");
}

#[test]
fn malformed_input_fails() {
    let dir = TempDir::new().unwrap();
    let pts = p(&dir, "bad.json");
    fs::write(&pts, r#"{"points": [[0,0,0,1], [1,1,2,1]]}"#).unwrap();
    let out = bin(&["triangulate", "--in", s(&pts), "--out", s(&p(&dir, "t.json"))]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("denominator"));
}

#[test]
fn svg_of_two_points_has_one_segment() {
    let dir = TempDir::new().unwrap();
    let pts = p(&dir, "two.json");
    let fig = p(&dir, "two.svg");
    fs::write(&pts, r#"{"points": [[0,1,0,1], [3,1,1,2]]}"#).unwrap();
    ok(&["svg", "--in", s(&pts), "--out", s(&fig)]);
    let text = fs::read_to_string(&fig).unwrap();
    assert!(text.contains(r#"version="1.1""#));
    assert_eq!(text.matches("<line ").count(), 1);
    assert_eq!(text.matches("<circle ").count(), 2);
}

/// gen, triangulate, analyze and route on the ladder family, checked against
/// the library and the closed form.
#[test]
fn chew_pipeline() {
    let dir = TempDir::new().unwrap();
    let pts = p(&dir, "chew.json");
    let tri = p(&dir, "tri.json");
    let rep = p(&dir, "report.json");
    let pair = p(&dir, "pair.json");
    let cert = p(&dir, "cert.json");
    let fig = p(&dir, "chew.svg");
    let out = ok(&["gen", "--family", "chew", "--m", "141", "--out", s(&pts)]);
    let expected: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("expected stretch "))
        .unwrap()
        .parse()
        .unwrap();
    ok(&["triangulate", "--in", s(&pts), "--out", s(&tri)]);
    ok(&["analyze", "--in", s(&pts), "--out", s(&rep)]);
    let report: StretchReportFile = read_json(&rep).unwrap();
    assert_eq!(report.schema_version, 1);
    assert!(report.bound_holds);
    assert!((report.max_ratio - expected).abs() < 1e-6, "{} vs {expected}", report.max_ratio);
    let lib = stretch_summary(&triangulate(&read_points(&pts).unwrap(), Metric::Linf).unwrap());
    assert_eq!(report.max_ratio, lib.max_ratio, "floats must round-trip exactly");
    assert_eq!(report.pairs.len(), 280 * 279 / 2);

    let set = read_points(&pts).unwrap();
    let a = (0..set.len()).find(|&i| set.label(i) == "a").unwrap().to_string();
    let b = (0..set.len()).find(|&i| set.label(i) == "b").unwrap().to_string();
    ok(&["analyze", "--in", s(&pts), "--pair", &a, &b, "--out", s(&pair)]);
    let pr: PairReportFile = read_json(&pair).unwrap();
    assert_eq!(pr.pair.ratio, report.max_ratio);

    ok(&["route", "--in", s(&pts), "--pair", &a, &b, "--out", s(&cert)]);
    let c: CertificateFile = read_json(&cert).unwrap();
    let t = TriangulationFile {
        input: c.input.clone(),
        ..read_json(&tri).unwrap()
    }
    .to_triangulation()
    .unwrap();
    c.certificate.validate(&t).unwrap();
    assert!(c.certificate.path.length <= c.certificate.bound);
    assert!(c.certificate.path.length >= pr.pair.graph_distance);

    let next = c.certificate.path.vertices[1].to_string();
    ok(&["svg", "--in", s(&pts), "--route", s(&cert), "--witness", &a, &next, "--out", s(&fig)]);
    let text = fs::read_to_string(&fig).unwrap();
    let total: f64 = text
        .split("data-length=\"")
        .skip(1)
        .map(|x| x.split('"').next().unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - c.certificate.path.length).abs() <= 1e-12 * total);
    assert!(text.contains(r#"class="witness""#));
}

#[test]
fn route_rejects_bad_pairs() {
    let dir = TempDir::new().unwrap();
    let pts = p(&dir, "pts.json");
    ok(&["gen", "--random", "8", "--seed", "3", "--out", s(&pts)]);
    for pair in [["1", "1"], ["0", "8"]] {
        let out = bin(&["route", "--in", s(&pts), "--pair", pair[0], pair[1], "--out", s(&p(&dir, "c.json"))]);
        assert!(!out.status.success());
    }
}
