use std::path::Path;
use std::process::{Command, Output};

use thicklink::curves::{link_to_json, DiscreteCurve, DiscreteLink};
use thicklink::hopf_links::lift_configuration;
use thicklink::s2_packing::antipodal_pair;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thicklink"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn circle(n: usize) -> DiscreteLink {
    let c = DiscreteCurve::from_fn_euclidean(n, |t| {
        [t.cos(), t.sin(), 0.0]
    })
    .unwrap();
    DiscreteLink::knot(c)
}

#[test]
fn thickness_of_unit_circle() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "circle.json", &link_to_json(&circle(64)).unwrap());
    let o = run(&["thickness", &f, "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert!((v["thickness"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    // the inscribed polygon is slightly shorter than 2π
    let rl = v["ropelength"].as_f64().unwrap();
    assert!((rl - std::f64::consts::TAU).abs() < 0.01, "{rl}");
    assert_eq!(v["metadata"]["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn thickness_of_hopf_link_file() {
    let dir = tempfile::tempdir().unwrap();
    let h = lift_configuration(&antipodal_pair(), 128).unwrap();
    let f = write(dir.path(), "hopf.json", &link_to_json(h.link()).unwrap());
    let o = run(&["thickness", &f, "--ambient", "s3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("attains Hopf bound"), "{}", stdout(&o));
    let o = run(&["thickness", &f, "--ambient", "r3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn short_and_malformed_curves_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let mut csv = String::from("component,x,y,z\n");
    for k in 0..7 {
        let t = k as f64;
        csv += &format!("0,{},{},0\n", t.cos(), t.sin());
    }
    let f = write(dir.path(), "seven.csv", &csv);
    let o = run(&["thickness", &f]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("at least 8"), "{}", stderr(&o));

    let f = write(dir.path(), "bad.csv", "component,x,y,z\n0,1,0,0\n0,1,zz,0\n");
    let o = run(&["thickness", &f]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 3, field y"), "{}", stderr(&o));

    assert_eq!(run(&["thickness", "/nonexistent/file.json"]).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(3));
}

#[test]
fn hopf_lift_from_points() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(dir.path(), "pts.json", "[[1,0,0],[-1,0,0]]");
    let out = dir.path().join("link.json");
    let o = run(&[
        "hopf-lift", "--points", &pts, "--samples", "64", "--curve-out", out.to_str().unwrap(), "--format", "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert!((v["closed_form"].as_f64().unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    assert!(out.exists());
}

#[test]
fn torus_knot_sweep_csv() {
    let o = run(&["torus-knot", "--m", "3", "--sweep", "--grid", "9", "--samples", "64", "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["a", "thickness"]);
    assert_eq!(rdr.records().count(), 9);
    assert!(text.contains("# a_star="));
    assert_eq!(run(&["torus-knot", "--m", "4"]).status.code(), Some(3));
}

#[test]
fn tammes_csv_table() {
    let o = run(&["tammes", "--n-max", "5", "--restarts", "2", "--iters", "800", "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["n", "r_hat", "rho_hat", "converged"]);
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 3);
    let r3: f64 = rows[0][1].parse().unwrap();
    assert!((r3 - std::f64::consts::FRAC_PI_3).abs() < 1e-4);

    let o = run(&["tammes", "--n", "4", "--format", "json"]);
    assert_eq!(json(&o)["points"].as_array().unwrap().len(), 4);
}

#[test]
fn lattice_commands() {
    let o = run(&["lattice", "verify", "--id", "sheared", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["metadata"]["certified"], true);
    assert!(!v["contacts"].as_array().unwrap().is_empty());

    let o = run(&["lattice", "density", "--id", "stacked", "--format", "json"]);
    assert!((json(&o)["analytic"].as_f64().unwrap() - 0.71228).abs() < 1e-5);

    let o = run(&["lattice", "mc", "--id", "stacked", "--samples", "20000", "--seed", "4", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["metadata"]["seed"], 4);
    assert!((v["monte_carlo"]["value"].as_f64().unwrap() - 0.7123).abs() < 0.03);

    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"basis": [[3.5,0,0],[2,3.4641016151377544,0],[0,0,2]],
                   "motif": [{"center": [0,0,0], "normal": [0,0,1], "radius": 1}],
                   "tube_radius": 1}"#;
    let f = write(dir.path(), "squeezed.json", spec);
    let o = run(&["lattice", "verify", "--spec", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("overlap"));
    let o = run(&["lattice", "density", "--spec", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("translate"), "{}", stderr(&o));
}

#[test]
fn revolved_profile_csv() {
    let o = run(&["revolved", "profile", "--rows", "5", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[0][1].starts_with("0.8950"));
    let o = run(&["revolved", "mc", "--samples", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn export_mesh_writes_obj() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("stacked.obj");
    let o = run(&["export-mesh", "--id", "stacked", "--block", "2", "--segments", "16", "--sides", "8", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("o ")).count(), 8);
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 8 * 16 * 8);

    let h = lift_configuration(&antipodal_pair(), 64).unwrap();
    let f = write(dir.path(), "hopf.json", &link_to_json(h.link()).unwrap());
    let out = dir.path().join("hopf.obj");
    let o = run(&["export-mesh", "--curve", &f, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().filter(|l| l.starts_with("o ")).count(), 2);

    assert_eq!(run(&["export-mesh", "--id", "stacked"]).status.code(), Some(3));
    let o = run(&["export-mesh", "--id", "stacked", "--out", "/nonexistent/dir/x.obj"]);
    assert_eq!(o.status.code(), Some(3));
}

fn non_mc_rows(v: &serde_json::Value) -> Vec<serde_json::Value> {
    v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| !r["tolerance"].as_str().unwrap().contains("@99%"))
        .cloned()
        .collect()
}

#[test]
fn paper_report_exit_codes() {
    let o = run(&["paper-report"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("overall: pass"));

    let a = run(&["paper-report", "--samples", "100", "--seed", "1", "--format", "json"]);
    assert_eq!(a.status.code(), Some(2));
    let va = json(&a);
    assert_eq!(va["status"], "inconclusive");
    let b = run(&["paper-report", "--samples", "100", "--seed", "2", "--format", "json"]);
    assert_eq!(non_mc_rows(&va), non_mc_rows(&json(&b)));
}
