use std::path::Path;
use std::process::{Command, Output};

fn rlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rlab")).args(args).env_remove("RLAB_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn first_value(o: &Output) -> f64 {
    stdout(o).split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn bessel_eval() {
    let o = rlab(&["bessel", "eval", "--nu", "0", "--r", "0"]);
    assert!(o.status.success());
    assert_eq!(first_value(&o), 1.0);

    let o = rlab(&["bessel", "eval", "--nu", "0.5", "--r", "3.14159265", "--method", "series"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(first_value(&o).abs() < 1e-8, "{out}");
    assert_eq!(out.split_whitespace().nth(1), Some("series"));

    let o = rlab(&["bessel", "eval", "--nu", "-1", "--r", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bessel_regime() {
    let o = rlab(&["bessel", "regime", "--nu", "100", "--r", "50"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "Exponential");
}

#[test]
fn exponents_print_json() {
    let o = rlab(&["exponents", "--n", "2", "--q", "4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 2);
}

const LIGHT: &str = "# quick run\nseed = 11\n[identities]\nmodes = 0, 1\npoints = 4\n[kernel]\nquadruples = 50\n";

fn run_identities(dir: &Path, threads: &str) -> Output {
    let cfg = dir.join("light.cfg");
    std::fs::write(&cfg, LIGHT).unwrap();
    rlab(&["experiment", "identities", "--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap(), "--threads", threads])
}

#[test]
fn identities_experiment_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_identities(dir.path(), "1");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("identities.csv")).unwrap();
    assert!(csv.lines().next().unwrap().starts_with('#'));
    assert!(csv.contains("seed=11"));
    assert!(csv.contains("config_hash="));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("identities.summary.json")).unwrap()).unwrap();
    assert_eq!(json["suite"], "identities");
    let leftovers: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().ends_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty());

    // thread count is not part of the output
    let other = tempfile::tempdir().unwrap();
    assert!(run_identities(other.path(), "2").status.success());
    let again = std::fs::read(other.path().join("identities.csv")).unwrap();
    assert_eq!(csv.as_bytes(), &again[..]);
}

#[test]
fn malformed_config_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "seed = 1\n\n[identities]\npoints = many\n").unwrap();
    let o = rlab(&["experiment", "identities", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4"), "{err}");
    assert!(!dir.path().join("identities.csv").exists());
}

fn extension(input: &Path, extra: &[&str]) -> Vec<(f64, f64)> {
    let mut args = vec!["extension", "eval", "--input", input.to_str().unwrap(), "--t", "0,0.5", "--r", "0,1,3", "--theta", "0,2"];
    args.extend_from_slice(extra);
    let o = rlab(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("t,r,theta,re,im"));
    lines
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[3], f[4])
        })
        .collect()
}

#[test]
fn extension_eval() {
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.txt");
    std::fs::write(&zero, "n = 2\nscale = 1\n").unwrap();
    let z = extension(&zero, &[]);
    assert_eq!(z.len(), 12);
    assert!(z.iter().all(|&(re, im)| re == 0.0 && im == 0.0));

    let g = dir.path().join("g.txt");
    std::fs::write(&g, "n = 3\nscale = 1\nmode k=0 l=1 center=1.5 width=0.4 amp=1,0\nmode k=2 l=3 center=1.4 width=0.3 amp=0.5,-0.2\n").unwrap();
    let modal = extension(&g, &["--method", "modal"]);
    let direct = extension(&g, &["--method", "direct"]);
    for (a, b) in modal.iter().zip(&direct) {
        assert!((a.0 - b.0).abs() < 1e-8 && (a.1 - b.1).abs() < 1e-8, "{a:?} vs {b:?}");
    }

    // g(ξ/M) written out by hand for M = 2
    let scaled = dir.path().join("scaled.txt");
    std::fs::write(&scaled, "n = 3\nscale = 2\nmode k=0 l=1 center=1.5 width=0.4 amp=1,0\nmode k=2 l=3 center=1.4 width=0.3 amp=0.5,-0.2\n").unwrap();
    let flag = extension(&g, &["--rescale-M", "2"]);
    let by_hand = extension(&scaled, &[]);
    assert_eq!(flag, by_hand);
    assert_ne!(flag, modal);
}
