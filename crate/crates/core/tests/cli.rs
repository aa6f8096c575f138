use std::path::PathBuf;
use std::process::{Command, Output};

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    qwalk(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    let out = qwalk(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qwalk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["lorentz", "orbit", "--help"]), 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["teleport"]), 2);
    assert_eq!(code(&["evolve", "--stepz", "3"]), 2);
    assert_eq!(code(&["verify", "--walk", "dirac3d", "--mass", "1.5"]), 2);
    assert_eq!(code(&["verify", "--walk", "weyl7d"]), 2);
    assert_eq!(code(&["verify", "--walk", "weyl3d+", "--kernel", "x.json"]), 2);
    assert_eq!(code(&["evolve", "--config", "/nonexistent/qwalk.conf"]), 2);
}

#[test]
fn verify_passes_named_walks_and_rejects_tampered_kernels() {
    assert_eq!(code(&["verify", "--walk", "weyl3d-", "--samples", "500"]), 0);
    assert_eq!(code(&["verify", "--walk", "dirac1d", "--mass", "-0.3", "--samples", "500"]), 0);
    assert_eq!(code(&["verify", "--kernel", &fixture("weyl3d_plus_kernel.json"), "--samples", "500"]), 0);
    assert_eq!(code(&["verify", "--kernel", &fixture("weyl3d_plus_tampered.json"), "--samples", "500"]), 1);
}

#[test]
fn numerical_failures_exit_one() {
    assert_eq!(code(&["lorentz", "boost", "--k", "1.5,1.2,1.0", "--beta", "0.99,0,0"]), 1);
    let args = ["evolve", "--walk", "dirac1d", "--mass", "0.4", "--grid", "512", "--steps", "50"];
    let mut strict = args.to_vec();
    strict.extend(["--compare", "continuum", "--max-l1", "1e-9"]);
    assert_eq!(code(&strict), 1);
    let mut loose = args.to_vec();
    loose.extend(["--compare", "continuum", "--max-l1", "0.5"]);
    assert_eq!(code(&loose), 0);
}

#[test]
fn csv_outputs_have_header_comment_and_consistent_rows() {
    for args in [
        vec!["dispersion", "--walk", "weyl2d+", "--grid", "8"],
        vec!["dispersion", "--walk", "weyl3d+", "--grid", "6", "--slice-z", "0.2"],
        vec!["evolve", "--walk", "dirac1d", "--mass", "0.4", "--grid", "512", "--steps", "20", "--compare", "schrodinger"],
        vec!["lorentz", "orbit", "--k", "0.3,0,0", "--rotation", "z", "--samples", "36"],
        vec!["maxwell", "dispersion", "--samples", "5"],
        vec!["maxwell", "speed", "--samples", "4"],
    ] {
        let text = stdout(&args);
        let mut lines = text.lines();
        let first = lines.next().unwrap();
        assert!(first.starts_with("# qwalk "), "{first}");
        assert!(first.contains("config: {"));
        let width = lines.next().unwrap().split(',').count();
        let rows: Vec<&str> = lines.collect();
        assert!(!rows.is_empty());
        for r in rows {
            assert_eq!(r.split(',').count(), width, "{args:?}: {r}");
        }
    }
}

#[test]
fn rotation_orbit_has_one_row_per_sample() {
    let text = stdout(&["lorentz", "orbit", "--k", "0.3,0,0", "--rotation", "z", "--samples", "360"]);
    assert_eq!(text.lines().count(), 2 + 360);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["dispersion", "--walk", "dirac3d", "--mass", "0.3", "--grid", "6"],
        vec!["cayley", "reduce", "--coset", "index4", "--entries", "a=0.5,b=0.5i", "--seed", "7"],
        vec!["verify", "--walk", "weyl2d-", "--samples", "300", "--seed", "3"],
        vec!["cayley", "ball", "--presentation", "<a,b|a4,b4,(ab)2>", "--radius", "3", "--format", "dot"],
    ] {
        assert_eq!(qwalk(&args).stdout, qwalk(&args).stdout, "{args:?}");
    }
}

#[test]
fn config_file_applies_and_flags_win() {
    let conf = fixture("evolve.conf");
    let from_file = stdout(&["evolve", "--config", &conf, "--steps", "10"]);
    let header = from_file.lines().next().unwrap();
    assert!(header.contains("\"steps\":10"), "{header}");
    assert!(header.contains("\"mass\":0.4"), "{header}");
    assert!(header.contains("\"compare\":\"schrodinger\""), "{header}");
    let explicit = stdout(&[
        "evolve", "--walk", "dirac1d", "--mass", "0.4", "--k0", "0.1", "--sigma", "20", "--steps", "10", "--grid",
        "1024", "--compare", "schrodinger",
    ]);
    let body = |s: &str| s.lines().skip(1).map(str::to_owned).collect::<Vec<_>>();
    assert_eq!(body(&from_file), body(&explicit));
}

#[test]
fn out_flag_writes_files() {
    let path = tmp("units.json");
    let p = path.display().to_string();
    assert_eq!(code(&["units", "--anchor", "time=5.391e-44", "--out", &p]), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!((v["time"].as_f64().unwrap() - 5.391e-44).abs() < 1e-56);
}

#[test]
fn evolve_side_outputs() {
    let (report, profiles) = (tmp("report.json"), tmp("profiles.csv"));
    let out = stdout(&[
        "evolve", "--walk", "dirac1d", "--mass", "0.4", "--grid", "512", "--sigma", "10", "--steps", "40", "--compare",
        "schrodinger", "--snapshots", "2", "--report", &report.display().to_string(), "--profiles",
        &profiles.display().to_string(),
    ]);
    assert!(out.lines().count() > 3);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(v["final"]["fidelity"].as_f64().unwrap() > 0.99);
    let prof = std::fs::read_to_string(&profiles).unwrap();
    assert_eq!(prof.lines().nth(1).unwrap(), "step,x,p_walk,p_reference");
    assert_eq!(prof.lines().count(), 2 + 2 * 512);
}

#[test]
fn cayley_ball_json_counts() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["cayley", "ball", "--presentation", "<a,b|abAB>", "--radius", "3", "--check"]))
            .unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 25);
    assert_eq!(v["homogeneity"]["h2"]["pass"], true);
    assert_eq!(code(&["cayley", "ball", "--presentation", "<a,b|abAB>", "--radius", "9"]), 2);
    assert_eq!(code(&["cayley", "ball", "--presentation", "<a,b|abXB>"]), 2);
}

#[test]
fn cayley_reduce_accepts_coset_files() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "cayley", "reduce", "--coset", &fixture("p4_coset.json"), "--entries", "a=0.6,A=-0.8i",
    ]))
    .unwrap();
    assert_eq!(v["index"], 4);
    assert!(v["direct_residual"].as_f64().unwrap() < 1e-12);
}
