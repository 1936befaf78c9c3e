use std::path::Path;
use std::process::{Command, Output};

fn deformd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deformd")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a CSV document as `column → values`.
fn csv_column(text: &str, name: &str) -> Vec<f64> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(i).unwrap().parse().unwrap()).collect()
}

fn note(text: &str, key: &str) -> String {
    let prefix = format!("# {key}: ");
    text.lines().find_map(|l| l.strip_prefix(&prefix)).unwrap_or_else(|| panic!("no note `{key}`")).to_string()
}

#[test]
fn bessel_zero_of_sinc() {
    let o = deformd(&["bessel", "--n", "3", "--r", "3.14159265"]);
    assert!(o.status.success());
    let phi = csv_column(&stdout(&o), "phi");
    assert_eq!(phi.len(), 1);
    assert!(phi[0].abs() < 1e-8, "{}", phi[0]);
}

#[test]
fn csv_header_lines() {
    let o = deformd(&["bessel", "--n", "4", "--r", "1.5", "--seed", "9"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# deformd bessel");
    assert_eq!(lines[1], "# params: n=4 r=1.5");
    assert_eq!(lines[2], "# seed: 9");
    assert!(text.contains("\nn,r,phi,psi,dphi,ode_residual,recursion_residual\n"));
}

#[test]
fn curvature_on_the_sphere() {
    let o = deformd(&["curvature", "--chart", "sphere", "--h", "0.1"]);
    assert!(o.status.success());
    let k = csv_column(&stdout(&o), "r2d2")[0];
    assert!((k - 0.9975).abs() < 3e-3, "{k}");
    let hyp = deformd(&["curvature", "--chart", "hyperbolic", "--h", "0.1"]);
    let k = csv_column(&stdout(&hyp), "r2d2")[0];
    assert!((k + 1.0025).abs() < 3e-3, "{k}");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["pizzetti", "--cases", "12", "--seed", "5"][..],
        &["spectral", "--report", "symmetry", "--q", "2", "--max-freq", "1"][..],
        &["front", "--chart", "sphere", "--t", "0.5", "--n-theta", "16"][..],
    ] {
        let (a, b) = (deformd(args), deformd(args));
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = deformd(&["pizzetti", "--cases", "12", "--seed", "5"]);
    let c = deformd(&["pizzetti", "--cases", "12", "--seed", "6"]);
    assert!(stdout(&c).contains("# seed: 6"));
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(deformd(&["--help"]).status.code(), Some(0));
    assert_eq!(deformd(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(deformd(&["bessel", "--n", "0"]).status.code(), Some(2));
    assert_eq!(deformd(&["polarize", "--exponents", "7,7"]).status.code(), Some(2));
    let bad_chart = deformd(&["curvature", "--chart", "saddle"]);
    assert_eq!(bad_chart.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_chart.stderr).contains("saddle"));

    // an unreachable tolerance turns the symmetry table into a failure
    let o = deformd(&["spectral", "--report", "symmetry", "--q", "2", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    let failure: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(!failure["cases"].as_array().unwrap().is_empty());
    assert!(failure["cases"].as_array().unwrap().iter().all(|c| c["status"] == "fail"));
}

#[test]
fn quick_suite_passes() {
    let o = deformd(&["verify-all", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["suite"], "verify-all");
    let cases = report["cases"].as_array().unwrap();
    assert!(cases.len() >= 20);
    for c in cases {
        assert_eq!(c["status"], "pass", "{c}");
        assert!(c["measured"].is_number() && c["bound"].is_number());
    }
}

#[test]
fn config_file_fills_unset_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"subcommand": "bessel", "n": 5, "r": 2.0}"#).unwrap();
    let cfg = cfg.to_str().unwrap();
    let o = deformd(&["bessel", "--config", cfg]);
    assert!(o.status.success());
    let phi = csv_column(&stdout(&o), "phi")[0];
    let want = 3.0 * (2f64.sin() - 2.0 * 2f64.cos()) / 8.0;
    assert!((phi - want).abs() < 1e-12, "{phi} vs {want}");
    // the command line wins
    let o = deformd(&["bessel", "--config", cfg, "--n", "3"]);
    assert!((csv_column(&stdout(&o), "phi")[0] - 2f64.sin() / 2.0).abs() < 1e-12);
    // wrong subcommand and unknown keys are usage errors
    assert_eq!(deformd(&["wave", "--config", cfg]).status.code(), Some(2));
    let typo = dir.path().join("typo.json");
    std::fs::write(&typo, r#"{"nn": 5}"#).unwrap();
    assert_eq!(deformd(&["bessel", "--config", typo.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn json_tables() {
    let o = deformd(&["bessel", "--n", "2", "--r", "0.5", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["subcommand"], "bessel");
    assert_eq!(doc["seed"], 42);
    assert_eq!(doc["columns"][2], "phi");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 1);
}

#[test]
fn simplicial_ingest_and_spectra_export() {
    let dir = tempfile::tempdir().unwrap();
    let complex = dir.path().join("square.json");
    // boundary of a square: a circle, Betti (1, 1)
    std::fs::write(
        &complex,
        r#"{"simplices": [[0], [1], [2], [3], [0, 1], [1, 2], [2, 3], [0, 3]]}"#,
    )
    .unwrap();
    let spectra = dir.path().join("spectra.json");
    let o = deformd(&[
        "spectral",
        "--domain",
        "simplicial",
        "--complex",
        complex.to_str().unwrap(),
        "--spectra-out",
        spectra.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(csv_column(&stdout(&o), "classical"), vec![1.0, 1.0]);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&spectra).unwrap()).unwrap();
    let degrees = doc.as_array().unwrap();
    assert_eq!(degrees.len(), 2);
    // cycle graph C4: Laplacian spectrum {0, 2, 2, 4}
    let mut ev: Vec<f64> = degrees[0]["eigenvalues"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    ev.sort_by(f64::total_cmp);
    for (a, b) in ev.iter().zip([0.0, 2.0, 2.0, 4.0]) {
        assert!((a - b).abs() < 1e-10, "{ev:?}");
    }

    let open = dir.path().join("open.json");
    std::fs::write(&open, r#"{"simplices": [[0], [0, 1]]}"#).unwrap();
    let o = deformd(&["spectral", "--domain", "simplicial", "--complex", open.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn plot_written_next_to_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("profile.csv");
    let o = deformd(&["bessel", "--n", "3", "--points", "40", "--plot", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(csv_column(&std::fs::read_to_string(&out).unwrap(), "r").len(), 40);
    let svg = std::fs::read_to_string(dir.path().join("profile.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.contains("</svg>"));
    assert!(Path::new(&dir.path().join("profile.svg")).exists());
}

#[test]
fn custom_chart_from_json() {
    let dir = tempfile::tempdir().unwrap();
    let chart = dir.path().join("round.json");
    std::fs::write(
        &chart,
        r#"{"name": "round", "g11": "4 / (1 + x^2 + y^2)^2", "g22": "4 / (1 + x^2 + y^2)^2",
            "rect": [-5, 5, -5, 5], "center": [0, 0]}"#,
    )
    .unwrap();
    let o = deformd(&["curvature", "--chart", chart.to_str().unwrap(), "--h", "0.1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let k = csv_column(&stdout(&o), "r2d2")[0];
    assert!((k - 0.9975).abs() < 3e-3, "{k}");

    let o = deformd(&["front", "--chart", chart.to_str().unwrap(), "--t", "0.5", "--n-theta", "64"]);
    let length: f64 = note(&stdout(&o), "length").parse().unwrap();
    assert!((length - 2.0 * std::f64::consts::PI * 0.5f64.sin()).abs() < 1e-5, "{length}");
}

#[test]
fn front_line_integral_and_global_average() {
    // ∮ −y dx + x dy over a circle of radius t is 2π t²
    let o = deformd(&["front", "--chart", "flat", "--t", "0.5", "--form", "-y; x"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let integral: f64 = note(&text, "line integral").parse().unwrap();
    assert!((integral - 2.0 * std::f64::consts::PI * 0.25).abs() < 1e-9, "{integral}");
    let o = deformd(&["front", "--chart", "flat-torus", "--t", "0.2", "--form", "0; sin(2*pi*x)", "--centers", "256"]);
    let avg: f64 = note(&stdout(&o), "global average").parse().unwrap();
    assert!(avg.abs() < 1e-6, "{avg}");
}

#[test]
fn probe_and_wave_tables() {
    let o = deformd(&["huygens-probe", "--max-freq", "32", "--sigma", "0.04", "--width", "0.1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let ratio: f64 = note(&text, "leakage ratio").parse().unwrap();
    assert!(ratio >= 10.0, "{ratio}");
    let o = deformd(&["wave", "--dim", "1", "--max-freq", "2", "--q", "3", "--t-max", "1", "--points", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for r in csv_column(&stdout(&o), "velocity_residual") {
        assert!(r < 1e-6, "{r}");
    }
}

#[test]
fn polarize_table() {
    let o = deformd(&["polarize", "--exponents", "1,1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(note(&text, "verified"), "true");
    assert_eq!(note(&text, "power"), "2");
}
