use std::path::Path;
use std::process::{Command, Output};

fn qmcmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmcmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_path(path).unwrap();
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn generate_writes_a_reproducible_net() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = qmcmap(&["generate", "--dim", "3", "--m", "5", "--scramble", "owen", "--seed", "11", "--out", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let ra = rows(&a);
    assert_eq!(ra, rows(&b));
    assert_eq!(ra[0], ["u1", "u2", "u3"]);
    assert_eq!(ra.len(), 33);
    for field in ra[1..].iter().flatten() {
        let x: f64 = field.parse().unwrap();
        assert!((0.0..1.0).contains(&x));
        // 17 significant digits
        assert_eq!(field.split('e').next().unwrap().chars().filter(char::is_ascii_digit).count(), 17);
    }
    let other = qmcmap(&["generate", "--dim", "3", "--m", "5", "--scramble", "owen", "--seed", "12"]);
    assert_ne!(stdout(&other).lines().nth(1), ra[1].join(",").as_str().into());
}

#[test]
fn transform_adds_a_weight_column_only_when_weighted() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("p.csv");
    let pts_s = pts.to_str().unwrap();
    assert!(qmcmap(&["generate", "--dim", "3", "--m", "4", "--scramble", "linear", "--out", pts_s]).status.success());

    let fw = qmcmap(&["transform", "--kind", "fw-ad", "--dim", "3", "--in", pts_s]);
    assert!(fw.status.success());
    let text = stdout(&fw);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x1,x2,x3"));
    for line in lines {
        let x: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        assert!(x[0] <= x[1] && x[1] <= x[2] && x[2] <= 1.0);
    }

    let pw = qmcmap(&["transform", "--kind", "simplex-power", "--a", "1.6,0.85,0.6", "--in", pts_s]);
    assert!(pw.status.success());
    assert!(stdout(&pw).starts_with("x1,x2,x3,weight\n"));

    let wrong = qmcmap(&["transform", "--kind", "fw-ud", "--dim", "3", "--in", pts_s]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn partials_report_terms_and_a_small_residual() {
    let o = qmcmap(&[
        "partials", "--kind", "fw-ad", "--dim", "3", "--v", "1,2,3", "--f", "exp:1:0.5,-1,2", "--at", "0.3,0.4,0.5",
        "--check-fd",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("terms = 57"), "{text}");
    let residual: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("residual = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual < 1e-6);
}

#[test]
fn variation_flags_divergence_with_exit_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let o = qmcmap(&[
        "variation", "--kind", "simplex-log", "--dim", "3", "--component", "1", "--face", "1,2", "--levels", "5",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let r = rows(&out);
    assert_eq!(r[0], ["v_mask", "level", "epsilon", "estimate", "verdict"]);
    assert_eq!(r.len(), 6);
    assert!(r[1..].iter().all(|row| row[0] == "3" && row[4] == "diverging"));

    let ok = qmcmap(&["variation", "--kind", "fw-ad", "--dim", "2", "--component", "1", "--face", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).lines().last().unwrap().ends_with("converged"));
}

#[test]
fn converge_writes_records_a_fit_row_and_a_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    let plot = dir.path().join("c.svg");
    let o = qmcmap(&[
        "converge", "--transform", "fw-ad", "--dim", "3", "--integrand", "monomial:1,0,2", "--nmin", "6", "--nmax",
        "10", "--reps", "8", "--seed", "3", "--out", out.to_str().unwrap(), "--plot", plot.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&out);
    assert_eq!(r[0], ["n", "rmse", "reps", "seed"]);
    assert_eq!(r.len(), 1 + 5 + 1);
    assert_eq!(r[1][0], "64");
    assert_eq!(r[5][0], "1024");
    let fit = &r[6];
    assert_eq!(fit[0], "fit");
    assert!(fit[1].parse::<f64>().unwrap() < -0.5);
    assert!(std::fs::read_to_string(&plot).unwrap().starts_with("<svg"));
}

#[test]
fn ess_prints_the_factor() {
    let o = qmcmap(&["ess", "--a", "1.5,0.75,0.5"]);
    let f: f64 = stdout(&o).trim().parse().unwrap();
    assert!((f - (8.0f64 / 9.0).powi(3)).abs() < 1e-12);
    let uniform = qmcmap(&["ess", "--d", "4", "--a", "1,0.5,0.3333333333333333,0.25"]);
    assert!(stdout(&uniform).trim().parse::<f64>().unwrap() > 0.999_999_999);
    let boundary = qmcmap(&["ess", "--d", "1", "--eta", "-1"]);
    assert_eq!(stdout(&boundary).trim(), "0");
    assert_eq!(boundary.status.code(), Some(2));
    let bad = qmcmap(&["ess", "--a", "0.4"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn list_names_every_registered_kind() {
    let text = stdout(&qmcmap(&["list"]));
    for name in ["owen", "linear", "mc", "fw-ad", "fw-ud-efficient", "simplex-power", "rosenblatt-fgm"] {
        assert!(text.contains(name), "{name}");
    }
    assert_eq!(qmcmap(&["transform", "--kind", "nope", "--in", "x.csv"]).status.code(), Some(1));
}
