use std::path::Path;
use std::process::{Command, Output};

fn sio(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sio")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn solve_example1() {
    let out = sio(&["solve", "--problem", "example1", "--m", "3", "--h", "0.1", "--steps", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("t,w,error,fp_iters,residual\n"));
    let rows = rows(&text);
    assert_eq!(rows.len(), 6);
    let err: f64 = rows[5][2].parse().unwrap();
    assert!(rel(err, 6.59e-8) < 0.01, "{err}");
}

#[test]
fn solve_example2_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ex2.csv");
    let out = sio(&["solve", "--problem", "example2", "--m", "3", "--h", "0.1", "--steps", "5", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let rows = rows(&std::fs::read_to_string(&path).unwrap());
    let err: f64 = rows[5][2].parse().unwrap();
    assert!(rel(err, 7.72e-5) < 0.01, "{err}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["solve", "--problem", "example1", "--m", "3", "--h", "0.1", "--steps", "0"][..],
        &["table", "--problem", "nosuch"],
        &["solve"],
        &["solve", "--problem", "example1", "--h", "0"],
        &["stability", "--res", "1"],
        &["stability", "--window", "1,-1,0,1"],
        &["stability", "--window", "1,2,3"],
        &["frobnicate"],
    ] {
        let out = sio(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn divergence_exits_3_with_partial_output() {
    let out = sio(&["solve", "--problem", "example2", "--steps", "12"]);
    assert_eq!(out.status.code(), Some(3));
    let rows = rows(&stdout(&out));
    assert!(rows.len() > 1 && rows.len() < 13);
    assert!(String::from_utf8_lossy(&out.stderr).contains("numerical failure"));
}

#[test]
fn nonconvergence_policy() {
    let base = ["solve", "--problem", "example1", "--max-fp-iters", "2"];
    assert_eq!(sio(&base).status.code(), Some(3));
    let mut cont = base.to_vec();
    cont.push("--continue-on-nonconvergence");
    let out = sio(&cont);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(rows(&stdout(&out)).len(), 6);
}

#[test]
fn table_rows_match_published_values() {
    let out = sio(&["table", "--problem", "example1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("t,y,error_t2,error_t4,error_sio\n"));
    let rows = rows(&text);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[2][0], "0.3");
    assert_eq!(&rows[2][2..], ["3.99e-4", "2.01e-7", "4.83e-8"]);

    let rows3 = self::rows(&stdout(&sio(&["table", "--problem", "example3"])));
    let sio_err: f64 = rows3[0][4].parse().unwrap();
    assert!(rel(sio_err, 1.12e-8) < 0.05, "{sio_err}");
}

#[test]
fn order_slopes() {
    for (m, target) in [("1", 2.0), ("3", 4.0)] {
        let out = sio(&["order", "--problem", "example1", "--m", m]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        assert!(text.starts_with("h,error_sio,error_t2,error_t4,slope_sio\n"));
        let rows = rows(&text);
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0][4], "");
        for r in &rows[1..] {
            let slope: f64 = r[4].parse().unwrap();
            assert!((slope - target).abs() <= 0.4, "m={m}: {slope}");
        }
    }
}

#[test]
fn stability_half_plane() {
    let out = sio(&["stability", "--m", "1", "--window", "-4,4,-4,4", "--res", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("re,im,amplification,stable01\n"));
    let rows = rows(&text);
    assert_eq!(rows.len(), 200 * 200);
    for r in rows {
        let re: f64 = r[0].parse().unwrap();
        assert_eq!(r[3] == "1", re < 0.0, "re = {re}");
    }
}

#[test]
fn stability_two_grids_report_containment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("region.csv");
    let out = sio(&["stability", "--m", "2", "--m", "7", "--res", "120", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("containment: sio_m7 holds 1.0000 of the sio_m2 region"), "{stderr}");
    for tag in ["sio_m2", "sio_m7"] {
        let file = dir.path().join(format!("region_{tag}.csv"));
        assert_eq!(std::fs::read_to_string(file).unwrap().lines().count(), 120 * 120 + 1);
    }
    assert!(!Path::new(&path).exists());

    let out = sio(&["stability", "--m", "2", "--taylor-p", "4", "--res", "10"]);
    let text = stdout(&out);
    assert!(text.starts_with("# sio_m2\n"));
    assert!(text.contains("\n# taylor_p4\n"));
}

#[test]
fn stability_svg() {
    let out = sio(&["stability", "--m", "2", "--m", "3", "--res", "40", "--format", "svg"]);
    assert_eq!(out.status.code(), Some(0));
    let svg = stdout(&out);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(r#"id="sio_m2""#) && svg.contains(r#"id="sio_m3""#));
}

#[test]
fn output_is_deterministic() {
    let args = ["stability", "--m", "3", "--taylor-p", "2", "--res", "30"];
    assert_eq!(sio(&args).stdout, sio(&args).stdout);
    let args = ["solve", "--problem", "example3", "--steps", "8"];
    assert_eq!(sio(&args).stdout, sio(&args).stdout);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "problem = \"example2\"\nm = 3\nh = 0.1\nsteps = 3\n").unwrap();
    let out = sio(&["solve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(rows(&stdout(&out)).len(), 4);
    let out = sio(&["solve", "--config", cfg.to_str().unwrap(), "--steps", "5"]);
    let rows = rows(&stdout(&out));
    assert_eq!(rows.len(), 6);
    let err: f64 = rows[5][2].parse().unwrap();
    assert!(rel(err, 7.72e-5) < 0.01);

    std::fs::write(&cfg, "nonsense = true\n").unwrap();
    assert_eq!(sio(&["solve", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn quadrature_integral_mode_matches_closed_form() {
    let a = rows(&stdout(&sio(&["solve", "--problem", "example1"])));
    let b = rows(&stdout(&sio(&["solve", "--problem", "example1", "--integral", "quadrature"])));
    for (x, y) in a.iter().zip(&b) {
        let (x, y): (f64, f64) = (x[1].parse().unwrap(), y[1].parse().unwrap());
        assert!((x - y).abs() <= 1e-13);
    }
}
