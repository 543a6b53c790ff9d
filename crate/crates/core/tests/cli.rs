use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jgconv::cli::report::{from_json, AnalyzeReport, SolveReport};
use jgconv::experiments::Table1Report;
use jgconv::solvers::TraceStatus;
use jgconv::stability::Status;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn jgconv<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_jgconv")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_example_two_all_backends() {
    let o = jgconv([Path::new("analyze").as_os_str(), data("example2.json").as_os_str()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: AnalyzeReport = from_json(&stdout(&o)).unwrap();
    assert_eq!(r.methods[0].status, Status::Converges);
    assert_eq!(r.methods[1].status, Status::Diverges);
    assert!(r.methods.iter().all(|m| m.verdicts.len() == 3 && m.agreement));
}

#[test]
fn delimited_and_json_inputs_agree() {
    let a = jgconv([Path::new("analyze").as_os_str(), data("example2.json").as_os_str()]);
    let b = jgconv([Path::new("analyze").as_os_str(), data("example2.txt").as_os_str()]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn analyze_example_one_text() {
    let path = data("example1.json");
    let o = jgconv(["analyze", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("band intercepts: -1, 2"), "{text}");
    assert!(text.contains("jacobi: converges") && text.contains("gauss-seidel: converges"));
}

#[test]
fn analyze_identity_and_region_backend() {
    let dir = tempfile::tempdir().unwrap();
    let id = dir.path().join("id.txt");
    std::fs::write(&id, "1 0 0\n0 1 0\n0 0 1\n").unwrap();
    let o = jgconv(["analyze", id.to_str().unwrap()]);
    let r: AnalyzeReport = from_json(&stdout(&o)).unwrap();
    assert!(r.methods.iter().all(|m| m.status == Status::Converges && m.spectral_radius == Some(0.0)));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 2, "entries": [[1, 2], [2, 1]]}"#).unwrap();
    let o = jgconv(["analyze", bad.to_str().unwrap(), "--backend", "region"]);
    assert_eq!(o.status.code(), Some(0));
    let r: AnalyzeReport = from_json(&stdout(&o)).unwrap();
    assert!(r.methods.iter().all(|m| m.status == Status::Diverges));
}

#[test]
fn input_errors_exit_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.txt");
    std::fs::write(&p, "1 2\n3 oops\n").unwrap();
    let o = jgconv(["analyze", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 3"), "{}", stderr(&o));

    let p = dir.path().join("zero.txt");
    std::fs::write(&p, "1 2\n3 0\n").unwrap();
    let o = jgconv(["analyze", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("diagonal"), "{}", stderr(&o));

    let o = jgconv(["analyze", "/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = jgconv(["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_exit_codes() {
    let ex2 = data("example2.json");
    let o = jgconv(["solve", ex2.to_str().unwrap(), "--method", "gauss-seidel"]);
    assert_eq!(o.status.code(), Some(3));
    let r: SolveReport = from_json(&stdout(&o)).unwrap();
    assert_eq!(r.trace.status, TraceStatus::Diverged);

    let o = jgconv(["solve", ex2.to_str().unwrap(), "--method", "jacobi"]);
    assert_eq!(o.status.code(), Some(0));
    let r: SolveReport = from_json(&stdout(&o)).unwrap();
    let x = r.trace.solution.unwrap();
    assert!(x.iter().all(|z| (z.re - 1.0).abs() < 1e-8 && z.im == 0.0));

    let o = jgconv(["solve", ex2.to_str().unwrap(), "--max-iter", "3"]);
    assert_eq!(o.status.code(), Some(4));

    let o = jgconv(["solve", ex2.to_str().unwrap(), "--x0", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_small_systems() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("two.txt");
    std::fs::write(&p, "2 1 3\n1 2 3\n").unwrap();
    let o = jgconv(["solve", p.to_str().unwrap(), "--x0", "-5,5"]);
    assert_eq!(o.status.code(), Some(0));
    let r: SolveReport = from_json(&stdout(&o)).unwrap();
    assert!(r.trace.solution.unwrap().iter().all(|z| (z.re - 1.0).abs() < 1e-9));

    let p = dir.path().join("id.json");
    std::fs::write(&p, r#"{"n": 2, "entries": [1, 0, 0, 1], "rhs": [[1, 1], 2]}"#).unwrap();
    let o = jgconv(["solve", p.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("after 1 iterations"), "{}", stdout(&o));

    let p = dir.path().join("norhs.txt");
    std::fs::write(&p, "1 0\n0 1\n").unwrap();
    let o = jgconv(["solve", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn region_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("plots");
    let o = jgconv([
        "region", "--target", "gs3", "--a", "-192", "--b", "144", "--grid", "4", "--phi1", "0.5", "--out",
    ]
    .iter()
    .map(|s| s.to_string())
    .chain([out.to_str().unwrap().to_string()]));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let grid = std::fs::read_to_string(out.join("gs3_grid.csv")).unwrap();
    assert_eq!(grid.lines().count(), 1 + 16);
    let boundary = std::fs::read_to_string(out.join("gs3_boundary.csv")).unwrap();
    assert!(boundary.contains("gs_upper"));
    assert!(out.join("gs3_complex.csv").exists());

    let o = jgconv(["region", "--target", "jacobi3", "--grid", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let grid_rows = text.split("# jacobi3 grid\n").nth(1).unwrap().lines().skip(1).count();
    assert_eq!(grid_rows, 9);

    let o = jgconv(["region", "--target", "gs3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn montecarlo_counts_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let o = jgconv([
        "montecarlo",
        "--trials",
        "10",
        "--n-range",
        "2..5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("jacobi_only"));
    let r: Table1Report = from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.per_n.len(), 4);
    assert!(r.per_n.values().all(|o| o.counts.total() == 10));

    let text = dir.path().join("table.txt");
    let o = jgconv([
        "montecarlo",
        "--trials",
        "10",
        "--n-range",
        "3",
        "--format",
        "text",
        "--out",
        text.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&text).unwrap(), stdout(&o));

    let o = jgconv(["montecarlo", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = jgconv(["montecarlo", "--n-range", "1..3"]);
    assert_eq!(o.status.code(), Some(2));
}
