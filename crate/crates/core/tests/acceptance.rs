//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use jgconv::analysis::{roots_verdict, region_verdict, verdict, Method};
use jgconv::charpoly::{roots, spectral_radius, Polynomial};
use jgconv::experiments::{run_table1, ClassOutcome, Table1Report};
use jgconv::linalg::{Matrix, Scalar, Slae};
use jgconv::regions::{
    boundary1_q_from_roots, boundary1_sample, boundary2_sample, gs3_band, gs3_params,
    gs_complex_boundary_sample, jacobi3_params, jacobi3_real_converges, JacobiCubicParams,
};
use jgconv::solvers::{gauss_seidel_solve, jacobi_solve, TraceStatus};
use jgconv::stability::{unit_disk_test, Route, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE_SEED: u64 = 1;
const TABLE_TRIALS: u64 = 100_000;
const BAND: f64 = 1e-6;

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn outcome(name: &'static str, failures: Vec<String>, summary: String) -> Outcome {
    let passed = failures.is_empty();
    let detail = if passed {
        summary
    } else {
        format!("{summary}; {}", failures.join("; "))
    };
    Outcome {
        name,
        passed,
        detail,
    }
}

fn proportion(r: &Table1Report, n: usize, class: ClassOutcome) -> f64 {
    r.per_n[&n].counts.get(class) as f64 / r.trials as f64
}

fn check_row(r: &Table1Report, n: usize, expected: [f64; 3], tol: f64) -> (Vec<String>, String) {
    let classes = [ClassOutcome::Both, ClassOutcome::GsOnly, ClassOutcome::JacobiOnly];
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    for (class, want) in classes.into_iter().zip(expected) {
        let got = proportion(r, n, class);
        seen.push(format!("{class:?} {got:.4}"));
        if (got - want).abs() > tol {
            failures.push(format!("{class:?} {got:.4} vs {want} ± {tol}"));
        }
    }
    (failures, seen.join(", "))
}

fn table1(report: &Table1Report, elapsed_n2: Duration) -> Vec<Outcome> {
    let mut out = Vec::new();

    let c = report.per_n[&2].counts;
    let both = proportion(report, 2, ClassOutcome::Both);
    let mut failures = Vec::new();
    if c.gs_only != 0 || c.jacobi_only != 0 {
        failures.push(format!("exclusive counts {} / {}", c.gs_only, c.jacobi_only));
    }
    if (both - 0.5).abs() > 0.005 {
        failures.push(format!("Both {both:.4} vs 0.500 ± 0.005"));
    }
    if elapsed_n2 > Duration::from_secs(60) {
        failures.push(format!("runtime {elapsed_n2:?} over one minute"));
    }
    out.push(outcome(
        "Monte Carlo proportions, n=2",
        failures,
        format!(
            "GsOnly {} JacobiOnly {} Both {both:.4} in {:.1?}",
            c.gs_only, c.jacobi_only, elapsed_n2
        ),
    ));

    let rows: [(&'static str, usize, [f64; 3], f64); 3] = [
        ("Monte Carlo proportions, n=3", 3, [0.1182, 0.0752, 0.0110], 0.005),
        ("Monte Carlo proportions, n=4", 4, [0.0144, 0.0341, 0.0053], 0.005),
        ("Monte Carlo proportions, n=5", 5, [0.0011, 0.0073, 0.0008], 0.003),
    ];
    for (name, n, expected, tol) in rows {
        let (failures, summary) = check_row(report, n, expected, tol);
        out.push(outcome(name, failures, summary));
    }
    out
}

fn example_two() -> Outcome {
    let a = Matrix::from_real_rows(&[[-8.0, 6.0, -4.0], [-9.0, 8.0, 6.0], [4.0, -5.0, 3.0]]).unwrap();
    let mut failures = Vec::new();
    let close = |x: f64, y: f64| (x - y).abs() <= 2.0 * f64::EPSILON * y.abs();

    let jp = jacobi3_params(&a).unwrap();
    if !(close(jp.p.re, -50.0 / 192.0) && jp.p.im == 0.0) {
        failures.push(format!("p = {}", jp.p));
    }
    if !(close(jp.q.re, 36.0 / 192.0) && jp.q.im == 0.0) {
        failures.push(format!("q = {}", jp.q));
    }
    let gp = gs3_params(&a).unwrap();
    if gp.a != Scalar::new(-192.0, 0.0) || gp.b != Scalar::new(144.0, 0.0) {
        failures.push(format!("a = {}, b = {}", gp.a, gp.b));
    }
    match gs3_band(gp.a.re, gp.b.re) {
        Ok((_, -0.5)) => {}
        other => failures.push(format!("band {other:?}")),
    }
    for route in [Route::Roots, Route::Hurwitz, Route::Region] {
        for (m, want) in [(Method::Jacobi, Status::Converges), (Method::GaussSeidel, Status::Diverges)] {
            let v = verdict(&a, m, route, 1e-9).unwrap().unwrap();
            if v.status != want {
                failures.push(format!("{m} via {route:?}: {:?}", v.status));
            }
        }
    }
    let ones = vec![Scalar::new(1.0, 0.0); 3];
    let s = Slae::new(a.clone(), a.matvec(&ones)).unwrap();
    let zero = vec![Scalar::new(0.0, 0.0); 3];
    let j = jacobi_solve(&s, &zero, 1e-10, 100_000).unwrap();
    if j.status != TraceStatus::Converged {
        failures.push(format!("jacobi solve {:?}", j.status));
    }
    let g = gauss_seidel_solve(&s, &zero, 1e-10, 100_000).unwrap();
    if g.status != TraceStatus::Diverged {
        failures.push(format!("gauss-seidel solve {:?}", g.status));
    }
    outcome(
        "Golden 3x3 system",
        failures,
        format!(
            "jacobi solve {} iterations, gauss-seidel diverged after {}",
            j.iterations, g.iterations
        ),
    )
}

fn random_complex_poly(rng: &mut ChaCha8Rng, degree: usize) -> Polynomial {
    if rng.gen_bool(0.5) {
        let coeffs: Vec<Scalar> = (0..=degree)
            .map(|_| Scalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mut p = Polynomial::new(coeffs.clone());
        while p.degree() != degree {
            p = Polynomial::new(
                (0..=degree)
                    .map(|_| Scalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            );
        }
        p
    } else {
        // roots scattered around the unit circle
        let rs: Vec<Scalar> = (0..degree)
            .map(|_| Scalar::from_polar(rng.gen_range(0.0..1.6), rng.gen_range(-PI..PI)))
            .collect();
        let lead = Scalar::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(-PI..PI));
        Polynomial::from_roots(&rs).scale(lead)
    }
}

fn criterion_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let total = 20_000;
    let (mut checked, mut failures) = (0, Vec::new());
    for k in 0..total {
        let degree = 1 + k % 6;
        let f = random_complex_poly(&mut rng, degree);
        let rho = spectral_radius(&f).unwrap();
        if (rho - 1.0).abs() <= BAND {
            continue;
        }
        checked += 1;
        let v = unit_disk_test(&f).unwrap();
        let want = if rho < 1.0 { Status::Converges } else { Status::Diverges };
        if v.status != want && failures.len() < 5 {
            failures.push(format!("degree {degree}, rho {rho}: {:?}", v.status));
        }
    }
    outcome(
        "Criterion/oracle equivalence",
        failures,
        format!("{checked} non-marginal polynomials of degree 1-6"),
    )
}

fn region_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let (mut checked, mut failures) = (0, Vec::new());
    for _ in 0..20_000 {
        let p = rng.gen_range(-3.0..3.0);
        let q = rng.gen_range(-3.0..3.0);
        let params = JacobiCubicParams::real(p, q);
        let f = params.polynomial();
        let rho = spectral_radius(&f).unwrap();
        if (rho - 1.0).abs() <= BAND {
            continue;
        }
        checked += 1;
        let closed = jacobi3_real_converges(&params).unwrap();
        let hurwitz = unit_disk_test(&f).unwrap();
        let oracle = rho < 1.0;
        if (closed != oracle || hurwitz.converges() != oracle || hurwitz.is_marginal())
            && failures.len() < 5
        {
            failures.push(format!("(p, q) = ({p}, {q}): closed {closed}, hurwitz {:?}, rho {rho}", hurwitz.status));
        }
    }
    outcome("Jacobi cubic region equivalence", failures, format!("{checked} points in [-3, 3]²"))
}

fn boundary_witness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut polys: Vec<(&str, Polynomial)> = Vec::new();
    while polys.len() < 334 {
        let phi1 = rng.gen_range(-PI..PI);
        let r2 = rng.gen_range(0.0..=1.0);
        let phi2 = rng.gen_range(-PI..PI);
        if let Some(q) = boundary1_q_from_roots(phi1, r2, phi2) {
            let b = boundary1_sample(phi1, q);
            assert!(b.admissible);
            polys.push(("boundary1", b.cubic()));
        }
    }
    for _ in 0..333 {
        let b = boundary2_sample(rng.gen_range(-PI..PI), rng.gen_range(0.0..=1.0));
        polys.push(("boundary2", b.cubic()));
    }
    for _ in 0..333 {
        let phi1 = rng.gen_range(-PI..PI);
        let b1 = Scalar::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(-PI..PI));
        let d1 = gs_complex_boundary_sample(phi1, b1);
        polys.push(("gs", Polynomial::new(vec![Scalar::new(1.0, 0.0), d1, b1])));
    }
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for (family, f) in &polys {
        let rho = roots(f).unwrap().spectral_radius();
        worst = worst.max((rho - 1.0).abs());
        if (rho - 1.0).abs() > 1e-9 && failures.len() < 5 {
            failures.push(format!("{family}: max root modulus {rho}"));
        }
    }
    outcome(
        "Boundary witness suite",
        failures,
        format!("{} samples, max |rho - 1| = {worst:.1e}", polys.len()),
    )
}

fn two_by_two_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(72);
    let (mut checked, mut failures) = (0, Vec::new());
    for _ in 0..10_000 {
        let rows: Vec<Vec<Scalar>> = (0..2)
            .map(|_| {
                (0..2)
                    .map(|_| Scalar::new(rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0)))
                    .collect()
            })
            .collect();
        let a = Matrix::from_rows(&rows).unwrap();
        let j = roots_verdict(&a, Method::Jacobi, BAND).unwrap();
        let g = roots_verdict(&a, Method::GaussSeidel, BAND).unwrap();
        if j.is_marginal() || g.is_marginal() {
            continue;
        }
        checked += 1;
        let region = region_verdict(&a, Method::Jacobi).unwrap().unwrap();
        if (j.status != g.status || region.status != j.status) && failures.len() < 5 {
            failures.push(format!("{a:?}: jacobi {:?}, gs {:?}", j.status, g.status));
        }
    }
    outcome("n=2 equivalence", failures, format!("{checked} complex matrices"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, workers: &str| -> Vec<u8> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_jgconv"))
            .args(["montecarlo", "--seed", "7", "--trials", "3000", "--n-range", "2..5"])
            .args(["--workers", workers, "--out"])
            .arg(&path)
            .output()
            .unwrap()
            .status;
        assert!(status.success());
        std::fs::read(&path).unwrap()
    };
    let a = run("a.json", "1");
    let b = run("b.json", "1");
    let c = run("c.json", "4");
    let mut failures = Vec::new();
    if a != b {
        failures.push("repeated runs differ".to_string());
    }
    if a != c {
        failures.push("1 and 4 workers differ".to_string());
    }
    outcome(
        "Determinism",
        failures,
        format!("{}-byte reports compared across 1/1/4 workers", a.len()),
    )
}

fn main() {
    let start = Instant::now();
    let report_n2 = run_table1(TABLE_SEED, TABLE_TRIALS, &[2], None).unwrap();
    let elapsed_n2 = start.elapsed();
    let mut report = run_table1(TABLE_SEED, TABLE_TRIALS, &[3, 4, 5], None).unwrap();
    report.per_n.extend(report_n2.per_n);

    let mut results = table1(&report, elapsed_n2);
    results.push(example_two());
    results.push(criterion_oracle_equivalence());
    results.push(region_equivalence());
    results.push(boundary_witness());
    results.push(two_by_two_equivalence());
    results.push(determinism());

    for r in &results {
        println!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed ({:.1?})",
        results.len() - failed,
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
