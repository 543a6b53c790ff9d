use std::io::Write;
use std::path::Path;

use crate::analysis::{iteration_polynomial, verdict, Method};
use crate::error::Error;
use crate::experiments::{run_table1, MARGINAL_BAND};
use crate::linalg::{Matrix, Scalar, Slae};
use crate::regions;
use crate::solvers::{solve, TraceStatus};
use crate::stability::{Route, Status};

use super::matrix_file::read_matrix_file;
use super::region_data::region_data;
use super::report::{
    analyze_text, solve_text, table1_text, to_json, AnalyzeReport, MethodReport, RegionInfo,
    SolveReport,
};
use super::{
    BackendArg, Command, Format, MethodArg, SolveMethodArg, Target, EXIT_DISAGREEMENT,
    EXIT_DIVERGED, EXIT_INPUT, EXIT_MAX_ITER, EXIT_OK,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

pub(super) fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cmd {
        Command::Analyze {
            path,
            method,
            backend,
            format,
        } => cmd_analyze(&path, method, backend, format, out),
        Command::Solve {
            path,
            method,
            tol,
            max_iter,
            x0,
            format,
        } => cmd_solve(&path, method, tol, max_iter, x0.as_deref(), format, out),
        Command::Region {
            target,
            a,
            b,
            grid,
            phi1,
            out: dir,
        } => cmd_region(target, a, b, grid, phi1, dir.as_deref(), out),
        Command::Montecarlo {
            seed,
            trials,
            n_range,
            out: path,
            format,
            workers,
        } => cmd_montecarlo(seed, trials, &n_range, path.as_deref(), format, workers, out),
    };
    match result {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

type CmdResult = Result<i32, (i32, String)>;

fn input(msg: impl ToString) -> (i32, String) {
    (EXIT_INPUT, msg.to_string())
}

fn library(e: Error) -> (i32, String) {
    match e {
        Error::Unresolvable(_) => (EXIT_DISAGREEMENT, e.to_string()),
        _ => (EXIT_INPUT, e.to_string()),
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), (i32, String)> {
    out.write_all(text.as_bytes()).map_err(input)
}

fn methods(arg: MethodArg) -> Vec<Method> {
    match arg {
        MethodArg::Jacobi => vec![Method::Jacobi],
        MethodArg::GaussSeidel => vec![Method::GaussSeidel],
        MethodArg::Both => Method::ALL.to_vec(),
    }
}

fn routes(arg: BackendArg) -> Vec<Route> {
    match arg {
        BackendArg::Roots => vec![Route::Roots],
        BackendArg::Hurwitz => vec![Route::Hurwitz],
        BackendArg::Region => vec![Route::Region],
        BackendArg::All => vec![Route::Roots, Route::Hurwitz, Route::Region],
    }
}

fn backend_name(arg: BackendArg) -> &'static str {
    match arg {
        BackendArg::Roots => "roots",
        BackendArg::Hurwitz => "hurwitz",
        BackendArg::Region => "region",
        BackendArg::All => "all",
    }
}

fn region_info(a: &Matrix) -> Result<Option<RegionInfo>, Error> {
    match a.order() {
        2 => Ok(Some(RegionInfo::TwoByTwo {
            converges: regions::converges_2x2(a)?,
        })),
        3 if a.is_real() => {
            let jp = regions::jacobi3_params(a)?;
            let gp = regions::gs3_params(a)?;
            Ok(Some(RegionInfo::Cubic {
                p: jp.p.re,
                q: jp.q.re,
                a: gp.a.re,
                d: gp.d.re,
                b: gp.b.re,
                band: regions::gs3_band(gp.a.re, gp.b.re).ok(),
                jacobi: regions::jacobi3_real_converges(&jp)?,
                gauss_seidel: regions::gs3_real_converges(&gp)?,
            }))
        }
        _ => Ok(None),
    }
}

/// Verdicts of the requested routes for each requested method.
pub fn analyze(a: &Matrix, method: MethodArg, backend: BackendArg) -> Result<AnalyzeReport, Error> {
    let mut reports = Vec::new();
    for m in methods(method) {
        let poly = iteration_polynomial(a, m)?;
        let mut verdicts = Vec::new();
        for route in routes(backend) {
            if let Some(v) = verdict(a, m, route, MARGINAL_BAND)? {
                verdicts.push(v);
            }
        }
        let rho = match verdicts.iter().find_map(|v| v.spectral_radius_estimate) {
            Some(r) => Some(r),
            None => crate::charpoly::spectral_radius(&poly).ok(),
        };
        let decisive: Vec<Status> = verdicts
            .iter()
            .map(|v| v.status)
            .filter(|&s| s != Status::Marginal)
            .collect();
        let agreement = decisive.windows(2).all(|w| w[0] == w[1]);
        let status = decisive.first().copied().unwrap_or(Status::Marginal);
        reports.push(MethodReport {
            method: m,
            status,
            spectral_radius: rho,
            characteristic_polynomial: poly.coeffs().to_vec(),
            verdicts,
            agreement,
        });
    }
    Ok(AnalyzeReport {
        version: VERSION.to_string(),
        n: a.order(),
        backend: backend_name(backend).to_string(),
        marginal_band: MARGINAL_BAND,
        methods: reports,
        region: region_info(a)?,
    })
}

fn cmd_analyze(
    path: &Path,
    method: MethodArg,
    backend: BackendArg,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let file = read_matrix_file(path).map_err(input)?;
    let report = analyze(&file.matrix, method, backend).map_err(library)?;
    let text = match format {
        Format::Json => to_json(&report),
        Format::Text => analyze_text(&report),
    };
    write_out(out, &text)?;
    if report.agreement() {
        Ok(EXIT_OK)
    } else {
        Err((EXIT_DISAGREEMENT, "convergence routes disagree".into()))
    }
}

fn parse_x0(text: &str, n: usize) -> Result<Vec<Scalar>, (i32, String)> {
    let xs: Vec<Scalar> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>().map(|x| Scalar::new(x, 0.0)))
        .collect::<Result<_, _>>()
        .map_err(|e| input(format!("--x0: {e}")))?;
    if xs.len() != n {
        return Err(input(format!("--x0 has {} entries, expected {n}", xs.len())));
    }
    Ok(xs)
}

fn cmd_solve(
    path: &Path,
    method: SolveMethodArg,
    tol: f64,
    max_iter: usize,
    x0: Option<&str>,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let file = read_matrix_file(path).map_err(input)?;
    let rhs = file
        .rhs
        .ok_or_else(|| input(format!("{}: no right-hand side", path.display())))?;
    let n = file.matrix.order();
    let system = Slae::new(file.matrix, rhs).map_err(library)?;
    let x0 = x0.map(|t| parse_x0(t, n)).transpose()?;
    let method = match method {
        SolveMethodArg::Jacobi => Method::Jacobi,
        SolveMethodArg::GaussSeidel => Method::GaussSeidel,
    };
    let trace = solve(&system, method, x0.as_deref(), tol, max_iter).map_err(library)?;
    let report = SolveReport {
        version: VERSION.to_string(),
        method,
        tol,
        max_iter,
        trace,
    };
    let text = match format {
        Format::Json => to_json(&report),
        Format::Text => solve_text(&report),
    };
    write_out(out, &text)?;
    Ok(match report.trace.status {
        TraceStatus::Converged => EXIT_OK,
        TraceStatus::Diverged => EXIT_DIVERGED,
        TraceStatus::MaxIterations => EXIT_MAX_ITER,
    })
}

fn cmd_region(
    target: Target,
    a: Option<f64>,
    b: Option<f64>,
    grid: usize,
    phi1: Option<f64>,
    dir: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    if grid == 0 {
        return Err(input("--grid must be at least 1"));
    }
    let data = region_data(target, a, b, grid, phi1).map_err(input)?;
    let name = match target {
        Target::Jacobi3 => "jacobi3",
        Target::Gs3 => "gs3",
    };
    let mut docs = vec![("boundary", data.boundary), ("grid", data.grid)];
    if let Some(c) = data.complex {
        docs.push(("complex", c));
    }
    match dir {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(input)?;
            for (kind, text) in &docs {
                let path = dir.join(format!("{name}_{kind}.csv"));
                std::fs::write(&path, text).map_err(|e| input(format!("{}: {e}", path.display())))?;
                writeln!(out, "{}", path.display()).map_err(input)?;
            }
        }
        None => {
            for (kind, text) in &docs {
                write_out(out, &format!("# {name} {kind}\n{text}"))?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// `lo..hi` (inclusive), `lo..=hi`, a single order, or a comma list.
pub fn parse_n_range(text: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("invalid order range `{text}`");
    let ns: Vec<usize> = if let Some((lo, hi)) = text.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        (lo..=hi).collect()
    } else {
        text.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    if ns.is_empty() {
        return Err(bad());
    }
    if let Some(n) = ns.iter().find(|&&n| !(2..=Matrix::MAX_ORDER).contains(&n)) {
        return Err(format!("order {n} outside 2..={}", Matrix::MAX_ORDER));
    }
    Ok(ns)
}

fn cmd_montecarlo(
    seed: u64,
    trials: u64,
    n_range: &str,
    path: Option<&Path>,
    format: Format,
    workers: Option<usize>,
    out: &mut dyn Write,
) -> CmdResult {
    if trials == 0 {
        return Err(input("--trials must be at least 1"));
    }
    if workers == Some(0) {
        return Err(input("--workers must be at least 1"));
    }
    let ns = parse_n_range(n_range).map_err(input)?;
    let report = run_table1(seed, trials, &ns, workers).map_err(library)?;
    let table = table1_text(&report);
    if let Some(path) = path {
        let text = match format {
            Format::Json => to_json(&report),
            Format::Text => table.clone(),
        };
        std::fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    }
    write_out(out, &table)?;
    Ok(EXIT_OK)
}
