//! Machine-readable reports and their text renderings.

use std::fmt::Write as _;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::analysis::Method;
use crate::experiments::Table1Report;
use crate::linalg::Scalar;
use crate::solvers::IterationTrace;
use crate::stability::{ConvergenceVerdict, Route, Status};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodReport {
    pub method: Method,
    /// Consensus of the decisive verdicts, `Marginal` if none is decisive.
    pub status: Status,
    pub spectral_radius: Option<f64>,
    /// Characteristic polynomial of the iteration matrix, highest power first.
    pub characteristic_polynomial: Vec<Scalar>,
    pub verdicts: Vec<ConvergenceVerdict>,
    /// Whether all decisive verdicts agree.
    pub agreement: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum RegionInfo {
    /// `|a₁₂a₂₁| < |a₁₁a₂₂|`, shared by both methods.
    TwoByTwo { converges: bool },
    /// Reduced parameters of a real 3×3 system.
    Cubic {
        p: f64,
        q: f64,
        a: f64,
        d: f64,
        b: f64,
        /// p-intercepts of the Gauss-Seidel band when `|b/a| < 1`.
        band: Option<(f64, f64)>,
        jacobi: bool,
        gauss_seidel: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub version: String,
    pub n: usize,
    pub backend: String,
    pub marginal_band: f64,
    pub methods: Vec<MethodReport>,
    pub region: Option<RegionInfo>,
}

impl AnalyzeReport {
    pub fn agreement(&self) -> bool {
        self.methods.iter().all(|m| m.agreement)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub version: String,
    pub method: Method,
    pub tol: f64,
    pub max_iter: usize,
    pub trace: IterationTrace,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> serde_json::Result<T> {
    serde_json::from_str(text)
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Converges => "converges",
        Status::Diverges => "diverges",
        Status::Marginal => "marginal",
    }
}

fn route_word(r: Route) -> &'static str {
    match r {
        Route::Roots => "roots",
        Route::Hurwitz => "hurwitz",
        Route::Region => "region",
    }
}

fn fmt_scalar(z: Scalar) -> String {
    // adding 0.0 turns -0 into 0
    let z = Scalar::new(z.re + 0.0, z.im + 0.0);
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("({} {} {}i)", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
    }
}

pub fn analyze_text(r: &AnalyzeReport) -> String {
    let mut out = String::new();
    writeln!(out, "n = {}", r.n).unwrap();
    for m in &r.methods {
        writeln!(out, "{}: {}", m.method, status_word(m.status)).unwrap();
        if let Some(rho) = m.spectral_radius {
            writeln!(out, "  spectral radius: {rho}").unwrap();
        }
        let coeffs: Vec<String> = m.characteristic_polynomial.iter().map(|&z| fmt_scalar(z)).collect();
        writeln!(out, "  characteristic polynomial: [{}]", coeffs.join(", ")).unwrap();
        for v in &m.verdicts {
            writeln!(out, "  {}: {}", route_word(v.route), status_word(v.status)).unwrap();
        }
        if !m.agreement {
            writeln!(out, "  routes disagree").unwrap();
        }
    }
    match &r.region {
        Some(RegionInfo::TwoByTwo { converges }) => {
            writeln!(out, "region: |a12 a21| < |a11 a22| is {converges}").unwrap();
        }
        Some(RegionInfo::Cubic {
            p,
            q,
            a,
            d,
            b,
            band,
            jacobi,
            gauss_seidel,
        }) => {
            writeln!(out, "region: p = {p}, q = {q}; a = {a}, d = {d}, b = {b}").unwrap();
            if let Some((lo, hi)) = band {
                writeln!(out, "  band intercepts: {lo}, {hi}").unwrap();
            }
            writeln!(out, "  inside jacobi region: {jacobi}").unwrap();
            writeln!(out, "  inside gauss-seidel region: {gauss_seidel}").unwrap();
        }
        None => {}
    }
    out
}

pub fn solve_text(r: &SolveReport) -> String {
    let t = &r.trace;
    let mut out = String::new();
    writeln!(out, "{}: {:?} after {} iterations", r.method, t.status, t.iterations).unwrap();
    if let Some(x) = &t.solution {
        let xs: Vec<String> = x.iter().map(|&z| fmt_scalar(z)).collect();
        writeln!(out, "x = [{}]", xs.join(", ")).unwrap();
    }
    if let Some(last) = t.residual_history.last() {
        writeln!(out, "last update norm: {last:e}").unwrap();
    }
    writeln!(out, "residual |Ax - b|: {:e}", t.final_residual).unwrap();
    out
}

/// Four-column table of counts and proportions per order.
pub fn table1_text(r: &Table1Report) -> String {
    let mut out = String::new();
    writeln!(out, "seed {}, {} trials per order", r.seed, r.trials).unwrap();
    writeln!(
        out,
        "{:>3} {:>10} {:>10} {:>12} {:>10}",
        "n", "both", "gs_only", "jacobi_only", "neither"
    )
    .unwrap();
    for (n, o) in &r.per_n {
        let c = &o.counts;
        writeln!(
            out,
            "{n:>3} {:>10} {:>10} {:>12} {:>10}",
            c.both, c.gs_only, c.jacobi_only, c.neither
        )
        .unwrap();
        let p = &o.proportions;
        writeln!(
            out,
            "{:>3} {:>10.4} {:>10.4} {:>12.4} {:>10.4}",
            "", p.both.value, p.gs_only.value, p.jacobi_only.value, p.neither.value
        )
        .unwrap();
    }
    out
}
