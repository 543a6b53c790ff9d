//! Delimited plot data for the `qOp` plane.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::regions::{
    boundary1_sample, boundary2_sample, classify_qp, gs3_band_point, gs_complex_boundary_sample,
};
use crate::linalg::Scalar;

use super::Target;

pub const Q_RANGE: (f64, f64) = (-1.5, 1.5);
pub const P_RANGE: (f64, f64) = (-2.5, 3.5);

/// CSV documents for one region query.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionData {
    /// `curve,q,p` polylines of the real boundaries.
    pub boundary: String,
    /// `q,p,class` over an `N × N` grid.
    pub grid: String,
    /// Complex boundary samples at a fixed root argument.
    pub complex: Option<String>,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// `count` evenly spaced points over `[lo, hi]`; the midpoint when `count == 1`.
fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![(lo + hi) / 2.0],
        _ => (0..count)
            .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
            .collect(),
    }
}

pub fn region_data(
    target: Target,
    a: Option<f64>,
    b: Option<f64>,
    grid: usize,
    phi1: Option<f64>,
) -> Result<RegionData> {
    let gs = match (a, b) {
        (Some(a), Some(b)) => Some((a, b)),
        (None, None) if target == Target::Jacobi3 => None,
        _ => return Err(Error::MissingParameter("both --a and --b are required for the band")),
    };
    let samples = grid.max(2);

    let mut boundary = String::from("curve,q,p\n");
    let mut push = |curve: &str, q: f64, p: f64| {
        writeln!(boundary, "{curve},{},{}", num(q), num(p)).unwrap();
    };
    // real sections: λ = 1 and λ = -1 on the first boundary, the parabola
    // on the second
    for q in linspace(-1.0, 0.0, samples) {
        let pt = boundary1_sample(0.0, Scalar::new(q, 0.0));
        push("jacobi_lower_left", q, pt.p.re);
    }
    for q in linspace(0.0, 1.0, samples) {
        let pt = boundary1_sample(PI, Scalar::new(q, 0.0));
        push("jacobi_lower_right", q, pt.p.re);
    }
    for r in linspace(-1.0, 1.0, samples) {
        let pt = if r < 0.0 {
            boundary2_sample(PI, -r)
        } else {
            boundary2_sample(0.0, r)
        };
        push("jacobi_parabola", -r, pt.p.re);
    }
    if let Some((a, b)) = gs {
        for (name, upper) in [("gs_lower", false), ("gs_upper", true)] {
            for q in linspace(Q_RANGE.0, Q_RANGE.1, samples) {
                let pt = gs3_band_point(q, a, b, upper)?;
                push(name, q, pt.p.re);
            }
        }
    }

    let mut grid_csv = String::from("q,p,class\n");
    for q in linspace(Q_RANGE.0, Q_RANGE.1, grid) {
        for p in linspace(P_RANGE.0, P_RANGE.1, grid) {
            let class = classify_qp(q, p, gs)?;
            writeln!(grid_csv, "{},{},{}", num(q), num(p), class.label()).unwrap();
        }
    }

    let complex = phi1.map(|phi1| complex_samples(target, phi1, samples));
    Ok(RegionData {
        boundary,
        grid: grid_csv,
        complex,
    })
}

fn complex_samples(target: Target, phi1: f64, samples: usize) -> String {
    let mut out = String::from(match target {
        Target::Jacobi3 => "family,phi1,r,phi_q,q_re,q_im,p_re,p_im,admissible\n",
        Target::Gs3 => "family,phi1,r,phi_b,b1_re,b1_im,d1_re,d1_im,admissible\n",
    });
    {
        let mut row = |family: &str, r: f64, phi: f64, x: Scalar, y: Scalar, ok: bool| {
            writeln!(
                out,
                "{family},{},{},{},{},{},{},{},{ok}",
                num(phi1),
                num(r),
                num(phi),
                num(x.re),
                num(x.im),
                num(y.re),
                num(y.im)
            )
            .unwrap();
        };
        let radii = linspace(0.0, 1.0, samples);
        let angles = linspace(-PI, PI, samples);
        match target {
            Target::Jacobi3 => {
                for &r in &radii {
                    for &phi in &angles {
                        let pt = boundary1_sample(phi1, Scalar::from_polar(r, phi));
                        row("boundary1", r, phi, pt.q, pt.p, pt.admissible);
                    }
                }
                for &r in &radii {
                    let pt = boundary2_sample(phi1, r);
                    row("boundary2", r, pt.q.arg(), pt.q, pt.p, pt.admissible);
                }
            }
            Target::Gs3 => {
                // |b₁| < 1 strictly
                for &r in &radii[..radii.len() - 1] {
                    for &phi in &angles {
                        let b1 = Scalar::from_polar(r, phi);
                        row("gs_boundary", r, phi, b1, gs_complex_boundary_sample(phi1, b1), true);
                    }
                }
            }
        }
    }
    out
}
