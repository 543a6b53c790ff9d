//! The Jacobi and Gauss-Seidel iterations themselves.
//!
//! Each iteration `k` produces `x_k` and records the size of the next update
//! `‖T(x_k) - x_k‖∞`, so a system solved exactly by one sweep reports a
//! single iteration.

use serde::{Deserialize, Serialize};

use crate::analysis::Method;
use crate::error::{Error, Result};
use crate::linalg::{Scalar, Slae, ZERO};

/// Iterates with `‖x‖∞` above this are reported as diverged.
pub const DIVERGENCE_THRESHOLD: f64 = 1e150;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceStatus {
    Converged,
    Diverged,
    MaxIterations,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub status: TraceStatus,
    pub iterations: usize,
    /// Final iterate when converged.
    pub solution: Option<Vec<Scalar>>,
    /// `‖x_{k+1} - x_k‖∞` per iteration.
    pub residual_history: Vec<f64>,
    /// `‖A x - b‖∞` at the last iterate, for diagnostics.
    pub final_residual: f64,
}

fn inf_norm(v: &[Scalar]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

fn jacobi_sweep(s: &Slae, x: &[Scalar]) -> Vec<Scalar> {
    let a = s.matrix();
    let n = s.order();
    (0..n)
        .map(|i| {
            let off: Scalar = (0..n).filter(|&j| j != i).map(|j| a[(i, j)] * x[j]).sum();
            (s.rhs()[i] - off) / a[(i, i)]
        })
        .collect()
}

fn gs_sweep(s: &Slae, x: &[Scalar]) -> Vec<Scalar> {
    let a = s.matrix();
    let n = s.order();
    let mut y = x.to_vec();
    for i in 0..n {
        let mut acc = s.rhs()[i];
        for j in 0..n {
            if j != i {
                acc -= a[(i, j)] * y[j];
            }
        }
        y[i] = acc / a[(i, i)];
    }
    y
}

fn residual(s: &Slae, x: &[Scalar]) -> f64 {
    let ax = s.matrix().matvec(x);
    let r: Vec<Scalar> = ax.iter().zip(s.rhs()).map(|(u, b)| u - b).collect();
    inf_norm(&r)
}

fn run(
    s: &Slae,
    x0: &[Scalar],
    tol: f64,
    max_iter: usize,
    sweep: fn(&Slae, &[Scalar]) -> Vec<Scalar>,
) -> Result<IterationTrace> {
    if let Some(i) = s.matrix().zero_diagonal() {
        return Err(Error::ZeroDiagonal(i));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance);
    }
    if x0.len() != s.order() {
        return Err(Error::DimensionMismatch {
            expected: s.order(),
            got: x0.len(),
        });
    }
    let mut history = Vec::new();
    let mut x = x0.to_vec();
    let mut next = sweep(s, &x);
    let mut status = TraceStatus::MaxIterations;
    for _ in 0..max_iter {
        x = next;
        next = sweep(s, &x);
        let update: Vec<Scalar> = next.iter().zip(&x).map(|(u, v)| u - v).collect();
        let size = inf_norm(&update);
        history.push(size);
        let norm = inf_norm(&x);
        if !norm.is_finite() || norm > DIVERGENCE_THRESHOLD || !size.is_finite() {
            status = TraceStatus::Diverged;
            break;
        }
        if size < tol {
            status = TraceStatus::Converged;
            break;
        }
    }
    Ok(IterationTrace {
        status,
        iterations: history.len(),
        final_residual: residual(s, &x),
        solution: (status == TraceStatus::Converged).then_some(x),
        residual_history: history,
    })
}

/// `x ← D⁻¹(b - (L + R)x)` until the update drops below `tol`.
pub fn jacobi_solve(s: &Slae, x0: &[Scalar], tol: f64, max_iter: usize) -> Result<IterationTrace> {
    run(s, x0, tol, max_iter, jacobi_sweep)
}

/// In-place forward sweeps `x ← (L + D)⁻¹(b - Rx)`.
pub fn gauss_seidel_solve(
    s: &Slae,
    x0: &[Scalar],
    tol: f64,
    max_iter: usize,
) -> Result<IterationTrace> {
    run(s, x0, tol, max_iter, gs_sweep)
}

pub fn solve(
    s: &Slae,
    method: Method,
    x0: Option<&[Scalar]>,
    tol: f64,
    max_iter: usize,
) -> Result<IterationTrace> {
    let zeros = vec![ZERO; s.order()];
    let x0 = x0.unwrap_or(&zeros);
    match method {
        Method::Jacobi => jacobi_solve(s, x0, tol, max_iter),
        Method::GaussSeidel => gauss_seidel_solve(s, x0, tol, max_iter),
    }
}
