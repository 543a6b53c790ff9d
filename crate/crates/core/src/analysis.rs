//! Per-method verdicts for a system matrix through each route.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::charpoly::{char_poly, pencil_char_poly, Polynomial, PENCIL_MAX_ORDER};
use crate::error::{Error, Result};
use crate::linalg::{gs_iteration_matrix, jacobi_iteration_matrix, split, Matrix};
use crate::regions;
use crate::stability::{spectral_verdict, unit_disk_test, ConvergenceVerdict, Route};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Jacobi,
    GaussSeidel,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Jacobi, Method::GaussSeidel];

    pub fn name(self) -> &'static str {
        match self {
            Method::Jacobi => "jacobi",
            Method::GaussSeidel => "gauss-seidel",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "jacobi" => Ok(Method::Jacobi),
            "gauss-seidel" | "gauss_seidel" | "gs" => Ok(Method::GaussSeidel),
            _ => Err(format!("unknown method `{s}`")),
        }
    }
}

pub fn iteration_matrix(a: &Matrix, method: Method) -> Result<Matrix> {
    match method {
        Method::Jacobi => jacobi_iteration_matrix(a),
        Method::GaussSeidel => gs_iteration_matrix(a),
    }
}

/// Characteristic polynomial of the iteration matrix.
pub fn iteration_polynomial(a: &Matrix, method: Method) -> Result<Polynomial> {
    Ok(char_poly(&iteration_matrix(a, method)?))
}

/// `det(λW + V)` with `(W, V) = (D, L + R)` for Jacobi and `(L + D, R)` for
/// Gauss-Seidel. Its roots are the eigenvalues of the iteration matrix, and
/// it needs no inversion. Limited to order 6.
pub fn pencil_polynomial(a: &Matrix, method: Method) -> Result<Polynomial> {
    if let Some(i) = a.zero_diagonal() {
        return Err(Error::ZeroDiagonal(i));
    }
    let s = split(a);
    match method {
        Method::Jacobi => pencil_char_poly(&s.d, &s.l.add(&s.r)),
        Method::GaussSeidel => pencil_char_poly(&s.l.add(&s.d), &s.r),
    }
}

/// Spectral radius of the iteration matrix from the root oracle.
pub fn roots_verdict(a: &Matrix, method: Method, band: f64) -> Result<ConvergenceVerdict> {
    spectral_verdict(&iteration_polynomial(a, method)?, band)
}

/// Unit-disk test on the pencil polynomial, or on the characteristic
/// polynomial above order 6.
pub fn hurwitz_verdict(a: &Matrix, method: Method) -> Result<ConvergenceVerdict> {
    let f = if a.order() <= PENCIL_MAX_ORDER {
        pencil_polynomial(a, method)?
    } else {
        iteration_polynomial(a, method)?
    };
    unit_disk_test(&f)
}

/// Closed-form verdict where one exists: any `2 × 2` system, and real
/// `3 × 3` systems.
pub fn region_verdict(a: &Matrix, method: Method) -> Result<Option<ConvergenceVerdict>> {
    let converges = match (a.order(), method) {
        (2, _) => regions::converges_2x2(a)?,
        (3, _) if !a.is_real() => return Ok(None),
        (3, Method::Jacobi) => regions::jacobi3_real_converges(&regions::jacobi3_params(a)?)?,
        (3, Method::GaussSeidel) => regions::gs3_real_converges(&regions::gs3_params(a)?)?,
        _ => return Ok(None),
    };
    Ok(Some(ConvergenceVerdict::decided(Route::Region, converges)))
}

pub fn verdict(a: &Matrix, method: Method, route: Route, band: f64) -> Result<Option<ConvergenceVerdict>> {
    match route {
        Route::Roots => roots_verdict(a, method, band).map(Some),
        Route::Hurwitz => hurwitz_verdict(a, method).map(Some),
        Route::Region => region_verdict(a, method),
    }
}
