//! Closed-form convergence regions.
//!
//! * `n = 2`: both methods converge iff `|a₁₂a₂₁| < |a₁₁a₂₂|`.
//! * `n = 3`, Jacobi: the iteration polynomial reduces to `λ³ + pλ + q`; for
//!   real `(p, q)` the region is bounded by `p = -q - 1`, `p = q - 1` and
//!   `p = 1 - q²`. Complex boundaries are exposed as samplers.
//! * `n = 3`, Gauss-Seidel: after factoring out `λ`, `aλ² + dλ + b`; for real
//!   coefficients the region is `|d| < |a + b|`, `|b/a| < 1`, which in the
//!   `qOp` plane is the band between `p = -q - 1` and `p = -q + (a + 2b)/a`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::charpoly::Polynomial;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, ONE, ZERO};

/// `λ³ + pλ + q`, the monic Jacobi polynomial of a 3×3 system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiCubicParams {
    pub p: Scalar,
    pub q: Scalar,
}

impl JacobiCubicParams {
    pub fn real(p: f64, q: f64) -> Self {
        Self {
            p: Scalar::new(p, 0.0),
            q: Scalar::new(q, 0.0),
        }
    }

    pub fn polynomial(&self) -> Polynomial {
        Polynomial::new(vec![ONE, ZERO, self.p, self.q])
    }

    pub fn is_real(&self) -> bool {
        self.p.im == 0.0 && self.q.im == 0.0
    }
}

/// `aλ² + dλ + b`, the Gauss-Seidel polynomial of a 3×3 system with its
/// zero root removed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GsQuadraticParams {
    pub a: Scalar,
    pub d: Scalar,
    pub b: Scalar,
}

impl GsQuadraticParams {
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::new(vec![self.a, self.d, self.b])
    }

    pub fn is_real(&self) -> bool {
        self.a.im == 0.0 && self.d.im == 0.0 && self.b.im == 0.0
    }

    /// `d / a`
    pub fn d1(&self) -> Scalar {
        self.d / self.a
    }

    /// `b / a`
    pub fn b1(&self) -> Scalar {
        self.b / self.a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryFamily {
    /// One root on the unit circle, the other two inside or on it.
    Boundary1,
    /// A pair of roots on the circle placed symmetrically about the third.
    Boundary2,
    /// Gauss-Seidel band, lower line `p = -q - 1` (root `λ = 1`).
    GsLower,
    /// Gauss-Seidel band, upper line `p = -q + (a + 2b)/a` (root `λ = -1`).
    GsUpper,
}

/// A point `(q, p)` on a convergence-region boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub q: Scalar,
    pub p: Scalar,
    pub family: BoundaryFamily,
    /// Argument of the root placed on the unit circle.
    pub phi1: f64,
    /// Modulus parameter: `|q|` for `Boundary1`, `r₁` for `Boundary2`,
    /// `|b/a|` for the Gauss-Seidel lines.
    pub r: f64,
    /// Whether the remaining roots lie in the closed unit disk, so the point
    /// is a genuine boundary point rather than a spurious solution of the
    /// boundary equation.
    pub admissible: bool,
}

impl BoundaryPoint {
    /// The Jacobi cubic `λ³ + pλ + q` at this point.
    pub fn cubic(&self) -> Polynomial {
        JacobiCubicParams {
            p: self.p,
            q: self.q,
        }
        .polynomial()
    }
}

fn require_order(a: &Matrix, n: usize) -> Result<()> {
    if a.order() != n {
        return Err(Error::WrongOrder {
            expected: n,
            got: a.order(),
        });
    }
    if let Some(i) = a.zero_diagonal() {
        return Err(Error::ZeroDiagonal(i));
    }
    Ok(())
}

/// `|a₁₂a₂₁| < |a₁₁a₂₂|`; the same region for Jacobi and Gauss-Seidel.
pub fn converges_2x2(a: &Matrix) -> Result<bool> {
    require_order(a, 2)?;
    Ok((a[(0, 1)] * a[(1, 0)]).norm() < (a[(0, 0)] * a[(1, 1)]).norm())
}

pub fn jacobi3_params(a: &Matrix) -> Result<JacobiCubicParams> {
    require_order(a, 3)?;
    let e = |i: usize, j: usize| a[(i - 1, j - 1)];
    let diag = e(1, 1) * e(2, 2) * e(3, 3);
    let p = (-e(1, 3) * e(2, 2) * e(3, 1) - e(2, 3) * e(1, 1) * e(3, 2) - e(1, 2) * e(3, 3) * e(2, 1))
        / diag;
    let q = (e(1, 3) * e(3, 2) * e(2, 1) + e(1, 2) * e(2, 3) * e(3, 1)) / diag;
    Ok(JacobiCubicParams { p, q })
}

/// Real Jacobi region: `-1 < q < 1`, `p > -q - 1`, `p > q - 1`, `p < 1 - q²`.
pub fn jacobi3_real_converges(params: &JacobiCubicParams) -> Result<bool> {
    if !params.is_real() {
        return Err(Error::NotReal);
    }
    let (p, q) = (params.p.re, params.q.re);
    Ok(-1.0 < q && q < 1.0 && p > -q - 1.0 && p > q - 1.0 && p < 1.0 - q * q)
}

/// Roots of `μ² + e^{iφ}μ - q·e^{-iφ}`, the two roots of `λ³ + pλ + q` left
/// after removing `λ = e^{iφ}` on the first boundary.
fn boundary1_companions(phi1: f64, q: Scalar) -> [Scalar; 2] {
    let s = Scalar::from_polar(1.0, phi1);
    let prod = -q * Scalar::from_polar(1.0, -phi1);
    quadratic_roots(s, prod)
}

/// Roots of `μ² + sμ + c` without cancellation in the larger root.
fn quadratic_roots(s: Scalar, c: Scalar) -> [Scalar; 2] {
    let disc = (s * s - 4.0 * c).sqrt();
    // pick the sign that avoids cancellation
    let t = if (s.conj() * disc).re >= 0.0 {
        -(s + disc) / 2.0
    } else {
        -(s - disc) / 2.0
    };
    if t == ZERO {
        [ZERO, -s]
    } else {
        [t, c / t]
    }
}

const ADMISSIBLE_SLACK: f64 = 1e-12;

/// First boundary: `p = -q·e^{-iφ₁} - e^{2iφ₁}` puts the root `e^{iφ₁}` on
/// the unit circle. The point is `admissible` when the two remaining roots
/// are also in the closed disk (and `|q| <= 1`).
pub fn boundary1_sample(phi1: f64, q: Scalar) -> BoundaryPoint {
    let p = -q * Scalar::from_polar(1.0, -phi1) - Scalar::from_polar(1.0, 2.0 * phi1);
    let admissible = q.norm() <= 1.0 + ADMISSIBLE_SLACK
        && boundary1_companions(phi1, q)
            .iter()
            .all(|mu| mu.norm() <= 1.0 + ADMISSIBLE_SLACK);
    BoundaryPoint {
        q,
        p,
        family: BoundaryFamily::Boundary1,
        phi1,
        r: q.norm(),
        admissible,
    }
}

/// `q` of the first boundary built from a root configuration
/// `{e^{iφ₁}, r₂e^{iφ₂}, r₃e^{iφ₃}}` with zero sum. Returns `None` when the
/// third root falls outside the closed unit disk.
pub fn boundary1_q_from_roots(phi1: f64, r2: f64, phi2: f64) -> Option<Scalar> {
    let l1 = Scalar::from_polar(1.0, phi1);
    let l2 = Scalar::from_polar(r2, phi2);
    let l3 = -l2 - l1;
    (r2 <= 1.0 && l3.norm() <= 1.0).then(|| -l1 * l2 * l3)
}

/// Second boundary: `q = -r₁e^{3iφ₁}`, `p = -q²e^{-4iφ₁} + e^{2iφ₁}`. The
/// roots are `r₁e^{iφ₁}` and a pair on the unit circle symmetric about it,
/// so every `r₁ ∈ [0, 1]` is admissible and `|p| = 1 - r₁²`.
pub fn boundary2_sample(phi1: f64, r1: f64) -> BoundaryPoint {
    let q = -Scalar::from_polar(r1, 3.0 * phi1);
    let p = -q * q * Scalar::from_polar(1.0, -4.0 * phi1) + Scalar::from_polar(1.0, 2.0 * phi1);
    BoundaryPoint {
        q,
        p,
        family: BoundaryFamily::Boundary2,
        phi1,
        r: r1,
        admissible: (0.0..=1.0).contains(&r1),
    }
}

pub fn gs3_params(a: &Matrix) -> Result<GsQuadraticParams> {
    require_order(a, 3)?;
    let e = |i: usize, j: usize| a[(i - 1, j - 1)];
    Ok(GsQuadraticParams {
        a: e(1, 1) * e(2, 2) * e(3, 3),
        d: e(2, 1) * e(1, 3) * e(3, 2)
            - e(1, 3) * e(2, 2) * e(3, 1)
            - e(3, 2) * e(1, 1) * e(2, 3)
            - e(2, 1) * e(3, 3) * e(1, 2),
        b: e(1, 2) * e(2, 3) * e(3, 1),
    })
}

/// Real Gauss-Seidel region: `|d| < |a + b|` and `|b/a| < 1`. This covers
/// complex-conjugate roots as well.
pub fn gs3_real_converges(params: &GsQuadraticParams) -> Result<bool> {
    if !params.is_real() {
        return Err(Error::NotReal);
    }
    let (a, d, b) = (params.a.re, params.d.re, params.b.re);
    if a == 0.0 {
        return Err(Error::ZeroA);
    }
    Ok(d.abs() < (a + b).abs() && (b / a).abs() < 1.0)
}

/// p-intercepts `(-1, (a + 2b)/a)` of the lines bounding the Gauss-Seidel
/// band in the `qOp` plane.
pub fn gs3_band(a: f64, b: f64) -> Result<(f64, f64)> {
    if a == 0.0 {
        return Err(Error::ZeroA);
    }
    let ratio = b / a;
    if ratio.is_nan() || ratio.abs() >= 1.0 {
        return Err(Error::RatioOutOfRange(ratio.abs()));
    }
    Ok((-1.0, 1.0 + 2.0 * ratio))
}

/// Point on the lower (root `λ = 1`) or upper (root `λ = -1`) band line at
/// abscissa `q`.
pub fn gs3_band_point(q: f64, a: f64, b: f64, upper: bool) -> Result<BoundaryPoint> {
    let (lo, hi) = gs3_band(a, b)?;
    let (intercept, phi1, family) = match upper {
        false => (lo, 0.0, BoundaryFamily::GsLower),
        true => (hi, PI, BoundaryFamily::GsUpper),
    };
    Ok(BoundaryPoint {
        q: Scalar::new(q, 0.0),
        p: Scalar::new(-q + intercept, 0.0),
        family,
        phi1,
        r: (b / a).abs(),
        admissible: true,
    })
}

/// A 3×3 matrix whose Jacobi parameters are exactly `(p, q)`:
/// `[[1, -p, q], [1, 1, 0], [0, 1, 1]]`.
pub fn matrix_for_pq(p: f64, q: f64) -> Matrix {
    Matrix::from_real_rows(&[[1.0, -p, q], [1.0, 1.0, 0.0], [0.0, 1.0, 1.0]])
        .expect("finite 3x3 template")
}

/// First Gauss-Seidel boundary: `d₁ = -e^{iφ₁} - b₁e^{-iφ₁}` puts the root
/// `e^{iφ₁}` of `λ² + d₁λ + b₁` on the circle; the other root is
/// `b₁e^{-iφ₁}`, inside the disk whenever `|b₁| < 1`.
pub fn gs_complex_boundary_sample(phi1: f64, b1: Scalar) -> Scalar {
    -Scalar::from_polar(1.0, phi1) - b1 * Scalar::from_polar(1.0, -phi1)
}

/// Per-point class in the `qOp` plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionClass {
    Both,
    GsOnly,
    JOnly,
    Neither,
    InsideJacobi,
    OutsideJacobi,
}

impl RegionClass {
    pub fn label(self) -> &'static str {
        match self {
            RegionClass::Both => "both",
            RegionClass::GsOnly => "GS-only",
            RegionClass::JOnly => "J-only",
            RegionClass::Neither => "neither",
            RegionClass::InsideJacobi => "inside-Jacobi",
            RegionClass::OutsideJacobi => "outside-Jacobi",
        }
    }
}

/// Gauss-Seidel membership of the real point `(q, p)` for fixed `(a, b)`:
/// `|(p + q)a - b| < |a + b|`, `|b/a| < 1`.
pub fn gs3_contains_qp(q: f64, p: f64, a: f64, b: f64) -> Result<bool> {
    let d = (p + q) * a - b;
    gs3_real_converges(&GsQuadraticParams {
        a: Scalar::new(a, 0.0),
        d: Scalar::new(d, 0.0),
        b: Scalar::new(b, 0.0),
    })
}

/// Classifies `(q, p)`: four-way when Gauss-Seidel parameters `(a, b)` are
/// given, Jacobi membership only otherwise.
pub fn classify_qp(q: f64, p: f64, gs: Option<(f64, f64)>) -> Result<RegionClass> {
    let jac = jacobi3_real_converges(&JacobiCubicParams::real(p, q))?;
    Ok(match gs {
        None if jac => RegionClass::InsideJacobi,
        None => RegionClass::OutsideJacobi,
        Some((a, b)) => match (jac, gs3_contains_qp(q, p, a, b)?) {
            (true, true) => RegionClass::Both,
            (false, true) => RegionClass::GsOnly,
            (true, false) => RegionClass::JOnly,
            (false, false) => RegionClass::Neither,
        },
    })
}
