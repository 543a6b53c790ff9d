//! Unit-disk root test.
//!
//! A polynomial `f(λ)` has all roots inside the unit circle iff its image
//! under `λ = (z + 1)/(z - 1)`, cleared of denominators, is stable (all roots
//! in the open left half-plane). Stability of a complex polynomial is decided
//! with the complex analog of the Hurwitz criterion: write the monic
//! polynomial on the imaginary axis as `g(ω) + i·h(ω)`, reorder/sign-adjust
//! the real pair by the parity of the degree into `(B, C)`, and require every
//! even-order leading principal minor of their interleaved `2n × 2n` Hurwitz
//! matrix to be positive.

use serde::{Deserialize, Serialize};

use crate::charpoly::{self, Polynomial};
use crate::error::{Error, Result};
use crate::linalg::{Scalar, ZERO};

/// Three-valued outcome of a convergence (or stability) test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// All roots strictly inside the unit circle (or, for [`is_stable`],
    /// strictly in the left half-plane).
    Converges,
    Diverges,
    /// The decision quantity sits inside its tolerance band.
    Marginal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Spectral radius from the root oracle.
    Roots,
    /// Möbius transform plus complex Hurwitz criterion.
    Hurwitz,
    /// Closed-form convergence regions (n = 2, and n = 3 real).
    Region,
}

/// Evidence behind a `Diverges` or `Marginal` verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    /// `f(1) = 0`: the Möbius image loses its leading term.
    RootAtOne,
    /// Hurwitz determinant of order `2·(index + 1)`.
    Minor { index: usize, value: f64 },
    /// Spectral radius inside the band `|ρ - 1| <= band`.
    SpectralRadius { value: f64, band: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceVerdict {
    pub status: Status,
    pub route: Route,
    pub spectral_radius_estimate: Option<f64>,
    pub minors: Option<Vec<f64>>,
    pub witness: Option<Witness>,
}

impl ConvergenceVerdict {
    pub fn converges(&self) -> bool {
        self.status == Status::Converges
    }

    pub fn is_marginal(&self) -> bool {
        self.status == Status::Marginal
    }

    pub(crate) fn decided(route: Route, converges: bool) -> Self {
        Self {
            status: if converges {
                Status::Converges
            } else {
                Status::Diverges
            },
            route,
            spectral_radius_estimate: None,
            minors: None,
            witness: None,
        }
    }
}

/// Image of a polynomial under the disk-to-half-plane substitution.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusImage {
    pub poly: Polynomial,
    /// Set when `f(1) = 0`: the image has lower degree and `λ = 1` is a root.
    pub degree_drop: bool,
}

/// `Σ a_k (z + 1)^(n-k) (z - 1)^k` for `f(λ) = Σ a_k λ^(n-k)`.
///
/// The leading coefficient of the image is `f(1)`; when it vanishes up to
/// rounding (`|f(1)| <= 8ε Σ|a_k|`) it is set to exactly zero and the result
/// is flagged with `degree_drop`.
pub fn mobius_disk_to_halfplane(f: &Polynomial) -> MobiusImage {
    let n = f.degree();
    let a = f.coeffs();
    // Low-order-first binomial rows for (z + 1)^j and (z - 1)^j.
    let plus = binomial_powers(n, 1.0);
    let minus = binomial_powers(n, -1.0);
    let mut out = vec![ZERO; n + 1];
    for (k, &ak) in a.iter().enumerate() {
        if ak == ZERO {
            continue;
        }
        let p = &plus[n - k];
        let m = &minus[k];
        for (i, &pi) in p.iter().enumerate() {
            for (j, &mj) in m.iter().enumerate() {
                out[i + j] += ak * (pi * mj);
            }
        }
    }
    let magnitude: f64 = a.iter().map(|c| c.norm()).sum();
    let degree_drop = out[n].norm() <= 8.0 * f64::EPSILON * magnitude;
    if degree_drop {
        out[n] = ZERO;
    }
    out.reverse();
    MobiusImage {
        poly: Polynomial::new(out),
        degree_drop,
    }
}

/// Coefficients (constant term first) of `(z + s)^j` for `j = 0..=n`.
fn binomial_powers(n: usize, s: f64) -> Vec<Vec<f64>> {
    let mut rows = vec![vec![1.0]];
    for j in 1..=n {
        let prev = &rows[j - 1];
        let mut row = vec![0.0; j + 1];
        for (i, &c) in prev.iter().enumerate() {
            row[i] += c * s;
            row[i + 1] += c;
        }
        rows.push(row);
    }
    rows
}

/// Real and imaginary parts of a monic polynomial on the imaginary axis,
/// `f(iω) = g(ω) + i·h(ω)`. Both vectors hold `n + 1` coefficients, highest
/// power first.
#[derive(Debug, Clone, PartialEq)]
pub struct RealImagSplit {
    pub g: Vec<f64>,
    pub h: Vec<f64>,
}

impl RealImagSplit {
    pub fn degree(&self) -> usize {
        self.g.len() - 1
    }

    pub fn eval(&self, omega: f64) -> Scalar {
        let horner = |c: &[f64]| c.iter().fold(0.0, |acc, &x| acc * omega + x);
        Scalar::new(horner(&self.g), horner(&self.h))
    }
}

/// Normalizes `f_tilde` to monic and splits `f̃(iω)` into `g + i·h`.
pub fn split_g_h(f_tilde: &Polynomial) -> Result<RealImagSplit> {
    if f_tilde.is_zero() {
        return Err(Error::ZeroLeading);
    }
    let monic = f_tilde.monic()?;
    let n = monic.degree();
    let mut g = Vec::with_capacity(n + 1);
    let mut h = Vec::with_capacity(n + 1);
    for (k, &c) in monic.coeffs().iter().enumerate() {
        // c · i^power with power = n - k
        let v = match (n - k) % 4 {
            0 => c,
            1 => Scalar::new(-c.im, c.re),
            2 => -c,
            _ => Scalar::new(c.im, -c.re),
        };
        g.push(v.re);
        h.push(v.im);
    }
    Ok(RealImagSplit { g, h })
}

/// Real polynomials `B` (degree `n`, `b_0 > 0`) and `C` (degree `<= n - 1`),
/// coefficients highest power first. `c` has exactly `n` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct HurwitzPair {
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

impl HurwitzPair {
    pub fn degree(&self) -> usize {
        self.b.len() - 1
    }
}

/// Degree-parity reordering of `(g, h)`:
/// `n = 2m`: `B = (-1)^m g`, `C = (-1)^(m-1) h`;
/// `n = 2m + 1`: `B = (-1)^m h`, `C = (-1)^m g`.
pub fn parity_adjust(split: &RealImagSplit, n: usize) -> Result<HurwitzPair> {
    if split.degree() != n {
        return Err(Error::WrongOrder {
            expected: n,
            got: split.degree(),
        });
    }
    let m = n / 2;
    let sign = |e: usize| if e.is_multiple_of(2) { 1.0 } else { -1.0 };
    let (b_src, b_sign, c_src, c_sign) = if n.is_multiple_of(2) {
        // (-1)^(m-1) = -(-1)^m
        (&split.g, sign(m), &split.h, -sign(m))
    } else {
        (&split.h, sign(m), &split.g, sign(m))
    };
    let b: Vec<f64> = b_src.iter().map(|x| x * b_sign).collect();
    if b[0].is_nan() || b[0] <= 0.0 {
        return Err(Error::ParityViolation(b[0]));
    }
    // The ω^n term of the other component is zero for monic input.
    let c: Vec<f64> = c_src[1..].iter().map(|x| x * c_sign).collect();
    Ok(HurwitzPair { b, c })
}

/// Interleaved `2n × 2n` Hurwitz matrix of `(B, C)` and its even-order
/// leading principal minors.
#[derive(Debug, Clone, PartialEq)]
pub struct HurwitzMatrix {
    pub order: usize,
    pub rows: Vec<Vec<f64>>,
    /// Minors of order `2, 4, …, 2n`.
    pub minors: Vec<f64>,
    /// Smallest pivot magnitude of each minor's block after scaling every
    /// row to unit max-norm; a measure of how far the block is from singular.
    pub min_pivots: Vec<f64>,
}

/// Row `2k` (0-based) carries `b_0..b_n` starting at column `k`; row `2k + 1`
/// carries `c_0..c_(n-1)` starting at column `k + 1`.
pub fn hurwitz_matrix(pair: &HurwitzPair) -> HurwitzMatrix {
    let n = pair.degree();
    let order = 2 * n;
    let mut rows = vec![vec![0.0; order]; order];
    for k in 0..n {
        for (j, &b) in pair.b.iter().enumerate() {
            rows[2 * k][k + j] = b;
        }
        for (j, &c) in pair.c.iter().enumerate() {
            rows[2 * k + 1][k + 1 + j] = c;
        }
    }
    let (minors, min_pivots) = (1..=n).map(|k| leading_minor(&rows, 2 * k)).unzip();
    HurwitzMatrix {
        order,
        rows,
        minors,
        min_pivots,
    }
}

/// Determinant of the leading `size × size` block by Gaussian elimination
/// with partial pivoting, paired with the smallest pivot of the
/// row-equilibrated block.
fn leading_minor(rows: &[Vec<f64>], size: usize) -> (f64, f64) {
    let mut a: Vec<Vec<f64>> = rows[..size].iter().map(|r| r[..size].to_vec()).collect();
    let (det, _) = eliminate(&mut a.clone());
    for r in a.iter_mut() {
        let m = r.iter().fold(0.0, |acc: f64, x| acc.max(x.abs()));
        if m > 0.0 {
            r.iter_mut().for_each(|x| *x /= m);
        }
    }
    let (_, min_pivot) = eliminate(&mut a);
    (det, min_pivot)
}

/// Returns `(determinant, min |pivot|)`.
fn eliminate(a: &mut [Vec<f64>]) -> (f64, f64) {
    let size = a.len();
    let mut det = 1.0;
    let mut min_pivot = f64::INFINITY;
    for col in 0..size {
        let pivot = (col..size)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col] == 0.0 {
            return (0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        min_pivot = min_pivot.min(p.abs());
        let (top, bottom) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom.iter_mut() {
            let factor = row[col] / p;
            if factor != 0.0 {
                for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= factor * y;
                }
            }
        }
    }
    (det, min_pivot)
}

/// Pivot floor below which a Hurwitz block counts as singular.
pub const MINOR_PIVOT_FLOOR: f64 = 1e-9;

/// Left-half-plane stability by the complex Hurwitz criterion.
///
/// `Converges` here means stable: every minor is positive; `Diverges` if a
/// minor is negative. A minor whose block is numerically singular (smallest
/// pivot of the row-equilibrated block `<= 1e-9`) has no reliable sign and
/// is treated as zero; any such minor, absent a reliably negative one, makes
/// the verdict `Marginal`.
pub fn is_stable(f: &Polynomial) -> Result<ConvergenceVerdict> {
    if f.is_zero() {
        return Err(Error::ZeroLeading);
    }
    let n = f.degree();
    if n == 0 {
        return Err(Error::DegreeTooLow);
    }
    let split = split_g_h(f)?;
    let pair = parity_adjust(&split, n)?;
    let hm = hurwitz_matrix(&pair);
    Ok(verdict_from_minors(hm.minors, &hm.min_pivots))
}

fn verdict_from_minors(minors: Vec<f64>, min_pivots: &[f64]) -> ConvergenceVerdict {
    let finite = minors.iter().chain(min_pivots).all(|m| m.is_finite());
    let reliable: Vec<bool> = minors
        .iter()
        .zip(min_pivots)
        .map(|(m, &p)| m.is_finite() && p > MINOR_PIVOT_FLOOR)
        .collect();
    let negative = (0..minors.len()).position(|i| reliable[i] && minors[i] < 0.0);
    let small = (0..minors.len()).position(|i| !reliable[i]);
    let (status, witness) = match (finite, negative, small) {
        (true, Some(i), _) => (Status::Diverges, Some(i)),
        (_, _, Some(i)) => (Status::Marginal, Some(i)),
        (false, _, None) => (Status::Marginal, None),
        (true, None, None) => (Status::Converges, None),
    };
    ConvergenceVerdict {
        status,
        route: Route::Hurwitz,
        spectral_radius_estimate: None,
        witness: witness.map(|index| Witness::Minor {
            index,
            value: minors[index],
        }),
        minors: Some(minors),
    }
}

/// All roots strictly inside the unit circle, decided without root finding.
///
/// Exact zero roots are factored out first; a remaining constant means every
/// root is zero. A degree drop under the Möbius map means `λ = 1` is a root.
pub fn unit_disk_test(f: &Polynomial) -> Result<ConvergenceVerdict> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Err(Error::DegreeTooLow);
    }
    let (_, rest) = f.strip_zero_roots();
    if rest.degree() == 0 {
        let mut v = ConvergenceVerdict::decided(Route::Hurwitz, true);
        v.minors = Some(Vec::new());
        return Ok(v);
    }
    let image = mobius_disk_to_halfplane(&rest);
    if image.degree_drop {
        let mut v = ConvergenceVerdict::decided(Route::Hurwitz, false);
        v.witness = Some(Witness::RootAtOne);
        return Ok(v);
    }
    is_stable(&image.poly)
}

/// Spectral-radius verdict from the root oracle: `Marginal` when
/// `|ρ - 1| <= band`.
pub fn spectral_verdict(f: &Polynomial, band: f64) -> Result<ConvergenceVerdict> {
    let rho = charpoly::spectral_radius(f)?;
    Ok(verdict_from_radius(rho, band))
}

pub fn verdict_from_radius(rho: f64, band: f64) -> ConvergenceVerdict {
    let marginal = (rho - 1.0).abs() <= band;
    let status = if marginal {
        Status::Marginal
    } else if rho < 1.0 {
        Status::Converges
    } else {
        Status::Diverges
    };
    ConvergenceVerdict {
        status,
        route: Route::Roots,
        spectral_radius_estimate: Some(rho),
        minors: None,
        witness: marginal.then_some(Witness::SpectralRadius { value: rho, band }),
    }
}
