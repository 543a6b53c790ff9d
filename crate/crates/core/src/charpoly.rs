//! Complex polynomials, characteristic polynomials of the iteration
//! matrices, and a simultaneous-iteration root finder used as the spectral
//! radius oracle.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, ONE, ZERO};

/// Polynomial with complex coefficients, highest power first:
/// `coeffs[k]` multiplies `λ^(deg - k)`.
///
/// Leading zeros are trimmed on construction. The zero polynomial is stored
/// as the single coefficient `0`.
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        let first = coeffs.iter().position(|c| *c != ZERO);
        match first {
            Some(k) => {
                coeffs.drain(..k);
            }
            None => coeffs = vec![ZERO],
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| Scalar::new(x, 0.0)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Scalar]) -> Self {
        let mut coeffs = vec![ONE];
        for &r in roots {
            coeffs.push(ZERO);
            for k in (1..coeffs.len()).rev() {
                let prev = coeffs[k - 1];
                coeffs[k] -= r * prev;
            }
        }
        Self::new(coeffs)
    }

    /// `λ^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[0] = ONE;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == ZERO
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    /// Coefficient of `λ^power` (zero beyond the degree).
    pub fn coeff_of_power(&self, power: usize) -> Scalar {
        let deg = self.degree();
        if power > deg {
            ZERO
        } else {
            self.coeffs[deg - power]
        }
    }

    pub fn eval(&self, x: Scalar) -> Scalar {
        self.coeffs.iter().fold(ZERO, |acc, &c| acc * x + c)
    }

    pub fn scale(&self, s: Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lead = self.leading();
        Ok(Self {
            coeffs: self.coeffs.iter().map(|c| c / lead).collect(),
        })
    }

    /// Splits off exact zero roots: returns `(k, g)` with `self = λ^k · g`.
    pub fn strip_zero_roots(&self) -> (usize, Polynomial) {
        if self.is_zero() {
            return (0, self.clone());
        }
        let k = self.coeffs.iter().rev().take_while(|c| **c == ZERO).count();
        let keep = self.coeffs.len() - k;
        (
            k,
            Self {
                coeffs: self.coeffs[..keep].to_vec(),
            },
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Polynomial").field(&self.coeffs).finish()
    }
}

/// `det(λI - m)` by the Faddeev-LeVerrier recurrence.
///
/// Exactly-zero columns are deflated first (`det(λI - m) = λ·det(λI - m')`
/// with row and column `j` removed), so structural zero eigenvalues such as
/// the one of the Gauss-Seidel iteration matrix come out exact. The
/// recurrence then runs on a balanced copy `S⁻¹ m S` (diagonal `S` with
/// power-of-two entries, so the similarity is exact).
pub fn char_poly(m: &Matrix) -> Polynomial {
    let n = m.order();
    let zero_col = (0..n).find(|&j| (0..n).all(|i| m[(i, j)] == ZERO));
    match zero_col {
        Some(_) if n == 1 => Polynomial::monomial(1),
        Some(j) => {
            let keep: Vec<usize> = (0..n).filter(|&k| k != j).collect();
            let mut sub = Matrix::zeros(n - 1);
            for (r, &i) in keep.iter().enumerate() {
                for (c, &k) in keep.iter().enumerate() {
                    sub[(r, c)] = m[(i, k)];
                }
            }
            char_poly(&sub).mul(&Polynomial::monomial(1))
        }
        None => faddeev_leverrier(&balance(m)),
    }
}

/// Parlett-Reinsch balancing by powers of two: a diagonal similarity that
/// brings each off-diagonal row norm close to the matching column norm.
pub fn balance(m: &Matrix) -> Matrix {
    const RADIX: f64 = 2.0;
    let n = m.order();
    let mut b = m.clone();
    for _ in 0..100 {
        let mut changed = false;
        for i in 0..n {
            let (mut col, mut row) = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    col += b[(j, i)].l1_norm();
                    row += b[(i, j)].l1_norm();
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            // scaling column i by f and row i by 1/f maps (col, row) to
            // (col·f, row/f)
            let mut f = 1.0;
            while col * f * f < row / RADIX {
                f *= RADIX;
            }
            while col * f * f >= row * RADIX {
                f /= RADIX;
            }
            if col * f + row / f < 0.95 * (col + row) {
                changed = true;
                for j in 0..n {
                    b[(i, j)] /= f;
                    b[(j, i)] *= f;
                }
            }
        }
        if !changed {
            break;
        }
    }
    b
}

fn faddeev_leverrier(m: &Matrix) -> Polynomial {
    let n = m.order();
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(ONE);
    // adj holds M_k = m·M_{k-1} + c_{k-1}·I, starting from M_1 = I.
    let mut adj = Matrix::identity(n);
    for k in 1..=n {
        let prod = m.matmul(&adj);
        let ck = -prod.trace() / k as f64;
        coeffs.push(ck);
        if k < n {
            adj = prod;
            for i in 0..n {
                adj[(i, i)] += ck;
            }
        }
    }
    Polynomial::new(coeffs)
}

/// Largest order accepted by [`pencil_char_poly`].
pub const PENCIL_MAX_ORDER: usize = 6;

/// `det(λ·w + v)` by expansion over all permutations, with each entry the
/// linear polynomial `λ·w_ij + v_ij`.
pub fn pencil_char_poly(w: &Matrix, v: &Matrix) -> Result<Polynomial> {
    let n = w.order();
    if v.order() != n {
        return Err(Error::WrongOrder {
            expected: n,
            got: v.order(),
        });
    }
    if n > PENCIL_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            got: n,
            limit: PENCIL_MAX_ORDER,
        });
    }
    // Low-order-first accumulator.
    let mut total = vec![ZERO; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    let mut counters = vec![0usize; n];
    let mut add_term = |perm: &[usize], sign: f64| {
        let mut term = vec![ZERO; n + 1];
        term[0] = Scalar::new(sign, 0.0);
        for (i, &j) in perm.iter().enumerate() {
            let (c0, c1) = (v[(i, j)], w[(i, j)]);
            for d in (0..=i + 1).rev() {
                let lower = if d > 0 { term[d - 1] * c1 } else { ZERO };
                term[d] = term[d] * c0 + lower;
            }
        }
        for (acc, t) in total.iter_mut().zip(&term) {
            *acc += t;
        }
    };
    // Heap's algorithm; every swap flips the permutation sign.
    add_term(&perm, sign);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            let j = if i % 2 == 0 { 0 } else { counters[i] };
            perm.swap(j, i);
            sign = -sign;
            add_term(&perm, sign);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    total.reverse();
    Ok(Polynomial::new(total))
}

/// Roots of a polynomial together with an accuracy report.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Scalar>,
    /// `max |f(root)| / |leading coefficient|` over the returned roots.
    pub residual: f64,
    pub sweeps: usize,
}

impl RootSet {
    pub fn spectral_radius(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

const MAX_SWEEPS: usize = 1000;
const STEP_TOL: f64 = 1e-13;
const BACKWARD_TOL: f64 = 1e-8;

/// All complex roots by Durand-Kerner (Weierstrass) simultaneous iteration.
///
/// Exact zero roots (trailing zero coefficients) are returned exactly. The
/// rest start on the spiral `c·(0.4 + 0.9i)^k` with `c` a root-modulus bound,
/// and sweep until the largest update falls below
/// `1e-13·(1 + max|root|)` or 1000 sweeps have run. Hitting the sweep cap is
/// only an error when the relative backward error exceeds `1e-8`.
pub fn roots(f: &Polynomial) -> Result<RootSet> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Err(Error::DegreeTooLow);
    }
    let (zeros, rest) = f.strip_zero_roots();
    let g = rest.monic()?;
    let m = g.degree();
    let c = g.coeffs();

    let mut z: Vec<Scalar> = Vec::with_capacity(m);
    let mut sweeps = 0;
    if m == 1 {
        z.push(-c[1]);
    } else if m > 1 {
        // Fujiwara-style bound: every root satisfies |z| <= 2 max |c_k|^(1/k).
        let bound = (1..=m)
            .map(|k| c[k].norm().powf(1.0 / k as f64))
            .fold(0.0, f64::max);
        let radius = if bound > 0.0 { bound } else { 1.0 };
        let seed = Scalar::new(0.4, 0.9);
        let mut w = Scalar::new(radius, 0.0);
        for _ in 0..m {
            z.push(w);
            w *= seed;
        }
        loop {
            sweeps += 1;
            let mut max_step: f64 = 0.0;
            for i in 0..m {
                let zi = z[i];
                let mut denom = ONE;
                for (j, &zj) in z.iter().enumerate() {
                    if j != i {
                        denom *= zi - zj;
                    }
                }
                if denom == ZERO {
                    denom = Scalar::new(f64::EPSILON * (1.0 + zi.norm()), 0.0);
                }
                let step = g.eval(zi) / denom;
                z[i] = zi - step;
                max_step = max_step.max(step.norm());
            }
            let scale = z.iter().map(|r| r.norm()).fold(0.0, f64::max);
            if max_step < STEP_TOL * (1.0 + scale) {
                break;
            }
            if sweeps >= MAX_SWEEPS || !max_step.is_finite() {
                let backward = backward_error(&g, &z);
                if backward.is_nan() || backward > BACKWARD_TOL {
                    return Err(Error::NoConvergence {
                        sweeps,
                        backward_error: backward,
                    });
                }
                break;
            }
        }
    }

    let residual = z.iter().map(|&r| g.eval(r).norm()).fold(0.0, f64::max);
    z.extend(std::iter::repeat_n(ZERO, zeros));
    Ok(RootSet {
        roots: z,
        residual,
        sweeps,
    })
}

/// `max |g(z)| / Σ |c_k| |z|^(deg-k)` over the candidate roots.
fn backward_error(g: &Polynomial, z: &[Scalar]) -> f64 {
    z.iter()
        .map(|&r| {
            let abs = r.norm();
            let denom = g
                .coeffs()
                .iter()
                .fold(0.0, |acc: f64, c| acc * abs + c.norm());
            let val = g.eval(r).norm();
            if denom > 0.0 {
                val / denom
            } else {
                val
            }
        })
        .fold(0.0, |a: f64, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

/// Largest root modulus; `0` for a nonzero constant.
pub fn spectral_radius(f: &Polynomial) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Ok(0.0);
    }
    Ok(roots(f)?.spectral_radius())
}
