//! Dense small complex matrices, the `A = L + D + R` splitting, and the
//! iteration matrices of the Jacobi and Gauss-Seidel methods.
//!
//! Real systems are stored as complex matrices with zero imaginary parts so a
//! single code path serves both.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Matrix entry type. Real inputs carry `im == 0.0`.
pub type Scalar = Complex64;

pub(crate) const ZERO: Scalar = Scalar::new(0.0, 0.0);
pub(crate) const ONE: Scalar = Scalar::new(1.0, 0.0);

/// Square `n × n` complex matrix in row-major order with finite entries.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    /// Largest supported order.
    pub const MAX_ORDER: usize = 12;

    /// Builds a matrix from row-major entries.
    pub fn new(n: usize, entries: Vec<Scalar>) -> Result<Self> {
        check_order(n)?;
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(n, entries)
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Scalar::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// # Panics
    /// If `n` is outside `1..=MAX_ORDER`.
    pub fn zeros(n: usize) -> Self {
        check_order(n).expect("matrix order");
        Self {
            n,
            entries: vec![ZERO; n * n],
        }
    }

    /// # Panics
    /// If `n` is outside `1..=MAX_ORDER`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Product of the diagonal entries.
    pub fn diagonal_product(&self) -> Scalar {
        (0..self.n).map(|i| self[(i, i)]).product()
    }

    /// Index of the first exactly-zero diagonal entry, if any.
    pub fn zero_diagonal(&self) -> Option<usize> {
        (0..self.n).find(|&i| self[(i, i)] == ZERO)
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "order mismatch");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.n, x.len(), "order mismatch");
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "order mismatch");
        Matrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > Matrix::MAX_ORDER {
        Err(Error::UnsupportedOrder(n))
    } else {
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.n + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Scalar]> = (0..self.n).map(|i| self.row(i)).collect();
        f.debug_struct("Matrix")
            .field("n", &self.n)
            .field("rows", &rows)
            .finish()
    }
}

/// A linear system `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Slae {
    a: Matrix,
    rhs: Vec<Scalar>,
}

impl Slae {
    pub fn new(a: Matrix, rhs: Vec<Scalar>) -> Result<Self> {
        if rhs.len() != a.order() {
            return Err(Error::DimensionMismatch {
                expected: a.order(),
                got: rhs.len(),
            });
        }
        if let Some(pos) = rhs.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(Self { a, rhs })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn rhs(&self) -> &[Scalar] {
        &self.rhs
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }
}

/// Strictly lower, diagonal and strictly upper parts of a matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Splitting {
    pub l: Matrix,
    pub d: Matrix,
    pub r: Matrix,
}

impl Splitting {
    /// `L + D + R`; reproduces the source matrix bit-exactly since the parts
    /// have disjoint supports.
    pub fn recombine(&self) -> Matrix {
        self.l.add(&self.d).add(&self.r)
    }
}

pub fn split(a: &Matrix) -> Splitting {
    let n = a.order();
    let mut l = Matrix::zeros(n);
    let mut d = Matrix::zeros(n);
    let mut r = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let target = match i.cmp(&j) {
                std::cmp::Ordering::Greater => &mut l,
                std::cmp::Ordering::Equal => &mut d,
                std::cmp::Ordering::Less => &mut r,
            };
            target[(i, j)] = a[(i, j)];
        }
    }
    Splitting { l, d, r }
}

fn require_nonzero_diagonal(a: &Matrix) -> Result<()> {
    match a.zero_diagonal() {
        Some(i) => Err(Error::ZeroDiagonal(i)),
        None => Ok(()),
    }
}

/// `M_J = -D⁻¹(L + R)`. The diagonal of the result is exactly zero.
pub fn jacobi_iteration_matrix(a: &Matrix) -> Result<Matrix> {
    require_nonzero_diagonal(a)?;
    let n = a.order();
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        let dii = a[(i, i)];
        for j in 0..n {
            if i != j {
                m[(i, j)] = -a[(i, j)] / dii;
            }
        }
    }
    Ok(m)
}

/// `M_GS = -(L + D)⁻¹R`, one forward substitution per column of `R`.
/// The first column of the result is exactly zero.
pub fn gs_iteration_matrix(a: &Matrix) -> Result<Matrix> {
    require_nonzero_diagonal(a)?;
    let n = a.order();
    let mut m = Matrix::zeros(n);
    // Column j of R is nonzero only in rows 0..j.
    for j in 1..n {
        for i in 0..n {
            let mut acc = if i < j { -a[(i, j)] } else { ZERO };
            for k in 0..i {
                acc -= a[(i, k)] * m[(k, j)];
            }
            m[(i, j)] = acc / a[(i, i)];
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn real(rows: &[&[f64]]) -> Matrix {
        Matrix::from_real_rows(rows).unwrap()
    }

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    #[test]
    fn split_identity() {
        let s = split(&Matrix::identity(3));
        assert_eq!(s.l, Matrix::zeros(3));
        assert_eq!(s.d, Matrix::identity(3));
        assert_eq!(s.r, Matrix::zeros(3));
    }

    #[test]
    fn split_2x2_placement() {
        let s = split(&real(&[&[1.0, 2.0], &[3.0, 4.0]]));
        assert_eq!(s.l, real(&[&[0.0, 0.0], &[3.0, 0.0]]));
        assert_eq!(s.d, real(&[&[1.0, 0.0], &[0.0, 4.0]]));
        assert_eq!(s.r, real(&[&[0.0, 2.0], &[0.0, 0.0]]));
    }

    #[test]
    fn split_example_two_diagonal() {
        let a = real(&[&[-8.0, 6.0, -4.0], &[-9.0, 8.0, 6.0], &[4.0, -5.0, 3.0]]);
        let s = split(&a);
        assert_eq!(
            s.d,
            real(&[&[-8.0, 0.0, 0.0], &[0.0, 8.0, 0.0], &[0.0, 0.0, 3.0]])
        );
        assert_eq!(s.recombine(), a);
    }

    #[test]
    fn jacobi_matrix_examples() {
        let diag = real(&[&[2.0, 0.0, 0.0], &[0.0, -3.0, 0.0], &[0.0, 0.0, 5.0]]);
        assert_eq!(jacobi_iteration_matrix(&diag).unwrap(), Matrix::zeros(3));

        let m = jacobi_iteration_matrix(&real(&[&[2.0, 1.0], &[1.0, 2.0]])).unwrap();
        assert_eq!(m, real(&[&[0.0, -0.5], &[-0.5, 0.0]]));

        let m = jacobi_iteration_matrix(&real(&[&[1.0, 2.0], &[0.0, 1.0]])).unwrap();
        assert_eq!(m, real(&[&[0.0, -2.0], &[0.0, 0.0]]));
    }

    #[test]
    fn gs_matrix_examples() {
        let lower = real(&[&[2.0, 0.0, 0.0], &[1.0, 3.0, 0.0], &[4.0, 5.0, 6.0]]);
        assert_eq!(gs_iteration_matrix(&lower).unwrap(), Matrix::zeros(3));

        let m = gs_iteration_matrix(&real(&[&[2.0, 1.0], &[1.0, 2.0]])).unwrap();
        assert_eq!(m, real(&[&[0.0, -0.5], &[0.0, 0.25]]));

        assert_eq!(
            gs_iteration_matrix(&Matrix::identity(4)).unwrap(),
            Matrix::zeros(4)
        );
    }

    #[test]
    fn zero_diagonal_is_rejected() {
        let a = real(&[&[1.0, 2.0], &[3.0, 0.0]]);
        assert_eq!(jacobi_iteration_matrix(&a), Err(Error::ZeroDiagonal(1)));
        assert_eq!(gs_iteration_matrix(&a), Err(Error::ZeroDiagonal(1)));
        // tiny but nonzero is legal
        let a = real(&[&[1e-300, 1.0], &[1.0, 1.0]]);
        assert!(jacobi_iteration_matrix(&a).is_ok());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Matrix::new(0, vec![]), Err(Error::UnsupportedOrder(0)));
        assert_eq!(
            Matrix::new(13, vec![ZERO; 169]),
            Err(Error::UnsupportedOrder(13))
        );
        assert!(matches!(
            Matrix::new(2, vec![ZERO; 3]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            Matrix::new(1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite(0))
        );
        assert!(Slae::new(Matrix::identity(2), vec![ONE]).is_err());
    }

    fn arb_matrix(max_n: usize) -> impl Strategy<Value = Matrix> {
        (2..=max_n).prop_flat_map(|n| {
            prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), n * n).prop_map(move |v| {
                let mut m =
                    Matrix::new(n, v.into_iter().map(|(re, im)| c(re, im)).collect()).unwrap();
                for i in 0..n {
                    if m[(i, i)] == ZERO {
                        m[(i, i)] = ONE;
                    }
                }
                m
            })
        })
    }

    fn assert_close(a: &Matrix, b: &Matrix, rel: f64) {
        let scale = 1.0 + a.max_abs().max(b.max_abs());
        for (x, y) in a.entries().iter().zip(b.entries()) {
            assert!((x - y).norm() <= rel * scale, "{x} vs {y}");
        }
    }

    proptest! {
        #[test]
        fn split_round_trip(a in arb_matrix(6)) {
            let s = split(&a);
            prop_assert_eq!(s.recombine(), a);
            let n = s.l.order();
            for i in 0..n {
                for j in 0..n {
                    if i <= j { prop_assert_eq!(s.l[(i, j)], ZERO); }
                    if i >= j { prop_assert_eq!(s.r[(i, j)], ZERO); }
                    if i != j { prop_assert_eq!(s.d[(i, j)], ZERO); }
                }
            }
        }

        #[test]
        fn row_scaling_invariance(
            a in arb_matrix(6),
            scales in prop::collection::vec((0.1..10.0f64, -3.0..3.0f64), 6),
        ) {
            let n = a.order();
            let mut sa = a.clone();
            for i in 0..n {
                let s = Scalar::from_polar(scales[i].0, scales[i].1);
                for j in 0..n {
                    sa[(i, j)] = a[(i, j)] * s;
                }
            }
            assert_close(&jacobi_iteration_matrix(&sa).unwrap(), &jacobi_iteration_matrix(&a).unwrap(), 1e-13);
            assert_close(&gs_iteration_matrix(&sa).unwrap(), &gs_iteration_matrix(&a).unwrap(), 1e-13);
        }

        #[test]
        fn permutation_similarity(a in arb_matrix(6), seed in any::<u64>()) {
            let n = a.order();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let mut p = Matrix::zeros(n);
            for (i, &j) in perm.iter().enumerate() {
                p[(i, j)] = ONE;
            }
            let pap = p.matmul(&a).matmul(&p.transpose());
            let lhs = jacobi_iteration_matrix(&pap).unwrap();
            let rhs = p.matmul(&jacobi_iteration_matrix(&a).unwrap()).matmul(&p.transpose());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn iteration_matrix_structure(a in arb_matrix(6)) {
            let mj = jacobi_iteration_matrix(&a).unwrap();
            prop_assert_eq!(mj.trace(), ZERO);
            let mgs = gs_iteration_matrix(&a).unwrap();
            for i in 0..a.order() {
                prop_assert_eq!(mgs[(i, 0)], ZERO);
            }
        }
    }
}
