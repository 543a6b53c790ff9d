//! Convergence analysis of the Jacobi and Gauss-Seidel iterations for small
//! real and complex linear systems.
//!
//! Three independent routes decide whether an iteration converges:
//!
//! * [`regions`]: closed-form convergence regions for `n = 2` and the real
//!   `n = 3` case;
//! * [`stability`]: the Möbius disk-to-half-plane map followed by the complex
//!   Hurwitz criterion;
//! * [`charpoly`]: characteristic polynomials and a Durand-Kerner root oracle
//!   giving the spectral radius directly.
//!
//! [`analysis`] applies each route to the iteration matrix of either method,
//! [`solvers`] runs the iterations themselves and [`experiments`] holds the
//! seeded Monte Carlo comparison of both methods on random matrices. The
//! `jgconv` binary is a thin wrapper over [`cli`].

pub mod analysis;
pub mod charpoly;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod regions;
pub mod solvers;
pub mod stability;

pub use error::{Error, Result};
pub use linalg::{Matrix, Scalar, Slae};
