//! Generalized Li coefficients k_{n,a} = sum over nontrivial zeta zeros of
//! 1 - ((rho - a) / (rho + a - 1))^n, computed by three independent routes:
//! prime sums (von Mangoldt), explicit zero sums and derivatives of ln xi.

pub mod error;
pub mod jet;
pub mod mellin;
pub mod mangoldt;
pub mod quad;
pub mod record;
pub mod zeros;
pub mod arith;
pub mod specfun;
pub mod sum;
pub mod xi_route;

pub use error::{Error, Result};
pub use num_complex::Complex64;
