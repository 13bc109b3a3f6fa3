//! Special functions on complex arguments.
//!
//! | function | method |
//! |---|---|
//! | [`log_gamma`], [`digamma`] | upward recurrence, then Stirling / asymptotic series |
//! | [`riemann_zeta`], [`hurwitz_zeta`] | Euler-Maclaurin with Bernoulli corrections |
//! | [`zeta_log_derivative`] | Euler-Maclaurin for zeta and zeta' together |
//! | [`xi`] | functional-equation reflection into `Re z >= 1/2` |
//! | [`binomial`], [`laguerre_l1`] | exact integer product, three-term recurrence |
//!
//! Poles raise [`Error::Pole`](crate::Error::Pole) rather than returning
//! infinities.

mod constants;
mod gamma;
mod poly;
mod util;
mod xi;
mod zeta;

pub use constants::{EULER_GAMMA, LN_2PI, LN_PI};
pub use gamma::{digamma, log_gamma};
pub use poly::{binomial, laguerre_l1, laguerre_l1_complex, ln_binomial, MAX_BINOMIAL_N};
pub use util::{expm1, log1p};
pub use xi::{hardy_z, riemann_siegel_theta, xi};
pub use zeta::{hurwitz_zeta, riemann_zeta, zeta_and_derivative, zeta_log_derivative, zeta_times_s_minus_one};

pub(crate) use gamma::log_gamma_unchecked;
