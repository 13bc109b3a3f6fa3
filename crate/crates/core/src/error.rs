use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error)]
pub enum Error {
    #[error("pole at {at}")]
    Pole { at: Complex64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("|zeta(s)| = {modulus:e} at s = {s} is too close to a zero for a logarithmic derivative")]
    NearZetaZero { s: Complex64, modulus: f64 },

    #[error("binomial({n}, k) exceeds the supported range (n <= {max})")]
    Overflow { n: u64, max: u64 },

    #[error("sieve limit {limit} exceeds the capacity {cap}")]
    Capacity { limit: u64, cap: u64 },

    #[error("cutoff {cutoff} exceeds the table limit {limit}")]
    CutoffExceedsTable { cutoff: u64, limit: u64 },

    #[error("regularized limit did not settle: {0}")]
    NonConvergence(String),

    #[error("requested tolerance {requested:e} unreachable, best bound {achieved:e}")]
    ToleranceUnreachable { requested: f64, achieved: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("ordinates not strictly ascending at line {line}")]
    Order { line: usize },

    #[error("parameter within {distance:e} of a zero or its reflection (ordinate {ordinate})")]
    TooCloseToZero { ordinate: f64, distance: f64 },

    #[error("phase winding mismatch on the contour ({turns} turns)")]
    WindingMismatch { turns: f64 },

    #[error("contour radius {radius} exceeds the zero-clearance bound {bound}")]
    RadiusTooLarge { radius: f64, bound: f64 },

    #[error("series has {have} coefficients, {need} needed")]
    InsufficientCoefficients { have: usize, need: usize },

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("corrupt cache: {0}")]
    Corrupt(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
