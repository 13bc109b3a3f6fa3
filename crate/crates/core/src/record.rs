//! Result records shared by all routes.

use num_complex::Complex64;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Which computation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Prime sums for Re a > 1.
    ArithEq4,
    /// Prime sums on the line Re a = 1.
    ArithEq5,
    /// Prime sums inside the strip, conditional on the zero-location hypothesis.
    ArithEq6,
    /// Explicit sum over tabulated zeros plus a smooth tail.
    ZeroSum,
    /// Taylor coefficients of ln xi.
    XiDeriv,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::ArithEq4 => "arith_eq4",
            Route::ArithEq5 => "arith_eq5",
            Route::ArithEq6 => "arith_eq6",
            Route::ZeroSum => "zero_sum",
            Route::XiDeriv => "xi_deriv",
        }
    }

    pub fn is_arithmetic(&self) -> bool {
        matches!(self, Route::ArithEq4 | Route::ArithEq5 | Route::ArithEq6)
    }
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One computed coefficient k_{n,a}.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiCoefficientRecord {
    pub n: u32,
    #[serde(serialize_with = "ser_complex")]
    pub a: Complex64,
    pub route: Route,
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    pub uncertainty: f64,
    pub params_digest: String,
    /// True when the value relies on all zeros lying on the critical line.
    pub conditional: bool,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

/// Stable 16-hex-digit digest of named parameters.
pub fn params_digest(params: &[(&str, String)]) -> String {
    let mut h = Sha256::new();
    for (k, v) in params {
        h.update(k.as_bytes());
        h.update(b"=");
        h.update(v.as_bytes());
        h.update(b";");
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}
