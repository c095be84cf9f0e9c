//! Arbitrary-precision `zeta`, `Gamma`, `chi` and the Riemann–Siegel pair.

pub mod bernoulli;
pub mod checks;
pub mod chi;
pub mod em;
pub mod gamma;
pub mod precision;
pub mod rs;
pub mod theta;

use std::fmt;

use rug::Float;

use crate::mp::Complex;

pub use checks::{convexity_bound_check, gamma_quarter_stirling_check, ConvexityReport, StirlingRow};
pub use chi::chi;
pub use em::{zeta_em, VerticalLine};
pub use gamma::{gamma, gamma_real, loggamma, Bounded};
pub use precision::PrecisionContext;
pub use rs::{rs_error_bound, z_function, zeta_rs, CriticalLine, RS_T_MIN};
pub use theta::theta;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    EulerMaclaurin,
    RiemannSiegel,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::EulerMaclaurin => "euler-maclaurin",
            Method::RiemannSiegel => "riemann-siegel",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluation of `zeta(s)`.
#[derive(Clone, Debug)]
pub struct ZetaSample {
    pub s: Complex,
    pub value: Complex,
    pub method: Method,
    pub abs_error_bound: Float,
}

impl ZetaSample {
    pub fn abs(&self) -> Float {
        self.value.abs()
    }
}
