//! High-precision numerics for the first moment of `|zeta(1/2 + it)|`:
//! fractional divisor coefficients, Euler-product constants, zeta and gamma
//! evaluation with error bounds, and the moment integrals themselves.

pub mod cli;
pub mod coeffs;
pub mod error;
pub mod moments;
pub mod mp;
pub mod products;
pub mod quadrature;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
