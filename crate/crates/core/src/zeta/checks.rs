//! Empirical checks of two analytic estimates: the Stirling factorization of
//! `Gamma(s)^(1/4)` and the convexity-type growth bound for `|zeta(s)|`.

use rug::Float;

use super::em::zeta_em;
use super::gamma::loggamma;
use super::precision::PrecisionContext;
use crate::error::{Error, Result};
use crate::mp::{self, Complex};

#[derive(Clone, Debug, PartialEq)]
pub struct StirlingRow {
    pub sigma: f64,
    pub t: f64,
    /// `|Gamma(s)^(1/4) / R(s) - 1|`.
    pub relative_error: f64,
    /// `relative_error * |s|`.
    pub scaled_error: f64,
}

/// Compares `Gamma(s)^(1/4)` with
/// `R(s) = 2^(-5/8) pi^(-3/8) 2^(s/2) Gamma((s + 3/2) / 4)` at each `(sigma, t)`.
///
/// `Gamma(s)^(1/4) = exp(lnGamma(s) / 4)` with the log-gamma branch that is
/// real on the positive axis and continued from there.
pub fn gamma_quarter_stirling_check(
    points: &[(f64, f64)],
    ctx: &PrecisionContext,
) -> Result<Vec<StirlingRow>> {
    let bits = ctx.bits();
    let ln2 = mp::ln2(bits);
    let ln_pi = mp::pi(bits).ln();
    let constant = -Float::with_val(bits, &ln2 * 5u32) / 8u32 - Float::with_val(bits, &ln_pi * 3u32) / 8u32;
    points
        .iter()
        .map(|&(sigma, t)| {
            if !(0.0..=1.0).contains(&sigma) || t == 0.0 || !t.is_finite() {
                return Err(Error::Domain(format!(
                    "Stirling check needs 0 <= sigma <= 1 and t != 0, got ({sigma}, {t})"
                )));
            }
            let s = Complex::from_f64(bits, sigma, t);
            let lhs = loggamma(&s, ctx)?.value.scale(&Float::with_val(bits, 0.25));
            let w = s.add_real(&Float::with_val(bits, 1.5)).scale(&Float::with_val(bits, 0.25));
            let mut rhs = loggamma(&w, ctx)?.value;
            rhs = &rhs + &s.scale(&Float::with_val(bits, &ln2 / 2u32));
            rhs.re += &constant;
            let diff = &lhs - &rhs;
            let one = Float::with_val(bits, 1);
            let rel = diff.exp().add_real(&-one).abs().to_f64();
            let modulus = sigma.hypot(t);
            Ok(StirlingRow {
                sigma,
                t,
                relative_error: rel,
                scaled_error: rel * modulus,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexityReport {
    /// `max |zeta(s)| / ((2 + |t|)^((1 - sigma)/3) log(2 + |t|))`.
    pub max_ratio: f64,
    pub argmax: (f64, f64),
    pub ratios: Vec<(f64, f64, f64)>,
}

/// Largest value of `|zeta(s)| / ((2+|t|)^((1-sigma)/3) log(2+|t|))` over the samples.
pub fn convexity_bound_check(samples: &[(f64, f64)], ctx: &PrecisionContext) -> Result<ConvexityReport> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("no samples".into()));
    }
    let mut ratios = Vec::with_capacity(samples.len());
    for &(sigma, t) in samples {
        if !(0.5..=1.0).contains(&sigma) || !(t.abs() <= 1e4) {
            return Err(Error::Domain(format!(
                "convexity check needs 1/2 <= sigma <= 1 and |t| <= 1e4, got ({sigma}, {t})"
            )));
        }
        let z = zeta_em(&Complex::from_f64(ctx.bits(), sigma, t), ctx)?;
        let x = 2.0 + t.abs();
        let ratio = z.abs().to_f64() / (x.powf((1.0 - sigma) / 3.0) * x.ln());
        if !ratio.is_finite() {
            return Err(Error::Convergence(format!("ratio not finite at ({sigma}, {t})")));
        }
        ratios.push((sigma, t, ratio));
    }
    let &(s, t, max_ratio) = ratios
        .iter()
        .fold(&ratios[0], |best, r| if r.2 > best.2 { r } else { best });
    Ok(ConvexityReport {
        max_ratio,
        argmax: (s, t),
        ratios,
    })
}
