//! Moment integrals of `|zeta|` on and off the critical line, the smoothed
//! coefficient sum with quartic exponential weight, their asymptotic models,
//! and the constant fit used to compare the two candidate leading constants.

mod fit;
mod integrals;
mod lemma4;
mod zeros;

use std::collections::BTreeMap;
use std::fmt;

use rug::Float;

pub use fit::{fit_constant, FitReport};
pub use integrals::{
    first_moment_laplace, first_moment_sharp, fractional_moment_offline, second_moment_sharp, sharp_moments,
    CriticalIntegrator, Power,
};
pub use lemma4::{lemma4_stieltjes, lemma4_sum, lemma4_truncation, LEMMA4_EXPONENT};
pub use zeros::{locate_zeros, locate_zeros_with, rvm_count, ZeroList, GRID_STEP};

use crate::error::Result;
use crate::products::{c0, EulerProductSpec};
use crate::zeta::{gamma_real, PrecisionContext};

/// Model key for the leading term with the extra `sqrt 2`.
pub const MODEL_PAPER: &str = "paper";
/// Model key for the leading term without it.
pub const MODEL_CG: &str = "cg";
/// Model key for kinds with a single reference model.
pub const MODEL_SINGLE: &str = "model";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MomentKind {
    FirstSharp,
    FirstLaplace,
    SecondSharp,
    FractionalOffLine,
    Lemma4Sum,
}

impl MomentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MomentKind::FirstSharp => "first-sharp",
            MomentKind::FirstLaplace => "first-laplace",
            MomentKind::SecondSharp => "second-sharp",
            MomentKind::FractionalOffLine => "fractional-off-line",
            MomentKind::Lemma4Sum => "lemma4-sum",
        }
    }
}

impl fmt::Display for MomentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct MomentEstimate {
    /// `T` for sharp and off-line kinds, `delta` for smoothed kinds.
    pub parameter: f64,
    pub kind: MomentKind,
    pub value: Float,
    pub quadrature_error: f64,
    pub model_predictions: BTreeMap<String, f64>,
    pub notes: String,
}

impl MomentEstimate {
    /// `value / model`, if the model is present.
    pub fn ratio(&self, model: &str) -> Option<f64> {
        self.model_predictions.get(model).map(|m| self.value.to_f64() / m)
    }
}

/// Tuning shared by the moment computations.
#[derive(Clone, Debug)]
pub struct MomentConfig {
    pub ctx: PrecisionContext,
    /// Riemann–Siegel correction terms.
    pub rs_terms: usize,
    /// Per-panel `|K - G|` tolerance, per unit length, on the critical line.
    pub panel_tol: f64,
    /// The same off the line, where each sample costs far more.
    pub offline_tol: f64,
    /// Largest `T*` a smoothed integral may need.
    pub zeta_budget: f64,
    /// Prime cutoff for the constants entering the models.
    pub prime_cutoff: u64,
}

impl MomentConfig {
    pub fn new(ctx: PrecisionContext) -> Self {
        MomentConfig {
            ctx,
            rs_terms: 4,
            panel_tol: 1e-10,
            offline_tol: 1e-6,
            zeta_budget: 1e6,
            prime_cutoff: 100_000,
        }
    }
}

/// `C_0`, `Gamma(5/4)` and `Gamma(1/4)` as doubles, for the asymptotic models.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceConstants {
    pub c0: f64,
    pub gamma_5_4: f64,
    pub gamma_1_4: f64,
}

impl ReferenceConstants {
    pub fn compute(prime_cutoff: u64, ctx: &PrecisionContext) -> Result<Self> {
        let spec = EulerProductSpec::new(prime_cutoff, ctx.clone())?;
        let c = c0(&spec)?;
        let g54 = gamma_real(&Float::with_val(ctx.bits(), 1.25), ctx)?;
        let g14 = gamma_real(&Float::with_val(ctx.bits(), 0.25), ctx)?;
        Ok(ReferenceConstants {
            c0: c.value.to_f64(),
            gamma_5_4: g54.value.to_f64(),
            gamma_1_4: g14.value.to_f64(),
        })
    }

    /// `sqrt 2 C_0 / Gamma(5/4)`.
    pub fn paper_constant(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.c0 / self.gamma_5_4
    }

    /// `C_0 / Gamma(5/4)`.
    pub fn cg_constant(&self) -> f64 {
        self.c0 / self.gamma_5_4
    }

    /// `C_0 / (sqrt 2 Gamma(1/4))`.
    pub fn lemma4_constant(&self) -> f64 {
        self.c0 / (std::f64::consts::SQRT_2 * self.gamma_1_4)
    }

    /// Both first-moment models at `T`: `C T log^(1/4) T`.
    pub fn first_moment_models(&self, t: f64) -> BTreeMap<String, f64> {
        let cg = self.cg_constant() * t * t.ln().powf(0.25);
        BTreeMap::from([
            (MODEL_PAPER.to_string(), std::f64::consts::SQRT_2 * cg),
            (MODEL_CG.to_string(), cg),
        ])
    }

    /// Both smoothed models at `delta`: `C delta^-1 log^(1/4)(1/delta)`.
    pub fn laplace_models(&self, delta: f64) -> BTreeMap<String, f64> {
        self.first_moment_models(1.0 / delta)
    }
}

/// `T log(T / 2 pi) + (2 gamma - 1) T`.
pub fn second_moment_model(t: f64) -> f64 {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    t * (t / (2.0 * std::f64::consts::PI)).ln() + (2.0 * EULER_GAMMA - 1.0) * t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_ratio_is_sqrt_two() {
        let rc = ReferenceConstants {
            c0: 0.9,
            gamma_5_4: 0.9064,
            gamma_1_4: 3.6256,
        };
        for t in [20.0, 500.0, 1e4, 1e7] {
            let m = rc.first_moment_models(t);
            let r = m[MODEL_PAPER] / m[MODEL_CG];
            assert!((r - std::f64::consts::SQRT_2).abs() <= 2.0 * f64::EPSILON);
        }
    }

    #[test]
    fn classical_model_at_2pi() {
        let t = 2.0 * std::f64::consts::PI;
        assert!((second_moment_model(t) - (2.0 * 0.5772156649015329 - 1.0) * t).abs() < 1e-12);
    }
}
