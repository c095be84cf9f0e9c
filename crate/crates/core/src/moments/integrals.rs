//! Integrals of `|zeta|` and `|zeta|^2` along vertical lines.
//!
//! On the critical line, `[0, 10]` is integrated by Simpson over
//! Euler–Maclaurin samples and `[10, T]` by adaptive GK21 over panels that
//! end at the located sign changes of `Z`, so each panel sees a smooth
//! integrand. Panels are independent and are summed in ascending order.

use rayon::prelude::*;
use rug::Float;

use super::zeros::{locate_zeros_with, ZeroList};
use super::{
    second_moment_model, MomentConfig, MomentEstimate, MomentKind, ReferenceConstants, MODEL_SINGLE,
};
use crate::error::{Error, Result};
use crate::mp;
use crate::products::{g_product, EulerProductSpec};
use crate::quadrature::{adaptive, simpson, QuadResult, Sample};
use crate::zeta::{CriticalLine, PrecisionContext, VerticalLine, RS_T_MIN};

/// Panels longer than this are split evenly.
const MAX_PANEL: f64 = 2.0;
const MAX_DEPTH: u32 = 24;
const HEAD_STEP: f64 = 1e-2;
/// `T* = LAPLACE_CUTOFF / delta`.
const LAPLACE_CUTOFF: f64 = 50.0;
/// `|zeta(1/2 + it)| <= 3 t^(1/6) log t` for `t >= 3`, with room to spare.
const CONVEXITY_CONST: f64 = 3.0;
/// Absolute accuracy asked of each Euler–Maclaurin sample, and the base
/// precision it is computed at; samples are consumed as doubles.
const SAMPLE_TARGET: f64 = 1e-15;
const SAMPLE_BITS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Power {
    One,
    Two,
}

impl Power {
    fn apply(self, v: f64, err: f64) -> Sample {
        match self {
            Power::One => Sample {
                value: v.abs(),
                error: err,
            },
            Power::Two => Sample {
                value: v * v,
                error: err * (2.0 * v.abs() + err),
            },
        }
    }
}

fn sample_ctx() -> Result<PrecisionContext> {
    PrecisionContext::with_target(SAMPLE_BITS, Float::with_val(SAMPLE_BITS, SAMPLE_TARGET))
}

/// `|zeta(1/2 + it)|^power e^(-delta t)` on `[0, t_max]`, with the tables
/// for both evaluators built once.
pub struct CriticalIntegrator {
    line: CriticalLine,
    head: VerticalLine,
    bits: u32,
    terms: usize,
    panel_tol: f64,
}

impl CriticalIntegrator {
    pub fn new(t_max: f64, cfg: &MomentConfig) -> Result<Self> {
        let bits = cfg.ctx.bits();
        Ok(CriticalIntegrator {
            line: CriticalLine::new(t_max.max(RS_T_MIN), &cfg.ctx)?,
            head: VerticalLine::new(0.5, RS_T_MIN, &sample_ctx()?)?,
            bits,
            terms: cfg.rs_terms,
            panel_tol: cfg.panel_tol,
        })
    }

    pub fn t_max(&self) -> f64 {
        self.line.t_max()
    }

    /// `Z(t)` and its error bound, `t >= 10`.
    pub fn z(&self, t: f64) -> Result<Sample> {
        let v = self.line.z(&Float::with_val(self.bits, t), self.terms)?;
        Ok(Sample {
            value: v.z.to_f64(),
            error: v.abs_error.to_f64(),
        })
    }

    fn integrand(&self, power: Power, delta: f64) -> impl Fn(f64) -> Result<Sample> + Sync + '_ {
        move |t: f64| {
            let s = self.z(t)?;
            let w = (-delta * t).exp();
            let p = power.apply(s.value, s.error);
            Ok(Sample {
                value: p.value * w,
                error: p.error * w,
            })
        }
    }

    fn head_integrand(&self, power: Power, delta: f64) -> impl Fn(f64) -> Result<Sample> + '_ {
        move |t: f64| {
            let z = self.head.eval(&Float::with_val(self.bits, t))?;
            let w = (-delta * t).exp();
            let p = power.apply(z.abs().to_f64(), z.abs_error_bound.to_f64());
            Ok(Sample {
                value: p.value * w,
                error: p.error * w,
            })
        }
    }

    /// `[0, 10]` by Simpson at step `1e-2`, error from the step-doubling difference.
    pub fn head(&self, power: Power, delta: f64) -> Result<QuadResult> {
        let f = self.head_integrand(power, delta);
        let n = (RS_T_MIN / HEAD_STEP).round() as usize;
        let fine = simpson(&f, 0.0, RS_T_MIN, n)?;
        let coarse = simpson(&f, 0.0, RS_T_MIN, n / 2)?;
        Ok(QuadResult {
            error: (fine.value - coarse.value).abs() / 15.0 * 2.0,
            evaluations: fine.evaluations + coarse.evaluations,
            ..fine
        })
    }

    pub fn zeros(&self, t_hi: f64) -> Result<ZeroList> {
        locate_zeros_with(&|t| Ok(self.z(t)?.value), RS_T_MIN, t_hi)
    }

    /// Panel endpoints on `[10, t_hi]`: the zeros, the requested ends, and
    /// even splits of anything longer than `MAX_PANEL`.
    fn panels(zeros: &ZeroList, ends: &[f64], t_hi: f64) -> Vec<(f64, f64)> {
        let mut cuts: Vec<f64> = zeros
            .ordinates
            .iter()
            .copied()
            .chain(ends.iter().copied())
            .filter(|&t| t > RS_T_MIN && t < t_hi)
            .collect();
        cuts.push(RS_T_MIN);
        cuts.push(t_hi);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut out = Vec::with_capacity(cuts.len() * 2);
        for w in cuts.windows(2) {
            let pieces = ((w[1] - w[0]) / MAX_PANEL).ceil().max(1.0) as usize;
            let h = (w[1] - w[0]) / pieces as f64;
            for i in 0..pieces {
                let a = w[0] + h * i as f64;
                let b = if i + 1 == pieces { w[1] } else { a + h };
                out.push((a, b));
            }
        }
        out
    }

    /// `int_0^T` for each `T` in `ends` (ascending, all `>= 10`).
    pub fn cumulative(&self, zeros: &ZeroList, power: Power, delta: f64, ends: &[f64]) -> Result<Vec<QuadResult>> {
        let t_hi = *ends.last().ok_or_else(|| Error::InvalidArgument("no end points".into()))?;
        if ends.windows(2).any(|w| w[1] < w[0]) || ends[0] < RS_T_MIN {
            return Err(Error::InvalidArgument(format!("end points must ascend from {RS_T_MIN}")));
        }
        if t_hi > self.t_max() * (1.0 + 1e-12) {
            return Err(Error::Range(format!("T = {t_hi} beyond evaluator limit {}", self.t_max())));
        }
        let head = self.head(power, delta)?;
        let panels = Self::panels(zeros, ends, t_hi);
        let f = self.integrand(power, delta);
        let parts: Vec<QuadResult> = panels
            .par_iter()
            .map(|&(a, b)| adaptive(&f, a, b, self.panel_tol * (b - a), MAX_DEPTH))
            .collect::<Result<Vec<_>>>()?;

        let mut out = Vec::with_capacity(ends.len());
        let mut acc = head;
        let mut next = 0;
        for (&(_, b), part) in panels.iter().zip(&parts) {
            while next < ends.len() && ends[next] <= RS_T_MIN {
                out.push(acc);
                next += 1;
            }
            acc.value += part.value;
            acc.error += part.error;
            acc.integrand_error += part.integrand_error;
            acc.evaluations += part.evaluations;
            acc.unresolved |= part.unresolved;
            while next < ends.len() && ends[next] <= b {
                out.push(acc);
                next += 1;
            }
        }
        while out.len() < ends.len() {
            out.push(acc);
        }
        Ok(out)
    }

    /// Independent check: composite Simpson on each zero-free panel of
    /// `[a, b]` with step at most `step`.
    pub fn simpson_oracle(&self, zeros: &ZeroList, power: Power, delta: f64, a: f64, b: f64, step: f64) -> Result<QuadResult> {
        let mut cuts: Vec<f64> = zeros.ordinates.iter().copied().filter(|&t| t > a && t < b).collect();
        cuts.insert(0, a);
        cuts.push(b);
        let f = self.integrand(power, delta);
        let parts: Vec<QuadResult> = cuts
            .windows(2)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|w| simpson(&f, w[0], w[1], ((w[1] - w[0]) / step).ceil() as usize))
            .collect::<Result<Vec<_>>>()?;
        let mut acc = QuadResult::default();
        for p in &parts {
            acc.value += p.value;
            acc.integrand_error += p.integrand_error;
            acc.evaluations += p.evaluations;
        }
        Ok(acc)
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(t >= 20.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("moment needs T >= 20, got {t}")));
    }
    Ok(())
}

fn estimate(parameter: f64, kind: MomentKind, q: &QuadResult, bits: u32, notes: String) -> MomentEstimate {
    MomentEstimate {
        parameter,
        kind,
        value: Float::with_val(bits, q.value),
        quadrature_error: q.total_error(),
        model_predictions: Default::default(),
        notes,
    }
}

fn panel_notes(zeros: &ZeroList, q: &QuadResult) -> String {
    let mut n = format!("zeros={} evaluations={}", zeros.len(), q.evaluations);
    if q.unresolved {
        n.push_str(" unresolved-panels");
    }
    for w in &zeros.warnings {
        n.push_str("; ");
        n.push_str(w);
    }
    n
}

/// Sharp-cutoff moments `int_0^T |zeta(1/2+it)|^power dt` for each `T` in
/// `ts`, from one sweep.
pub fn sharp_moments(power: Power, ts: &[f64], cfg: &MomentConfig) -> Result<Vec<MomentEstimate>> {
    for &t in ts {
        check_t(t)?;
    }
    let mut sorted = ts.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    let t_hi = *sorted.last().ok_or_else(|| Error::InvalidArgument("no T values".into()))?;
    let integ = CriticalIntegrator::new(t_hi, cfg)?;
    let zeros = integ.zeros(t_hi)?;
    let sums = integ.cumulative(&zeros, power, 0.0, &sorted)?;
    let consts = match power {
        Power::One => Some(ReferenceConstants::compute(cfg.prime_cutoff, &cfg.ctx)?),
        Power::Two => None,
    };
    let bits = cfg.ctx.bits();
    Ok(ts
        .iter()
        .map(|&t| {
            let i = sorted.iter().position(|&x| x == t).unwrap_or(0);
            let q = &sums[i];
            let below = ZeroList {
                ordinates: zeros.ordinates.iter().copied().filter(|&z| z <= t).collect(),
                range: (RS_T_MIN, t),
                warnings: zeros.warnings.clone(),
            };
            let notes = panel_notes(&below, q);
            match consts {
                Some(c) => {
                    let mut e = estimate(t, MomentKind::FirstSharp, q, bits, notes);
                    e.model_predictions = c.first_moment_models(t);
                    e
                }
                None => {
                    let mut e = estimate(t, MomentKind::SecondSharp, q, bits, notes);
                    e.model_predictions.insert(MODEL_SINGLE.to_string(), second_moment_model(t));
                    e
                }
            }
        })
        .collect())
}

/// `int_0^T |zeta(1/2 + it)| dt`, with both leading-term models.
pub fn first_moment_sharp(t: f64, cfg: &MomentConfig) -> Result<MomentEstimate> {
    Ok(sharp_moments(Power::One, &[t], cfg)?.remove(0))
}

/// `int_0^T |zeta(1/2 + it)|^2 dt`, with `T log(T/2 pi) + (2 gamma - 1) T`.
pub fn second_moment_sharp(t: f64, cfg: &MomentConfig) -> Result<MomentEstimate> {
    Ok(sharp_moments(Power::Two, &[t], cfg)?.remove(0))
}

/// `int_0^inf e^(-delta t) |zeta(1/2 + it)| dt`, truncated at `T* = 50 / delta`.
pub fn first_moment_laplace(delta: f64, cfg: &MomentConfig) -> Result<MomentEstimate> {
    if !(delta > 0.0 && delta <= 0.1) {
        return Err(Error::InvalidArgument(format!("delta must lie in (0, 0.1], got {delta}")));
    }
    let t_star = LAPLACE_CUTOFF / delta;
    if t_star > cfg.zeta_budget {
        return Err(Error::Resource(format!(
            "delta = {delta} needs T* = {t_star:.0}, beyond the zeta budget {}",
            cfg.zeta_budget
        )));
    }
    let integ = CriticalIntegrator::new(t_star, cfg)?;
    let zeros = integ.zeros(t_star)?;
    let q = integ.cumulative(&zeros, Power::One, delta, &[t_star])?.remove(0);
    // int_{T*}^inf e^(-delta t) 3 t^(1/6) log t dt, with the slowly varying factor
    // frozen at T* and doubled
    let tail = 2.0 * CONVEXITY_CONST * t_star.powf(1.0 / 6.0) * t_star.ln() * (-LAPLACE_CUTOFF).exp() / delta;
    let consts = ReferenceConstants::compute(cfg.prime_cutoff, &cfg.ctx)?;
    let mut e = estimate(delta, MomentKind::FirstLaplace, &q, cfg.ctx.bits(), panel_notes(&zeros, &q));
    e.quadrature_error += tail;
    e.notes.push_str(&format!(" t_star={}", mp::decimal_f64(t_star)));
    e.model_predictions = consts.laplace_models(delta);
    Ok(e)
}

/// `int_0^T |zeta(sigma + it)| dt` for `0.6 <= sigma <= 0.9`, with the mean-value
/// model `T g(2 sigma)`, `g(s) = sum a(n)^2 n^-s`.
pub fn fractional_moment_offline(sigma: f64, t: f64, cfg: &MomentConfig) -> Result<MomentEstimate> {
    if !(0.6..=0.9).contains(&sigma) {
        return Err(Error::InvalidArgument(format!("sigma must lie in [0.6, 0.9], got {sigma}")));
    }
    if !(t >= 100.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("off-line moment needs T >= 100, got {t}")));
    }
    let bits = cfg.ctx.bits();
    let line = VerticalLine::new(sigma, t, &sample_ctx()?)?;
    let f = |x: f64| {
        let z = line.eval(&Float::with_val(bits, x))?;
        Ok(Sample {
            value: z.abs().to_f64(),
            error: z.abs_error_bound.to_f64(),
        })
    };
    let pieces = (t / MAX_PANEL).ceil() as usize;
    let h = t / pieces as f64;
    let panels: Vec<(f64, f64)> = (0..pieces)
        .map(|i| (h * i as f64, if i + 1 == pieces { t } else { h * (i + 1) as f64 }))
        .collect();
    let parts: Vec<QuadResult> = panels
        .par_iter()
        .map(|&(a, b)| adaptive(&f, a, b, cfg.offline_tol * (b - a), MAX_DEPTH))
        .collect::<Result<Vec<_>>>()?;
    let mut q = QuadResult::default();
    for p in &parts {
        q.value += p.value;
        q.error += p.error;
        q.integrand_error += p.integrand_error;
        q.evaluations += p.evaluations;
        q.unresolved |= p.unresolved;
    }
    let spec = EulerProductSpec::new(cfg.prime_cutoff, cfg.ctx.clone())?;
    let g = g_product(2.0 * sigma, &spec)?;
    let notes = format!(
        "sigma={} evaluations={} g={}",
        mp::decimal_f64(sigma),
        q.evaluations,
        mp::decimal(&g.value, 20)
    );
    let mut e = estimate(t, MomentKind::FractionalOffLine, &q, bits, notes);
    e.model_predictions.insert(MODEL_SINGLE.to_string(), t * g.value.to_f64());
    Ok(e)
}
