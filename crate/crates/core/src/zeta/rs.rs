//! Riemann–Siegel evaluation of `Z(t) = exp(i theta(t)) zeta(1/2 + it)`.
//!
//! ```text
//! Z(t) = 2 sum_{n<=N} n^-1/2 cos(theta(t) - t ln n)
//!        + (-1)^(N-1) a^-1/2 sum_{k<=K} C_k(p) a^-k + R_K,
//! a = sqrt(t / 2 pi), N = floor(a), p = a - N.
//! ```
//!
//! The correction functions `C_0..C_4` are polynomials in `x = p - 1/2` built
//! once from the Taylor series of `Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)`,
//! which is entire, so a single expansion covers `0 <= p < 1`.

use std::sync::OnceLock;

use rug::ops::Pow;
use rug::Float;

use super::gamma::Bounded;
use super::precision::PrecisionContext;
use super::theta::theta;
use super::{Method, ZetaSample};
use crate::coeffs::smallest_prime_factors;
use crate::error::{Error, Result};
use crate::mp::{self, Complex};

/// Smallest `t` accepted by the Riemann–Siegel evaluator.
pub const RS_T_MIN: f64 = 10.0;

/// Highest correction index supported.
pub const MAX_TERMS: usize = 4;

/// `|R_K| <= c_K t^{-(2K+3)/4}` for `t >= 200` (Gabcke).
const REMAINDER_CONST: [f64; MAX_TERMS + 1] = [0.127, 0.053, 0.011, 0.031, 0.017];

/// Inflation of the remainder constants on `10 <= t < 200`, where the
/// published constants are not proven; sized from comparison with
/// Euler–Maclaurin over that range (see the `remainder_below_bound` test).
const SMALL_T_FACTOR: f64 = 4.0;

const TAYLOR_DEGREE: usize = 110;
const SERIES_BITS: u32 = 1024;

static CORRECTIONS: OnceLock<[Vec<f64>; MAX_TERMS + 1]> = OnceLock::new();

/// Taylor coefficients of `Psi` in `x = p - 1/2`:
/// `Psi = -cos(2 pi x^2 - 5 pi / 8) / cos(2 pi x)`.
fn psi_taylor() -> Vec<Float> {
    let prec = SERIES_BITS;
    let d = TAYLOR_DEGREE;
    let two_pi = Float::with_val(prec, mp::pi(prec) * 2u32);
    let phase = Float::with_val(prec, mp::pi(prec) * 5u32) / 8u32;
    let (sin_c, cos_c) = phase.sin_cos(Float::new(prec));

    // cos(2 pi x^2 - c) = cos c cos(2 pi x^2) + sin c sin(2 pi x^2)
    let mut num = vec![Float::new(prec); d + 1];
    let mut term = Float::with_val(prec, 1);
    for j in 0.. {
        let deg = 2 * j;
        if deg > d {
            break;
        }
        // term = (2 pi)^j / j!
        let sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
        let coeff = if j % 2 == 0 { &cos_c } else { &sin_c };
        num[deg] = Float::with_val(prec, &term * coeff) * sign;
        term *= &two_pi;
        term /= (j + 1) as u32;
    }

    // -cos(2 pi x)
    let mut den = vec![Float::new(prec); d + 1];
    let mut term = Float::with_val(prec, 1);
    for j in 0..=d {
        if j % 2 == 0 {
            let sign = if (j / 2) % 2 == 0 { -1 } else { 1 };
            den[j] = Float::with_val(prec, &term * sign);
        }
        term *= &two_pi;
        term /= (j + 1) as u32;
    }

    let mut q: Vec<Float> = Vec::with_capacity(d + 1);
    for n in 0..=d {
        let mut acc = num[n].clone();
        for j in 1..=n {
            acc -= Float::with_val(prec, &den[j] * &q[n - j]);
        }
        q.push(acc / &den[0]);
    }
    q
}

/// Polynomial (in `x`) of the `r`-th derivative of `Psi`.
fn derivative(a: &[Float], r: usize) -> Vec<Float> {
    (0..a.len().saturating_sub(r))
        .map(|j| {
            let mut c = a[j + r].clone();
            for i in (j + 1)..=(j + r) {
                c *= i as u32;
            }
            c
        })
        .collect()
}

fn build_corrections() -> [Vec<f64>; MAX_TERMS + 1] {
    let prec = SERIES_BITS;
    let a = psi_taylor();
    let pi = mp::pi(prec);
    let pi_pow = |k: u32| Float::with_val(prec, Pow::pow(&pi, k));
    // (derivative order, numerator, denominator, power of pi)
    let recipe: [&[(usize, i64, u64, u32)]; MAX_TERMS + 1] = [
        &[(0, 1, 1, 0)],
        &[(3, -1, 96, 2)],
        &[(2, 1, 64, 2), (6, 1, 18432, 4)],
        &[(1, -1, 64, 2), (5, -1, 3840, 4), (9, -1, 5_308_416, 6)],
        &[(0, 1, 128, 2), (4, 19, 24576, 4), (8, 11, 5_898_240, 6), (12, 1, 2_038_431_744, 8)],
    ];
    recipe.map(|terms| {
        let mut poly = vec![Float::new(prec); a.len()];
        for &(r, num, den, pk) in terms {
            let scale = Float::with_val(prec, num) / Float::with_val(prec, den) / pi_pow(pk);
            for (j, c) in derivative(&a, r).iter().enumerate() {
                poly[j] += Float::with_val(prec, c * &scale);
            }
        }
        let mut out: Vec<f64> = poly.iter().map(Float::to_f64).collect();
        while out.len() > 1 && out.last().is_some_and(|c| c.abs() < 1e-40) {
            out.pop();
        }
        out
    })
}

/// `C_k(p)` for `0 <= k <= 4`.
pub fn correction(k: usize, p: f64) -> f64 {
    let poly = &CORRECTIONS.get_or_init(build_corrections)[k];
    let x = p - 0.5;
    poly.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Bound on the Riemann–Siegel remainder after `terms` corrections.
pub fn rs_error_bound(t: f64, terms: usize) -> f64 {
    let k = terms.min(MAX_TERMS);
    let c = REMAINDER_CONST[k] * if t < 200.0 { SMALL_T_FACTOR } else { 1.0 };
    c * t.powf(-((2 * k + 3) as f64) / 4.0)
}

fn check_args(t: f64, terms: usize) -> Result<()> {
    if !(t >= RS_T_MIN) {
        return Err(Error::Domain(format!(
            "Riemann-Siegel needs t >= {RS_T_MIN}, got {t}"
        )));
    }
    if terms > MAX_TERMS {
        return Err(Error::InvalidArgument(format!(
            "at most {MAX_TERMS} correction terms, got {terms}"
        )));
    }
    Ok(())
}

/// `Z(t)` evaluation with `ln n` and `n^-1/2` tabulated for `t <= t_max`.
#[derive(Clone, Debug)]
pub struct CriticalLine {
    ctx: PrecisionContext,
    wp: u32,
    t_max: f64,
    ln_n: Vec<Float>,
    inv_sqrt: Vec<Float>,
    spf: Vec<u32>,
}

/// One `Z(t)` value together with the phase used to build it.
#[derive(Clone, Debug)]
pub struct ZValue {
    pub z: Float,
    pub theta: Float,
    pub abs_error: Float,
    pub theta_error: Float,
}

impl CriticalLine {
    pub fn new(t_max: f64, ctx: &PrecisionContext) -> Result<Self> {
        check_args(t_max, 0)?;
        let n_max = (t_max / (2.0 * std::f64::consts::PI)).sqrt().floor() as usize + 1;
        let wp = ctx.working(16 + 2 * mp::magnitude_bits(t_max * (n_max as f64).ln().max(1.0)));
        let mut ln_n = Vec::with_capacity(n_max + 1);
        let mut inv_sqrt = Vec::with_capacity(n_max + 1);
        ln_n.push(Float::new(wp));
        inv_sqrt.push(Float::new(wp));
        for n in 1..=n_max {
            ln_n.push(Float::with_val(wp, n).ln());
            inv_sqrt.push(Float::with_val(wp, n).recip_sqrt());
        }
        Ok(CriticalLine {
            ctx: ctx.clone(),
            wp,
            t_max,
            ln_n,
            inv_sqrt,
            spf: smallest_prime_factors(n_max),
        })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn context(&self) -> &PrecisionContext {
        &self.ctx
    }

    /// `Z(t)` with `terms` corrections, `RS_T_MIN <= t <= t_max`.
    pub fn z(&self, t: &Float, terms: usize) -> Result<ZValue> {
        let tf = t.to_f64();
        check_args(tf, terms)?;
        if tf > self.t_max * (1.0 + 1e-12) {
            return Err(Error::Range(format!("t = {tf} beyond table limit {}", self.t_max)));
        }
        let wp = self.wp;
        let th = theta(t, &PrecisionContext::new(wp)?)?;
        let tw = Float::with_val(wp, t);
        let a = Float::with_val(wp, &tw / (mp::pi(wp) * 2u32)).sqrt();
        let n = a.to_f64().floor() as usize;
        let n = if Float::with_val(wp, n + 1) <= a { n + 1 } else { n };
        let p = Float::with_val(wp, &a - n).to_f64();

        // cos(theta - t ln k) = cos theta cos(t ln k) + sin theta sin(t ln k), with
        // (cos, sin)(t ln k) built multiplicatively from the prime factors of k
        let (s_th, c_th) = th.value.clone().sin_cos(Float::new(wp));
        let mut sum = Float::with_val(wp, &c_th);
        let mut phase: Vec<(Float, Float)> = Vec::with_capacity(n + 1);
        phase.push((Float::new(wp), Float::new(wp)));
        phase.push((Float::with_val(wp, 1), Float::new(wp)));
        for k in 2..=n {
            let p = self.spf[k] as usize;
            let (ck, sk) = if p == k {
                let (sk, ck) = Float::with_val(wp, &tw * &self.ln_n[k]).sin_cos(Float::new(wp));
                (ck, sk)
            } else {
                let (cp, sp) = &phase[p];
                let (cm, sm) = &phase[k / p];
                (
                    Float::with_val(wp, cp * cm) - Float::with_val(wp, sp * sm),
                    Float::with_val(wp, sp * cm) + Float::with_val(wp, cp * sm),
                )
            };
            let term = Float::with_val(wp, &c_th * &ck) + Float::with_val(wp, &s_th * &sk);
            sum += term * &self.inv_sqrt[k];
            phase.push((ck, sk));
        }
        sum *= 2u32;

        let af = a.to_f64();
        let mut corr = 0.0;
        let mut scale = 1.0;
        for k in 0..=terms {
            corr += correction(k, p) * scale;
            scale /= af;
        }
        corr /= af.sqrt();
        if n % 2 == 0 {
            corr = -corr;
        }
        sum += corr;

        let theta_err = th.abs_error.to_f64();
        let rounding = 8.0 * (n as f64 + 4.0) * (tf * (n as f64).ln().max(1.0) + 6.0 * (n as f64).log2().max(1.0) + 8.0)
            * mp::pow2(-(wp as i64))
            + 1e-15 * corr.abs()
            + 1e-16;
        let err = rs_error_bound(tf, terms) + rounding + theta_err * 4.0 * (n as f64).sqrt();
        Ok(ZValue {
            z: Float::with_val(self.ctx.bits(), sum),
            theta: Float::with_val(self.ctx.bits(), th.value),
            abs_error: Float::with_val(self.ctx.bits(), err),
            theta_error: th.abs_error,
        })
    }

    /// `zeta(1/2 + it)` rebuilt from `Z(t)` and the phase.
    pub fn zeta(&self, t: &Float, terms: usize) -> Result<ZetaSample> {
        let zv = self.z(t, terms)?;
        let bits = self.ctx.bits();
        let (s_th, c_th) = zv.theta.clone().sin_cos(Float::new(bits));
        let value = Complex::new(
            Float::with_val(bits, &zv.z * &c_th),
            Float::with_val(bits, -Float::with_val(bits, &zv.z * &s_th)),
        );
        let bound = Float::with_val(bits, &zv.abs_error + Float::with_val(bits, &zv.theta_error * zv.z.clone().abs()));
        Ok(ZetaSample {
            s: Complex::new(Float::with_val(bits, 0.5), t.clone()),
            value,
            method: Method::RiemannSiegel,
            abs_error_bound: bound,
        })
    }
}

/// `Z(t)` at a single point.
pub fn z_function(t: &Float, terms: usize, ctx: &PrecisionContext) -> Result<Bounded<Float>> {
    let zv = CriticalLine::new(t.to_f64(), ctx)?.z(t, terms)?;
    Ok(Bounded {
        value: zv.z,
        abs_error: zv.abs_error,
    })
}

/// `zeta(1/2 + it)` by Riemann–Siegel with `terms` corrections.
pub fn zeta_rs(t: &Float, terms: usize, ctx: &PrecisionContext) -> Result<ZetaSample> {
    CriticalLine::new(t.to_f64(), ctx)?.zeta(t, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::em::zeta_em;

    #[test]
    fn c0_at_half() {
        // Psi(1/2) = -cos(5 pi / 8)
        let want = -(5.0 * std::f64::consts::PI / 8.0).cos();
        assert!((correction(0, 0.5) - want).abs() < 1e-15);
    }

    #[test]
    fn c0_matches_closed_form_away_from_poles() {
        for p in [0.0, 0.1, 0.3, 0.6, 0.9, 0.99] {
            let pi = std::f64::consts::PI;
            let want = (2.0 * pi * (p * p - p - 1.0 / 16.0)).cos() / (2.0 * pi * p).cos();
            assert!((correction(0, p) - want).abs() < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn corrections_are_symmetric() {
        // C_k(1 - p) = (-1)^k C_k(p)
        for k in 0..=MAX_TERMS {
            for p in [0.05, 0.2, 0.37] {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let d = correction(k, 1.0 - p) - sign * correction(k, p);
                assert!(d.abs() < 1e-12, "k = {k}, p = {p}");
            }
        }
    }

    #[test]
    fn known_values() {
        // tabulated: C1(1/2) = 0, C2(1/2) ~ 0.005188, C0(0) ~ 0.92388
        assert!(correction(1, 0.5).abs() < 1e-15);
        assert!((correction(2, 0.5) - 0.005188).abs() < 5e-6);
        assert!((correction(0, 0.0) - 0.9238795).abs() < 1e-6);
    }

    #[test]
    fn remainder_below_bound() {
        let ctx = PrecisionContext::new(128).unwrap();
        let line = CriticalLine::new(400.0, &ctx).unwrap();
        let mut t = 10.0;
        while t < 400.0 {
            let tf = Float::with_val(128, t);
            let em = zeta_em(&Complex::from_f64(128, 0.5, t), &ctx).unwrap();
            for terms in 0..=MAX_TERMS {
                let rs = line.zeta(&tf, terms).unwrap();
                let d = (&rs.value - &em.value).abs().to_f64();
                assert!(
                    d <= rs.abs_error_bound.to_f64(),
                    "t = {t}, terms = {terms}: diff {d:e} > bound {}",
                    rs.abs_error_bound
                );
            }
            t += 1.37;
        }
    }

    #[test]
    fn first_zero() {
        let ctx = PrecisionContext::new(128).unwrap();
        let line = CriticalLine::new(20.0, &ctx).unwrap();
        let z = |t: f64| line.z(&Float::with_val(128, t), 4).unwrap().z.to_f64();
        let (mut lo, mut hi) = (14.0, 14.3);
        assert!(z(lo) * z(hi) < 0.0);
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if z(lo) * z(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert!(z(lo).abs() < 1e-6);
        // within the remainder bound of the true ordinate
        assert!((lo - 14.134725141734693).abs() < 1e-4);
    }

    #[test]
    fn below_floor_is_domain_error() {
        let ctx = PrecisionContext::new(64).unwrap();
        assert!(matches!(
            zeta_rs(&Float::with_val(64, 9.0), 4, &ctx),
            Err(Error::Domain(_))
        ));
    }
}
