//! Riemann–Siegel theta, `theta(t) = Im lnGamma(1/4 + it/2) - (t/2) ln pi`.
//!
//! Evaluated with real arithmetic only: the imaginary part of the Stirling
//! series written in polar form. It does not go through [`super::gamma`], so
//! the reality of `Z(t)` can be checked against an independent phase.

use rug::Float;

use super::bernoulli;
use super::gamma::{plan_stirling, Bounded};
use super::precision::PrecisionContext;
use crate::error::{Error, Result};
use crate::mp;

/// `theta(t)` with an absolute error bound, for real `t > 0`.
pub fn theta(t: &Float, ctx: &PrecisionContext) -> Result<Bounded<Float>> {
    let tf = t.to_f64();
    if !(tf > 0.0) {
        return Err(Error::Domain("theta needs t > 0".into()));
    }
    let target_ln = ctx.target_log2() * std::f64::consts::LN_2 - 2.0;
    let plan = plan_stirling(0.25, tf / 2.0, target_ln)?;
    let wp = ctx.working(32 + 2 * mp::magnitude_bits(tf + plan.shift as f64));

    let y = Float::with_val(wp, t / 2u32);
    let x = Float::with_val(wp, 0.25) + plan.shift;
    // w = x + iy in polar form
    let r2 = Float::with_val(wp, x.square_ref()) + Float::with_val(wp, y.square_ref());
    let r = Float::with_val(wp, r2.sqrt_ref());
    let phi = Float::with_val(wp, y.atan2_ref(&x));

    // Im[(w - 1/2) ln w - w] = (x - 1/2) phi + y ln r - y
    let ln_r = Float::with_val(wp, r.ln_ref());
    let mut acc = Float::with_val(wp, &x - 0.5f64) * &phi;
    acc += Float::with_val(wp, &y * &ln_r);
    acc -= &y;

    // Im[B_2k / (2k(2k-1)) w^{-(2k-1)}] = -B_2k/(2k(2k-1)) r^{-(2k-1)} sin((2k-1) phi)
    let (s1, c1) = phi.clone().sin_cos(Float::new(wp));
    let two_phi = Float::with_val(wp, &phi * 2u32);
    let (s2, c2) = two_phi.sin_cos(Float::new(wp));
    let inv_r = Float::with_val(wp, r.recip_ref());
    let inv_r2 = Float::with_val(wp, inv_r.square_ref());
    let mut rp = inv_r.clone();
    let (mut sk, mut ck) = (s1, c1);
    for k in 1..=plan.terms {
        let c = Float::with_val(wp, bernoulli::b2k(k)) / ((2 * k * (2 * k - 1)) as u32);
        acc -= c * &rp * &sk;
        rp *= &inv_r2;
        // angle (2k-1) phi -> (2k+1) phi
        let ns = Float::with_val(wp, &sk * &c2) + Float::with_val(wp, &ck * &s2);
        let nc = Float::with_val(wp, &ck * &c2) - Float::with_val(wp, &sk * &s2);
        sk = ns;
        ck = nc;
    }

    // undo the shift: Im ln(1/4 + j + iy) = atan2(y, 1/4 + j)
    for j in 0..plan.shift {
        let xj = Float::with_val(wp, 0.25) + j;
        acc -= Float::with_val(wp, y.atan2_ref(&xj));
    }

    let ln_pi = mp::pi(wp).ln();
    acc -= y * ln_pi;

    let rf = r.to_f64();
    let trunc = super::gamma::ln_stirling_remainder(plan.terms, rf, phi.to_f64()).exp();
    let rounding = 16.0
        * (plan.terms as f64 + plan.shift as f64 + 8.0)
        * (tf * tf.ln().abs().max(1.0) + 10.0)
        * mp::pow2(-(wp as i64));
    Ok(Bounded {
        value: Float::with_val(ctx.bits(), acc),
        abs_error: Float::with_val(ctx.bits(), trunc + rounding),
    })
}

/// Leading terms of the large-`t` expansion, f64 only; used for counting estimates.
pub fn theta_asymptotic_f64(t: f64) -> f64 {
    use std::f64::consts::PI;
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0 + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::Complex;
    use crate::zeta::gamma::loggamma;

    #[test]
    fn agrees_with_loggamma() {
        let ctx = PrecisionContext::new(192).unwrap();
        for t in [0.5, 3.0, 14.134725, 100.0, 1234.5] {
            let tf = Float::with_val(192, t);
            let th = theta(&tf, &ctx).unwrap();
            let lg = loggamma(&Complex::from_f64(192, 0.25, t / 2.0), &ctx).unwrap();
            let other = lg.value.im - Float::with_val(192, &tf / 2u32) * mp::pi(192).ln();
            let d = Float::with_val(192, &th.value - &other).abs();
            assert!(d < 1e-50, "t = {t}: {d}");
            assert!(th.abs_error < 1e-50);
        }
    }

    #[test]
    fn asymptotic_is_close_at_large_t() {
        let ctx = PrecisionContext::new(64).unwrap();
        let t = 1000.0;
        let th = theta(&Float::with_val(64, t), &ctx).unwrap().value.to_f64();
        assert!((th - theta_asymptotic_f64(t)).abs() < 1e-9);
    }

    #[test]
    fn rejects_nonpositive() {
        let ctx = PrecisionContext::new(64).unwrap();
        assert!(theta(&Float::with_val(64, 0.0), &ctx).is_err());
    }
}
