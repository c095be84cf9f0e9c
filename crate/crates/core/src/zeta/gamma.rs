//! Complex log-gamma by the Stirling series after an upward shift.

use rug::Float;

use super::bernoulli::{self, ln_b2k_over_factorial, ln_factorial, MAX_K};
use super::precision::PrecisionContext;
use crate::error::{Error, Result};
use crate::mp::{self, Complex};

/// A value together with an absolute error bound.
#[derive(Clone, Debug)]
pub struct Bounded<T> {
    pub value: T,
    pub abs_error: Float,
}

pub(crate) struct StirlingPlan {
    pub shift: u32,
    pub terms: usize,
}

/// `ln` of the Stirling remainder bound after `m` terms at `w` with `|w| = r`
/// and `arg w = phi` (|phi| < pi/2 + …): `|B_{2m+2}| / ((2m+2)(2m+1) r^{2m+1}) sec^{2m+2}(phi/2)`.
pub(crate) fn ln_stirling_remainder(m: usize, r: f64, phi: f64) -> f64 {
    let k = m + 1;
    // |B_2k|/(2k(2k-1)) = |B_2k|/(2k)! * (2k-2)!
    ln_b2k_over_factorial(k) + ln_factorial(2 * k - 2) - (2 * k - 1) as f64 * r.ln()
        - (2 * k) as f64 * (phi / 2.0).cos().ln()
}

/// Choose a shift `n` (so that `z + n` is far enough out) and a Stirling depth.
pub(crate) fn plan_stirling(re: f64, im: f64, target_ln: f64) -> Result<StirlingPlan> {
    let mut best: Option<(f64, StirlingPlan)> = None;
    let base_shift = if re < 1.0 { (1.0 - re).ceil() as u32 } else { 0 };
    for extra in 0..2000u32 {
        let shift = base_shift + extra;
        let x = re + shift as f64;
        let r = x.hypot(im);
        let phi = im.atan2(x);
        let mut found = None;
        for m in 1..MAX_K {
            let b = ln_stirling_remainder(m, r, phi);
            if b <= target_ln {
                found = Some(m);
                break;
            }
            // terms started to grow: no point going further at this shift
            if m > 4 && b > ln_stirling_remainder(m - 1, r, phi) {
                break;
            }
        }
        if let Some(m) = found {
            let cost = shift as f64 * 1.5 + m as f64;
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                best = Some((cost, StirlingPlan { shift, terms: m }));
            }
        }
        if let Some((c, _)) = &best {
            if shift as f64 * 1.5 > *c {
                break;
            }
        }
    }
    best.map(|(_, p)| p).ok_or_else(|| {
        Error::Precision(format!("no Stirling plan for z = {re} + {im}i"))
    })
}

fn is_nonpositive_integer(z: &Complex) -> bool {
    z.im.is_zero() && z.re <= 0 && z.re.is_integer()
}

/// Principal log-gamma: analytic on the plane cut along `(-inf, 0]`, real on
/// the positive axis.
pub fn loggamma(z: &Complex, ctx: &PrecisionContext) -> Result<Bounded<Complex>> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("gamma at {}", mp::decimal(&z.re, 20))));
    }
    let (re, im) = z.to_f64();
    let target_ln = ctx.target_log2() * std::f64::consts::LN_2 - 2.0;
    let plan = plan_stirling(re, im, target_ln)?;
    let mag = (re.abs() + im.abs() + plan.shift as f64 + 2.0).log2().ceil() as u32;
    let wp = ctx.working(24 + 2 * mag);

    let z = z.with_prec(wp);
    let w = z.add_real(&Float::with_val(wp, plan.shift));

    // (w - 1/2) ln w - w + ln(2 pi)/2
    let ln_w = w.ln();
    let half = Float::with_val(wp, 0.5);
    let w_half = w.add_real(&Float::with_val(wp, -&half));
    let mut acc = &(&w_half * &ln_w) - &w;
    let ln_2pi = Float::with_val(wp, mp::pi(wp) * 2u32).ln();
    acc.re += Float::with_val(wp, &ln_2pi * &half);

    // sum_k B_2k / (2k (2k-1) w^{2k-1})
    let inv_w = w.recip();
    let inv_w2 = inv_w.sqr();
    let mut pow = inv_w.clone();
    for k in 1..=plan.terms {
        let c = Float::with_val(wp, bernoulli::b2k(k)) / ((2 * k * (2 * k - 1)) as u32);
        acc = &acc + &pow.scale(&c);
        pow = &pow * &inv_w2;
    }

    for j in 0..plan.shift {
        let zj = z.add_real(&Float::with_val(wp, j));
        acc = &acc - &zj.ln();
    }

    let r = w.abs().to_f64();
    let phi = w.arg().to_f64();
    let trunc = ln_stirling_remainder(plan.terms, r, phi).exp();
    let scale = r * r.ln().abs().max(1.0) + plan.shift as f64 * (r.ln().abs() + 4.0);
    let rounding = 8.0 * (plan.shift as f64 + plan.terms as f64 + 8.0) * scale * mp::pow2(-(wp as i64));
    let err = Float::with_val(ctx.bits(), trunc) + Float::with_val(ctx.bits(), rounding);
    Ok(Bounded {
        value: acc.with_prec(ctx.bits()),
        abs_error: err,
    })
}

/// `Gamma(z)`; pole error at non-positive integers.
pub fn gamma(z: &Complex, ctx: &PrecisionContext) -> Result<Bounded<Complex>> {
    let lg = loggamma(z, ctx)?;
    let wp = ctx.working(16);
    let v = lg.value.with_prec(wp).exp();
    let e = lg.abs_error.to_f64();
    // |exp(a + d) - exp(a)| <= |exp(a)| (e^|d| - 1)
    let rel = e.exp_m1() * 1.0001;
    let abs_err = Float::with_val(ctx.bits(), v.abs() * rel);
    Ok(Bounded {
        value: v.with_prec(ctx.bits()),
        abs_error: abs_err,
    })
}

/// Real `Gamma(x)` for real `x` not a non-positive integer.
pub fn gamma_real(x: &Float, ctx: &PrecisionContext) -> Result<Bounded<Float>> {
    let g = gamma(&Complex::from_real(x.clone()), ctx)?;
    Ok(Bounded {
        value: g.value.re,
        abs_error: g.abs_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    #[test]
    fn gamma_one_and_half() {
        let c = ctx(128);
        let g1 = gamma_real(&Float::with_val(128, 1), &c).unwrap();
        assert!(Float::with_val(128, &g1.value - 1u32).abs() < 1e-36);
        let gh = gamma_real(&Float::with_val(128, 0.5), &c).unwrap();
        let sqrt_pi = mp::pi(128).sqrt();
        assert!(Float::with_val(128, &gh.value - &sqrt_pi).abs() < 1e-36);
        assert!(gh.abs_error < 1e-36);
    }

    #[test]
    fn reflection_quarter() {
        // Gamma(1/4) Gamma(3/4) = pi sqrt 2
        let c = ctx(160);
        let a = gamma_real(&Float::with_val(160, 0.25), &c).unwrap();
        let b = gamma_real(&Float::with_val(160, 0.75), &c).unwrap();
        let lhs = Float::with_val(160, &a.value * &b.value);
        let rhs = mp::pi(160) * Float::with_val(160, 2u32).sqrt();
        assert!(Float::with_val(160, lhs - rhs).abs() < 1e-40);
    }

    #[test]
    fn recurrence_five_quarters() {
        let c = ctx(128);
        let a = gamma_real(&Float::with_val(128, 1.25), &c).unwrap();
        let b = gamma_real(&Float::with_val(128, 0.25), &c).unwrap();
        let d = Float::with_val(128, &a.value - Float::with_val(128, &b.value / 4u32));
        assert!(d.abs() < 1e-35);
    }

    #[test]
    fn matches_mpfr_real_gamma() {
        let c = ctx(200);
        for x in [0.1, 2.5, 7.75, 33.3, -0.5, -3.25] {
            let g = gamma_real(&Float::with_val(200, x), &c).unwrap();
            let r = Float::with_val(200, x).gamma();
            let rel = (Float::with_val(200, &g.value - &r) / &r).abs();
            assert!(rel < 1e-55, "x = {x}: rel {rel}");
        }
    }

    #[test]
    fn complex_recurrence_and_conjugation() {
        let c = ctx(128);
        let z = Complex::from_f64(128, 0.3, 17.0);
        let gz = gamma(&z, &c).unwrap().value;
        let gz1 = gamma(&z.add_real(&Float::with_val(128, 1)), &c).unwrap().value;
        let d = (&gz1 - &(&z * &gz)).abs() / gz1.abs();
        assert!(d < 1e-33);
        let gc = gamma(&z.conj(), &c).unwrap().value;
        assert!((&gc - &gz.conj()).abs() / gz.abs() < 1e-33);
    }

    #[test]
    fn loggamma_is_continuous_branch() {
        // Im loggamma(1/2 + it) grows like t log t; principal loggamma has no 2pi jumps.
        let c = ctx(128);
        let mut prev: Option<f64> = None;
        for i in 0..400 {
            let t = i as f64 * 0.25;
            let v = loggamma(&Complex::from_f64(128, 0.5, t), &c).unwrap().value.im.to_f64();
            if let Some(p) = prev {
                assert!((v - p).abs() < 2.0, "jump at t = {t}");
            }
            prev = Some(v);
        }
    }

    #[test]
    fn poles() {
        let c = ctx(64);
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(
                gamma(&Complex::from_f64(64, x, 0.0), &c),
                Err(Error::Pole(_))
            ));
        }
    }
}
