//! Euler–Maclaurin evaluation of `zeta(s)` with a rigorous remainder bound.
//!
//! ```text
//! zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2 + sum_{k=1}^{m} T_k + R_m,
//! T_k = B_2k/(2k)! s(s+1)...(s+2k-2) N^(1-s-2k),
//! |R_m| <= |s+2m+1| / (sigma+2m+1) |T_{m+1}|        (sigma > -2m-1)
//! ```
//!
//! `(N, m)` is chosen per point to minimise work subject to the bound.

use rug::Float;

use super::bernoulli::{self, ln_b2k_over_factorial, MAX_K};
use super::precision::PrecisionContext;
use super::{Method, ZetaSample};
use crate::coeffs::smallest_prime_factors;
use crate::error::{Error, Result};
use crate::mp::{self, Complex};

/// Largest main-sum length the planner will consider.
pub const MAX_TERMS: usize = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct EmPlan {
    pub n: usize,
    pub m: usize,
    /// `ln` of the remainder bound (may be `-inf`).
    pub bound_ln: f64,
    /// `ln` of the largest intermediate magnitude.
    pub max_ln: f64,
}

impl EmPlan {
    pub fn guard_bits(&self) -> u32 {
        let mag = (self.max_ln / std::f64::consts::LN_2).max(0.0).ceil() as u32;
        mag + mp::magnitude_bits((self.n + self.m + 4) as f64) + 12
    }
}

fn ln_abs_shift(re: f64, im: f64, j: f64) -> f64 {
    (re + j).hypot(im).ln()
}

/// Smallest `m` meeting `target_ln` at main-sum length `n`, with the bound
/// and the largest term size seen.
fn depth_for(re: f64, im: f64, n: usize, target_ln: f64) -> Option<(usize, f64, f64)> {
    let ln_n = (n as f64).ln();
    // S_k = sum_{j=0}^{2k-2} ln|s+j|
    let mut s_k = ln_abs_shift(re, im, 0.0);
    let mut max_ln = f64::NEG_INFINITY;
    let mut prev = f64::INFINITY;
    for m in 0..MAX_K - 1 {
        let k = m + 1;
        let l_next = ln_b2k_over_factorial(k) + s_k + (1.0 - re - 2.0 * k as f64) * ln_n;
        let denom = re + 2.0 * m as f64 + 1.0;
        if denom > 0.0 {
            let bound = ln_abs_shift(re, im, 2.0 * m as f64 + 1.0) - denom.ln() + l_next;
            if bound <= target_ln || bound == f64::NEG_INFINITY {
                return Some((m, bound, max_ln));
            }
            if m > 2 && bound > prev {
                return None;
            }
            prev = bound;
        }
        max_ln = max_ln.max(l_next);
        s_k += ln_abs_shift(re, im, 2.0 * k as f64 - 1.0) + ln_abs_shift(re, im, 2.0 * k as f64);
    }
    None
}

pub(crate) fn plan_em(re: f64, im: f64, target_ln: f64) -> Result<EmPlan> {
    let mut best: Option<(f64, EmPlan)> = None;
    let mut n_f = 1.0f64;
    loop {
        let n = n_f.ceil() as usize;
        n_f = (n_f * 1.08).max(n_f + 1.0);
        if n > MAX_TERMS {
            break;
        }
        if let Some((_, b)) = &best {
            if 3.0 * n as f64 > b.n as f64 * 3.0 + b.m as f64 {
                break;
            }
        }
        if let Some((m, bound_ln, max_term)) = depth_for(re, im, n, target_ln) {
            let cost = 3.0 * n as f64 + m as f64;
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                let ln_n = (n as f64).ln();
                let head = ln_n + (-re * ln_n).max(0.0);
                let pole = (1.0 - re) * ln_n - ((re - 1.0).hypot(im)).ln();
                let plan = EmPlan {
                    n,
                    m,
                    bound_ln,
                    max_ln: max_term.max(head).max(pole),
                };
                best = Some((cost, plan));
            }
        }
    }
    best.map(|(_, p)| p).ok_or_else(|| {
        Error::Precision(format!(
            "Euler-Maclaurin cannot reach 2^{:.0} at s = {re} + {im}i within {MAX_TERMS} terms",
            target_ln / std::f64::consts::LN_2
        ))
    })
}

fn target_ln(ctx: &PrecisionContext) -> f64 {
    // leave half of the budget for rounding
    (ctx.target_log2() - 1.0) * std::f64::consts::LN_2
}

fn is_pole(s: &Complex) -> bool {
    s.im.is_zero() && s.re == 1
}

/// Tail part of the formula (everything after the main sum), at precision `wp`.
fn em_tail(s: &Complex, plan: &EmPlan, wp: u32) -> Complex {
    let n = plan.n;
    let n_f = Float::with_val(wp, n);
    let ln_n = Float::with_val(wp, n_f.ln_ref());
    let n_pow = (-s).with_prec(wp).exp_scaled(&ln_n); // N^-s
    let one = Float::with_val(wp, 1);
    let s_minus_1 = s.with_prec(wp).add_real(&Float::with_val(wp, -&one));
    let mut acc = n_pow.scale(&n_f).div(&s_minus_1);
    acc = &acc + &n_pow.scale(&Float::with_val(wp, 0.5));

    let n2 = Float::with_val(wp, n_f.square_ref());
    let sw = s.with_prec(wp);
    // u_1 = s N^-s / (2N)
    let mut u = (&sw * &n_pow).scale(&(Float::with_val(wp, n_f.recip_ref()) / 2u32));
    for k in 1..=plan.m {
        let b = Float::with_val(wp, bernoulli::b2k(k));
        acc = &acc + &u.scale(&b);
        let a = sw.add_real(&Float::with_val(wp, 2 * k - 1));
        let c = sw.add_real(&Float::with_val(wp, 2 * k));
        let d = Float::with_val(wp, &n2 * ((2 * k + 1) * (2 * k + 2)) as u32);
        u = (&(&u * &a) * &c).scale(&Float::with_val(wp, d.recip_ref()));
    }
    acc
}

fn rounding_bound(plan: &EmPlan, wp: u32) -> f64 {
    let terms = (plan.n + plan.m + 8) as f64;
    8.0 * terms * plan.max_ln.exp().max(1.0) * mp::pow2(-(wp as i64))
}

fn error_bound(plan: &EmPlan, wp: u32, bits: u32) -> Float {
    let trunc = if plan.bound_ln == f64::NEG_INFINITY {
        0.0
    } else {
        plan.bound_ln.exp()
    };
    Float::with_val(bits, trunc + rounding_bound(plan, wp))
}

/// `zeta(s)` anywhere except the pole, to `ctx.target_abs_error`.
pub fn zeta_em(s: &Complex, ctx: &PrecisionContext) -> Result<ZetaSample> {
    if is_pole(s) {
        return Err(Error::Pole("zeta at s = 1".into()));
    }
    let (re, im) = s.to_f64();
    let plan = plan_em(re, im, target_ln(ctx))?;
    let wp = ctx.working(plan.guard_bits());
    let sw = s.with_prec(wp);
    let mut acc = Complex::zero(wp);
    for n in 1..plan.n {
        let ln_n = Float::with_val(wp, n).ln();
        acc = &acc + &(-&sw).exp_scaled(&ln_n);
    }
    acc = &acc + &em_tail(&sw, &plan, wp);
    Ok(ZetaSample {
        s: s.clone(),
        value: acc.with_prec(ctx.bits()),
        method: Method::EulerMaclaurin,
        abs_error_bound: error_bound(&plan, wp, ctx.bits()),
    })
}

/// Repeated evaluation along a vertical line `Re s = sigma` for `0 <= t <= t_max`,
/// with `ln n` and `n^-sigma` tabulated once. Phases `n^-it` are computed
/// directly only at primes and multiplied together elsewhere.
#[derive(Clone, Debug)]
pub struct VerticalLine {
    sigma: Float,
    ctx: PrecisionContext,
    wp: u32,
    ln_n: Vec<Float>,
    pow_sigma: Vec<Float>,
    spf: Vec<u32>,
}

impl VerticalLine {
    pub fn new(sigma: f64, t_max: f64, ctx: &PrecisionContext) -> Result<Self> {
        if !(t_max >= 0.0 && t_max.is_finite()) {
            return Err(Error::InvalidArgument(format!("t_max = {t_max}")));
        }
        let tl = target_ln(ctx);
        let mut n_max = 1;
        let mut guard = 0;
        for i in 0..=16 {
            let t = t_max * i as f64 / 16.0;
            if sigma == 1.0 && t == 0.0 {
                continue;
            }
            let p = plan_em(sigma, t, tl)?;
            n_max = n_max.max(p.n);
            guard = guard.max(p.guard_bits());
        }
        let wp = ctx.working(guard + 8);
        let sig = Float::with_val(wp, sigma);
        let mut ln_n = Vec::with_capacity(n_max + 1);
        let mut pow_sigma = Vec::with_capacity(n_max + 1);
        ln_n.push(Float::new(wp));
        pow_sigma.push(Float::new(wp));
        for n in 1..=n_max {
            let l = Float::with_val(wp, n).ln();
            pow_sigma.push(Float::with_val(wp, -Float::with_val(wp, &sig * &l)).exp());
            ln_n.push(l);
        }
        Ok(VerticalLine {
            sigma: sig,
            ctx: ctx.clone(),
            wp,
            ln_n,
            pow_sigma,
            spf: smallest_prime_factors(n_max),
        })
    }

    pub fn sigma(&self) -> &Float {
        &self.sigma
    }

    pub fn eval(&self, t: &Float) -> Result<ZetaSample> {
        let s = Complex::new(Float::with_val(self.ctx.bits(), &self.sigma), t.clone());
        let plan = plan_em(self.sigma.to_f64(), t.to_f64(), target_ln(&self.ctx))?;
        if plan.n >= self.ln_n.len() || self.ctx.working(plan.guard_bits()) > self.wp {
            return zeta_em(&s, &self.ctx);
        }
        if is_pole(&s) {
            return Err(Error::Pole("zeta at s = 1".into()));
        }
        let wp = self.wp;
        let tw = Float::with_val(wp, t);
        let mut re = Float::with_val(wp, 1);
        let mut im = Float::new(wp);
        // (cos, sin) of t ln n
        let mut phase: Vec<(Float, Float)> = Vec::with_capacity(plan.n.max(2));
        phase.push((Float::new(wp), Float::new(wp)));
        phase.push((Float::with_val(wp, 1), Float::new(wp)));
        for n in 2..plan.n {
            let p = self.spf[n] as usize;
            let (cn, sn) = if p == n {
                let arg = Float::with_val(wp, &tw * &self.ln_n[n]);
                let (sn, cn) = arg.sin_cos(Float::new(wp));
                (cn, sn)
            } else {
                let (cp, sp) = &phase[p];
                let (cm, sm) = &phase[n / p];
                (
                    Float::with_val(wp, cp * cm) - Float::with_val(wp, sp * sm),
                    Float::with_val(wp, sp * cm) + Float::with_val(wp, cp * sm),
                )
            };
            re += Float::with_val(wp, &self.pow_sigma[n] * &cn);
            im -= Float::with_val(wp, &self.pow_sigma[n] * &sn);
            phase.push((cn, sn));
        }
        let sw = Complex::new(self.sigma.clone(), tw);
        let acc = &Complex::new(re, im) + &em_tail(&sw, &plan, wp);
        // products along a factorization chain add at most 6 log2 n roundings,
        // and the prime phases carry |t| ln n ulps
        let n = plan.n as f64;
        let chain = (6.0 * n.log2().max(1.0) + t.to_f64().abs() * n.ln() + 8.0) * n * mp::pow2(-(wp as i64));
        let mut bound = error_bound(&plan, wp, self.ctx.bits());
        bound += chain;
        Ok(ZetaSample {
            s,
            value: acc.with_prec(self.ctx.bits()),
            method: Method::EulerMaclaurin,
            abs_error_bound: bound,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let c = ctx(192);
        let z = zeta_em(&Complex::from_f64(192, 2.0, 0.0), &c).unwrap();
        let exact = mp::pi(192).square() / 6u32;
        let d = Float::with_val(192, &z.value.re - &exact).abs();
        assert!(d < 1e-55, "{d}");
        assert!(z.value.im.is_zero());
        assert!(z.abs_error_bound <= 1e-55);
    }

    #[test]
    fn zeta_zero_and_negative_one() {
        let c = ctx(128);
        let z0 = zeta_em(&Complex::from_f64(128, 0.0, 0.0), &c).unwrap();
        assert!(Float::with_val(128, &z0.value.re + 0.5f64).abs() < 1e-35);
        let zm1 = zeta_em(&Complex::from_f64(128, -1.0, 0.0), &c).unwrap();
        let want = Float::with_val(128, -1) / 12u32;
        assert!(Float::with_val(128, &zm1.value.re - &want).abs() < 1e-35);
    }

    #[test]
    fn zeta_half_two_precisions() {
        let a = zeta_em(&Complex::from_f64(128, 0.5, 0.0), &ctx(128)).unwrap();
        let b = zeta_em(&Complex::from_f64(256, 0.5, 0.0), &ctx(256)).unwrap();
        let d = Float::with_val(256, &a.value.re - &b.value.re).abs();
        assert!(d <= a.abs_error_bound.to_f64() + b.abs_error_bound.to_f64());
        assert!((b.value.re.to_f64() + 1.4603545088095868).abs() < 1e-15);
    }

    #[test]
    fn zeta_four_closed_form() {
        let c = ctx(160);
        let z = zeta_em(&Complex::from_f64(160, 4.0, 0.0), &c).unwrap();
        let exact = mp::pi(160).square().square() / 90u32;
        assert!(Float::with_val(160, &z.value.re - &exact).abs() < 1e-45);
    }

    #[test]
    fn pole_is_rejected() {
        assert!(matches!(
            zeta_em(&Complex::from_f64(64, 1.0, 0.0), &ctx(64)),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn first_zero_is_small() {
        let c = ctx(128);
        let z = zeta_em(&Complex::from_f64(128, 0.5, 14.134725141734693), &c).unwrap();
        assert!(z.abs() < 1e-14);
    }

    #[test]
    fn vertical_line_matches_direct() {
        let c = ctx(128);
        let line = VerticalLine::new(0.75, 300.0, &c).unwrap();
        for t in [0.0, 3.5, 77.7, 299.0] {
            let a = line.eval(&Float::with_val(128, t)).unwrap();
            let b = zeta_em(&Complex::from_f64(128, 0.75, t), &c).unwrap();
            let d = (&a.value - &b.value).abs();
            assert!(d < 1e-35, "t = {t}: {d}");
        }
    }

    #[test]
    fn bound_shrinks_with_precision() {
        let s = Complex::from_f64(256, 0.5, 40.0);
        let lo = zeta_em(&s, &ctx(96)).unwrap().abs_error_bound;
        let hi = zeta_em(&s, &ctx(256)).unwrap().abs_error_bound;
        assert!(hi <= lo);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]

        #[test]
        fn conjugate_symmetry(sigma in -1.0f64..3.0, t in 0.5f64..200.0) {
            let c = ctx(96);
            let s = Complex::from_f64(96, sigma, t);
            let a = zeta_em(&s, &c).unwrap();
            let b = zeta_em(&s.conj(), &c).unwrap();
            let tol = Float::with_val(96, &a.abs_error_bound + &b.abs_error_bound);
            let dre = Float::with_val(96, &a.value.re - &b.value.re).abs();
            let dim = Float::with_val(96, &a.value.im + &b.value.im).abs();
            proptest::prop_assert!(dre <= tol && dim <= tol);
        }
    }
}
