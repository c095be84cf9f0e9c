//! Functional-equation factor `chi(s) = (2^(1-s) pi^-s cos(pi s / 2) Gamma(s))^-1`,
//! so that `zeta(s) = chi(s) zeta(1 - s)`.
//!
//! For `Re s < 1/2` the reflected form `chi(s) = 2 sin(pi s / 2) Gamma(1 - s) / (2 pi)^(1-s)`
//! is used, which is the same function with the Gamma argument kept to the right.

use rug::Float;

use super::gamma::{gamma, Bounded};
use super::precision::PrecisionContext;
use crate::error::{Error, Result};
use crate::mp::{self, Complex};

fn singular(s: &Complex) -> Option<String> {
    if !s.im.is_zero() || !s.re.is_integer() {
        return None;
    }
    let n = s.re.to_f64();
    let odd_positive = n > 0.0 && n % 2.0 == 1.0;
    let even_nonpositive = n <= 0.0 && n % 2.0 == 0.0;
    (odd_positive || even_nonpositive).then(|| format!("chi at s = {n}"))
}

pub fn chi(s: &Complex, ctx: &PrecisionContext) -> Result<Bounded<Complex>> {
    if let Some(msg) = singular(s) {
        return Err(Error::Singularity(msg));
    }
    let wp = ctx.working(32 + 2 * mp::magnitude_bits(s.im.to_f64().abs() + s.re.to_f64().abs()));
    let inner = PrecisionContext::new(wp)?;
    let sw = s.with_prec(wp);
    let pi = mp::pi(wp);
    let half_pi_s = sw.scale(&Float::with_val(wp, &pi / 2u32));
    let two_pi_ln = Float::with_val(wp, &pi * 2u32).ln();
    let one = Float::with_val(wp, 1);

    let (value, rel) = if s.re >= 0.5 {
        let g = gamma(&sw, &inner)?;
        // 2^(1-s) pi^-s = 2 (2 pi)^-s
        let two_pi_neg_s = (-&sw).exp_scaled(&two_pi_ln);
        let denom = &(&two_pi_neg_s.scale(&Float::with_val(wp, 2)) * &half_pi_s.cos()) * &g.value;
        let rel = g.abs_error.to_f64() / g.value.abs().to_f64();
        (denom.recip(), rel)
    } else {
        let one_minus = (-&sw).add_real(&one);
        let g = gamma(&one_minus, &inner)?;
        let two_pi_pow = one_minus.exp_scaled(&two_pi_ln);
        let num = (&half_pi_s.sin() * &g.value).scale(&Float::with_val(wp, 2));
        let rel = g.abs_error.to_f64() / g.value.abs().to_f64();
        (num.div(&two_pi_pow), rel)
    };
    let rounding = 64.0 * mp::pow2(-(wp as i64) + 8);
    let abs_err = value.abs().to_f64() * (rel + rounding) * 1.01;
    Ok(Bounded {
        value: value.with_prec(ctx.bits()),
        abs_error: Float::with_val(ctx.bits(), abs_err),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::em::zeta_em;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    #[test]
    fn unit_modulus_on_critical_line() {
        let c = ctx(256);
        for t in [1.0, 25.0, 333.3, 999.0] {
            let x = chi(&Complex::from_f64(256, 0.5, t), &c).unwrap();
            let d = Float::with_val(256, x.value.abs() - 1u32).abs();
            assert!(d < 1e-25, "t = {t}: {d}");
        }
    }

    #[test]
    fn real_positive_on_unit_interval() {
        let c = ctx(128);
        for x in [0.1, 0.25, 0.5, 0.75, 0.9] {
            let v = chi(&Complex::from_f64(128, x, 0.0), &c).unwrap().value;
            assert!(v.re > 0, "x = {x}");
            assert!(v.im.is_zero() || v.im.clone().abs() < 1e-35);
        }
    }

    #[test]
    fn both_forms_agree_near_half() {
        let c = ctx(160);
        let a = chi(&Complex::from_f64(160, 0.5, 30.0), &c).unwrap().value;
        let b = chi(&Complex::from_f64(160, 0.4999999999, 30.0), &c).unwrap().value;
        assert!((&a - &b).abs() < 1e-7);
    }

    #[test]
    fn functional_equation() {
        let c = ctx(192);
        let s = Complex::from_f64(192, 0.75, 20.0);
        let one_minus = (-&s).add_real(&Float::with_val(192, 1));
        let zs = zeta_em(&s, &c).unwrap();
        let z1 = zeta_em(&one_minus, &c).unwrap();
        let x = chi(&s, &c).unwrap();
        let d = (&(&z1.value * &x.value) - &zs.value).abs();
        let tol = zs.abs_error_bound.to_f64()
            + x.value.abs().to_f64() * z1.abs_error_bound.to_f64()
            + z1.value.abs().to_f64() * x.abs_error.to_f64();
        assert!(d <= tol * 2.0 + 1e-50, "{d} vs {tol}");
    }

    #[test]
    fn singular_points() {
        let c = ctx(64);
        for x in [1.0, 3.0, 0.0, -2.0] {
            assert!(matches!(
                chi(&Complex::from_f64(64, x, 0.0), &c),
                Err(Error::Singularity(_))
            ));
        }
        assert!(chi(&Complex::from_f64(64, 2.0, 0.0), &c).is_ok());
        assert!(chi(&Complex::from_f64(64, -1.0, 0.0), &c).is_ok());
    }
}
