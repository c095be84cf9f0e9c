//! Multiprecision helpers on top of MPFR floats.
//!
//! MPFR gives correctly rounded real elementary functions; complex values are a
//! plain `(re, im)` pair of [`Float`]s with the handful of operations the
//! evaluators need.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Constant;
use rug::Float;

pub type Prec = u32;

pub fn pi(prec: Prec) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn euler_gamma(prec: Prec) -> Float {
    Float::with_val(prec, Constant::Euler)
}

pub fn ln2(prec: Prec) -> Float {
    Float::with_val(prec, Constant::Log2)
}

pub fn float(prec: Prec, v: f64) -> Float {
    Float::with_val(prec, v)
}

/// `2^e` as an f64, saturating to 0 for very negative exponents.
pub fn pow2(e: i64) -> f64 {
    if e < -1070 {
        0.0
    } else {
        (e as f64).exp2()
    }
}

/// Bits of `x` above the binary point (0 for |x| < 1).
pub fn magnitude_bits(x: f64) -> u32 {
    if x.abs() <= 1.0 || !x.is_finite() {
        0
    } else {
        x.abs().log2().ceil() as u32
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn zero(prec: Prec) -> Self {
        Complex {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn new(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn from_f64(prec: Prec, re: f64, im: f64) -> Self {
        Complex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Complex {
            re,
            im: Float::new(prec),
        }
    }

    pub fn prec(&self) -> Prec {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: Prec) -> Self {
        Complex {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let mut a = Float::with_val(p, self.re.square_ref());
        a += Float::with_val(p, self.im.square_ref());
        a
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec();
        Complex {
            re: Float::with_val(p, &self.re * k),
            im: Float::with_val(p, &self.im * k),
        }
    }

    pub fn add_real(&self, k: &Float) -> Self {
        Complex {
            re: Float::with_val(self.prec(), &self.re + k),
            im: self.im.clone(),
        }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let d = self.norm_sqr();
        Complex {
            re: Float::with_val(p, &self.re / &d),
            im: -Float::with_val(p, &self.im / &d),
        }
    }

    pub fn div(&self, rhs: &Complex) -> Self {
        self * &rhs.recip()
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Complex {
            re: Float::with_val(p, &m * &c),
            im: m * s,
        }
    }

    /// Principal logarithm, argument in (-pi, pi].
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let r = self.abs();
        Complex {
            re: r.ln(),
            im: Float::with_val(p, self.im.atan2_ref(&self.re)),
        }
    }

    /// `base^self` for a positive real base given by its logarithm.
    pub fn exp_scaled(&self, ln_base: &Float) -> Self {
        self.scale(ln_base).exp()
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        Complex {
            re: Float::with_val(p, &c * &ch),
            im: Float::with_val(p, -(s * sh)),
        }
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        Complex {
            re: Float::with_val(p, &s * &ch),
            im: Float::with_val(p, c * sh),
        }
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, rhs: &'a Complex) -> Complex {
        let p = self.prec().max(rhs.prec());
        Complex {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, rhs: &'a Complex) -> Complex {
        let p = self.prec().max(rhs.prec());
        Complex {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, rhs: &'a Complex) -> Complex {
        let p = self.prec().max(rhs.prec());
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        Complex {
            re: ac - bd,
            im: ad + bc,
        }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", decimal(&self.re, 20), decimal(&self.im, 20))
    }
}

/// Significant decimal digits carried by `bits` of binary precision.
pub fn digits_for_bits(bits: Prec) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).floor() as usize
}

/// Positional decimal rendering (no exponent) with `digits` significant digits.
///
/// Magnitudes of 1e30 or more fall back to `d.ddd…e±N` scientific notation.
pub fn decimal(x: &Float, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.into();
    }
    if x.is_zero() {
        return "0".into();
    }
    let digits = digits.max(1);
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
    let exp = exp.unwrap_or(0) as i64;
    let mantissa = mantissa.trim_end_matches('0');
    let mantissa = if mantissa.is_empty() { "0" } else { mantissa };
    let sign = if neg { "-" } else { "" };
    // value = 0.mantissa × 10^exp
    if exp > 30 {
        let (head, tail) = mantissa.split_at(1);
        let tail = if tail.is_empty() { "0" } else { tail };
        return format!("{sign}{head}.{tail}e{}", exp - 1);
    }
    let body = if exp <= 0 {
        format!("0.{}{}", "0".repeat((-exp) as usize), mantissa)
    } else {
        let e = exp as usize;
        if mantissa.len() <= e {
            format!("{}{}", mantissa, "0".repeat(e - mantissa.len()))
        } else {
            format!("{}.{}", &mantissa[..e], &mantissa[e..])
        }
    };
    format!("{sign}{body}")
}

/// Decimal rendering of an f64 without exponent notation for |x| < 1e30.
pub fn decimal_f64(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    decimal(&Float::with_val(64, x), 17)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_positional() {
        assert_eq!(decimal(&Float::with_val(64, 1234.5), 10), "1234.5");
        assert_eq!(decimal(&Float::with_val(64, -0.00125), 10), "-0.00125");
        assert_eq!(decimal(&Float::with_val(64, 1.0e6), 10), "1000000");
        assert_eq!(decimal(&Float::with_val(64, 0.0), 10), "0");
        assert!(decimal(&Float::with_val(64, 1.0e40), 5).contains('e'));
        assert_eq!(decimal_f64(0.5), "0.5");
    }

    #[test]
    fn complex_exp_ln_roundtrip() {
        let z = Complex::from_f64(128, 0.3, -2.5);
        let w = z.ln().exp();
        let d = (&w - &z).abs();
        assert!(d < 1e-35);
    }

    #[test]
    fn complex_trig_identity() {
        let z = Complex::from_f64(128, 0.7, 1.3);
        let s = z.sin();
        let c = z.cos();
        let one = &s.sqr() + &c.sqr();
        assert!((one.re - 1.0f64).abs() < 1e-35);
        assert!(one.im.abs() < 1e-35);
    }
}
