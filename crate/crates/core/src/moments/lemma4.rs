//! `S(delta) = sum_n a(n)^2 / (n sin 4 delta) exp(-(sin 4 delta) pi n^4)`, by
//! direct summation and by Stieltjes integration against the partial sums
//! `C(x) = sum_{n <= x} a(n)^2`.

use rug::Float;

use super::{MomentEstimate, MomentKind, ReferenceConstants, MODEL_SINGLE};
use crate::coeffs::{square_sum_prefix, CoefficientTable};
use crate::error::{Error, Result};
use crate::quadrature::{gk21, Sample};
use crate::zeta::PrecisionContext;

/// Summation stops once `pi N^4 sin 4 delta` exceeds this.
pub const LEMMA4_EXPONENT: f64 = 46.0;
/// The Stieltjes route integrates a little further, to stay independent of `N`.
const STIELTJES_EXPONENT: f64 = 60.0;

fn check_delta(delta: f64) -> Result<f64> {
    let s = (4.0 * delta).sin();
    if !(delta > 0.0 && delta <= 0.05) || !(s > 0.0) {
        return Err(Error::InvalidArgument(format!("delta must lie in (0, 0.05], got {delta}")));
    }
    Ok(s)
}

/// Smallest `N` with `pi N^4 sin 4 delta > LEMMA4_EXPONENT`.
pub fn lemma4_truncation(delta: f64) -> Result<usize> {
    let s = check_delta(delta)?;
    Ok(first_beyond(s, LEMMA4_EXPONENT))
}

fn first_beyond(s: f64, exponent: f64) -> usize {
    let c = std::f64::consts::PI * s;
    let mut n = (exponent / c).powf(0.25).floor().max(1.0) as usize;
    while c * (n as f64).powi(4) <= exponent {
        n += 1;
    }
    while n > 1 && c * ((n - 1) as f64).powi(4) > exponent {
        n -= 1;
    }
    n
}

/// Direct truncated sum at the precision of `ctx`, with the model
/// `A delta^-1 log^(1/4)(1/delta)`, `A = C_0 / (sqrt 2 Gamma(1/4))`.
pub fn lemma4_sum(
    delta: f64,
    table: &CoefficientTable,
    consts: &ReferenceConstants,
    ctx: &PrecisionContext,
) -> Result<MomentEstimate> {
    let s = check_delta(delta)?;
    let n = lemma4_truncation(delta)?;
    if table.limit() < n {
        return Err(Error::Range(format!("table limit {} below truncation {n}", table.limit())));
    }
    let wp = ctx.working(32);
    let sw = Float::with_val(wp, 4.0 * delta).sin();
    let c = Float::with_val(wp, &sw * crate::mp::pi(wp));
    let mut acc = Float::new(wp);
    for (i, a) in table.values()[..n].iter().enumerate() {
        let m = (i + 1) as u32;
        let a = Float::with_val(wp, *a.numer()) / Float::with_val(wp, *a.denom());
        let m4 = Float::with_val(wp, m).square().square();
        let e = Float::with_val(wp, -Float::with_val(wp, &c * &m4)).exp();
        acc += Float::with_val(wp, a.square_ref()) * e / Float::with_val(wp, &sw * m);
    }
    // a(n)^2 <= 1: sum_{n > N} <= f(N+1) + int_{N+1}^inf e^(-c x^4) / (x s) dx
    let x = (n + 1) as f64;
    let cf = std::f64::consts::PI * s;
    let head = (-cf * x.powi(4)).exp();
    let tail = head / (x * s) + head / (s * 4.0 * cf * x.powi(4));
    let mut predictions = std::collections::BTreeMap::new();
    predictions.insert(
        MODEL_SINGLE.to_string(),
        consts.lemma4_constant() / delta * (1.0 / delta).ln().powf(0.25),
    );
    Ok(MomentEstimate {
        parameter: delta,
        kind: MomentKind::Lemma4Sum,
        value: Float::with_val(ctx.bits(), acc),
        quadrature_error: tail,
        model_predictions: predictions,
        notes: format!("terms={n}"),
    })
}

/// `C(X) w(X) - int_1^X C(x) w'(x) dx` with `w(x) = e^(-c x^4) / (x sin 4 delta)`,
/// integrated by GK21 on each `[n, n+1]`, `C` exact from the table.
pub fn lemma4_stieltjes(delta: f64, table: &CoefficientTable) -> Result<f64> {
    let s = check_delta(delta)?;
    let c = std::f64::consts::PI * s;
    let x_end = first_beyond(s, STIELTJES_EXPONENT);
    let prefix = square_sum_prefix(table, x_end)?;
    let w = |x: f64| (-c * x.powi(4)).exp() / (x * s);
    let neg_dw = |x: f64| Ok(Sample::exact((-c * x.powi(4)).exp() * (1.0 / (x * x) + 4.0 * c * x * x) / s));
    let mut acc = 0.0;
    for n in 1..x_end {
        let cn = prefix[n].to_f64();
        acc += cn * gk21(&neg_dw, n as f64, (n + 1) as f64)?.value;
    }
    acc += prefix[x_end].to_f64() * w(x_end as f64);
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{sieve_coeffs, FractionalOrder};

    #[test]
    fn truncation_examples() {
        let n = lemma4_truncation(1e-6).unwrap();
        let s = (4e-6f64).sin();
        assert!(std::f64::consts::PI * (n as f64).powi(4) * s > 46.0);
        assert!(std::f64::consts::PI * ((n - 1) as f64).powi(4) * s <= 46.0);
        assert!((40..=50).contains(&n));
        assert!(lemma4_truncation(0.0).is_err());
        assert!(lemma4_truncation(0.1).is_err());
    }

    #[test]
    fn routes_agree() {
        let table = sieve_coeffs(FractionalOrder::half(), 2000).unwrap();
        let ctx = PrecisionContext::new(128).unwrap();
        let rc = ReferenceConstants {
            c0: 1.0,
            gamma_5_4: 1.0,
            gamma_1_4: 1.0,
        };
        for delta in [1e-3, 1e-4, 1e-5] {
            let direct = lemma4_sum(delta, &table, &rc, &ctx).unwrap();
            let st = lemma4_stieltjes(delta, &table).unwrap();
            let v = direct.value.to_f64();
            assert!(((v - st) / v).abs() < 1e-10, "delta = {delta}");
            assert!(direct.quadrature_error < 1e-18 * v);
        }
    }
}
