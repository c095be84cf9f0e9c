//! Euler products built from the fractional divisor coefficients, with
//! bounds on what the truncation leaves out.
//!
//! Every product here has local factors of the form
//!
//! ```text
//! F_p = G(x) (1 - x)^e1 (1 - x/4)^e2,   x = p^-s,   G(x) = sum_m g_m x^m,
//! ```
//!
//! whose logarithm `sum_j c_j x^j` starts at `j = 2`. Products are accumulated
//! in log space over ascending primes. Primes beyond the cutoff are handled
//! with the exact `c_j` and prime-zeta tails `sum_{p > P} p^-js`, so that the
//! reported bound covers only what remains after that correction.

use std::collections::HashMap;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};

use crate::coeffs::{half_order_prime_power, prime_power_coeff, primes_up_to, CoefficientTable, FractionalOrder};
use crate::error::{Error, Result};
use crate::mp::{self, Complex};
use crate::zeta::{gamma_real, zeta_em, Bounded, PrecisionContext};

/// Per-factor series depth used when none is given, at most.
pub const DEFAULT_DEPTH_CAP: u32 = 64;

const PRIME_BLOCK: usize = 2048;
const SERIES_BLOCK: usize = 1 << 14;
const MAX_LOG_TERMS: usize = 400;

/// `pi(x) < 1.3 x / ln x` for `x > 1`.
const PRIME_COUNT_CONST: f64 = 1.3;

#[derive(Clone, Debug, PartialEq)]
pub struct EulerProductSpec {
    prime_cutoff: u64,
    factor_depth: Option<u32>,
    precision: PrecisionContext,
}

impl EulerProductSpec {
    /// Automatic per-factor depth: the smallest `M` with `p^-Ms` below the
    /// target, capped at [`DEFAULT_DEPTH_CAP`].
    pub fn new(prime_cutoff: u64, precision: PrecisionContext) -> Result<Self> {
        if prime_cutoff < 2 {
            return Err(Error::InvalidArgument(format!(
                "prime cutoff must be at least 2, got {prime_cutoff}"
            )));
        }
        Ok(EulerProductSpec {
            prime_cutoff,
            factor_depth: None,
            precision,
        })
    }

    /// Fixed number of series terms per local factor.
    pub fn with_factor_depth(mut self, depth: u32) -> Result<Self> {
        if depth < 1 {
            return Err(Error::InvalidArgument("factor depth must be at least 1".into()));
        }
        self.factor_depth = Some(depth);
        Ok(self)
    }

    pub fn prime_cutoff(&self) -> u64 {
        self.prime_cutoff
    }

    pub fn factor_depth(&self) -> Option<u32> {
        self.factor_depth
    }

    pub fn precision(&self) -> &PrecisionContext {
        &self.precision
    }

    fn depth_for(&self, p: u64, s: f64) -> usize {
        self.factor_depth.map_or_else(
            || {
                let bits = -self.precision.target_log2();
                let m = (bits / (s * (p as f64).log2())).ceil() as u32;
                m.clamp(1, DEFAULT_DEPTH_CAP) as usize
            },
            |m| m as usize,
        )
    }
}

/// A truncated Euler product.
#[derive(Clone, Debug)]
pub struct ProductValue {
    pub name: String,
    pub s: f64,
    pub value: Float,
    pub log_value: Float,
    pub prime_cutoff: u64,
    /// Largest per-factor depth used.
    pub factor_depth: u32,
    /// Bound on `|log(value) - log(full product)|`.
    pub tail_bound: Float,
    pub precision_bits: u32,
}

impl ProductValue {
    /// Absolute error implied by the log bound: `value * (exp(tail_bound) - 1)`.
    pub fn abs_error(&self) -> Float {
        let e = Float::with_val(self.precision_bits, self.tail_bound.exp_m1_ref());
        e * &self.value
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Form {
    /// `G = sum a(p^m)^2 x^m` with `a` in double-factorial form, times `(1-x)^(1/4)`.
    DoubleFactorial,
    /// `G = sum d_k(p^m)^2 x^m` from the Pochhammer form, times `(1-x)^(k^2)`.
    Pochhammer(FractionalOrder),
    /// `h_p / k_p` with `h_p = (1 - x/4) sum a(p^m)^2 x^m` expanded as
    /// `sum b_m x^m` and `1/k_p = (1-x)^(1/4) / (1 - x/4)`.
    HkRatio,
}

struct Law {
    form: Form,
    series: Vec<Rational>,
    e1: Rational,
    e2: i32,
    /// `|c_j| <= (beta^j + kappa) / j`.
    beta: f64,
    kappa: f64,
    /// For `Pochhammer(k)`: `k` as f64 (tail ratios); 1/2 otherwise.
    k: f64,
}

impl Law {
    fn new(form: Form, len: usize) -> Law {
        let half = FractionalOrder::half();
        let series: Vec<Rational> = match form {
            Form::DoubleFactorial => (0..len as u32)
                .map(|m| Rational::from(half_order_prime_power(m).square_ref()))
                .collect(),
            Form::Pochhammer(k) => (0..len as u32)
                .map(|m| Rational::from(prime_power_coeff(k, m).square_ref()))
                .collect(),
            Form::HkRatio => {
                let q: Vec<Rational> = (0..len as u32)
                    .map(|m| Rational::from(prime_power_coeff(half, m).square_ref()))
                    .collect();
                (0..len)
                    .map(|m| {
                        if m == 0 {
                            q[0].clone()
                        } else {
                            &q[m] - Rational::from(&q[m - 1] / 4u32)
                        }
                    })
                    .collect()
            }
        };
        let quarter = Rational::from((1, 4));
        let (e1, e2, k): (Rational, i32, f64) = match form {
            Form::DoubleFactorial => (quarter, 0, 0.5),
            Form::Pochhammer(k) => (Rational::from(k.to_rational().square_ref()), 0, k.to_f64()),
            Form::HkRatio => (quarter, -1, 0.5),
        };
        let beta = if k <= 1.0 {
            2.0
        } else {
            // d_k(p^m)^2 <= 4^(K-1) 4^m with K = ceil(k)
            let big_k = k.ceil() as i32;
            4.0 * (1.0 + 4f64.powi(big_k - 1))
        };
        let kappa = e1.to_f64().abs() + e2.abs() as f64;
        Law {
            form,
            series,
            e1,
            e2,
            beta,
            kappa,
            k,
        }
    }

    /// Bound on `sum_{m > depth} |g_m| x^m`; infinite if no bound is available.
    fn tail_after(&self, depth: usize, x: f64) -> f64 {
        match self.form {
            Form::HkRatio => x.powi(depth as i32 + 1) / (1.0 - x),
            Form::DoubleFactorial | Form::Pochhammer(_) => {
                let next = self.series[depth + 1].to_f64();
                let m = depth as f64;
                let step = ((self.k + m + 1.0) / (m + 2.0)).powi(2).max(1.0) * x;
                if step >= 1.0 {
                    f64::INFINITY
                } else {
                    next * x.powi(depth as i32 + 1) / (1.0 - step)
                }
            }
        }
    }

    /// Exact `c_0..=c_jmax` of `log F(x)`.
    fn log_coeffs(&self, j_max: usize) -> Vec<Rational> {
        let g = &self.series;
        // l = log G: j l_j = j g_j - sum_{i<j} i l_i g_{j-i}
        let mut l = vec![Rational::new(); j_max + 1];
        for j in 1..=j_max {
            let mut acc = Rational::from(&g[j] * j as u32);
            for i in 1..j {
                acc -= Rational::from(&l[i] * &g[j - i]) * i as u32;
            }
            l[j] = acc / j as u32;
        }
        let mut c = l;
        for (j, cj) in c.iter_mut().enumerate().skip(1) {
            *cj -= Rational::from(&self.e1 / j as u32);
            if self.e2 != 0 {
                let four_j = rug::Integer::from(4u32).pow(j as u32);
                let t = Rational::from((rug::Integer::from(self.e2), four_j * j as u32));
                *cj -= t;
            }
        }
        c
    }
}

/// `p^-s` at precision `wp`, exact-power paths for integer and half-integer `s`.
fn pow_neg(p: u64, s: f64, wp: u32) -> Float {
    let base = Float::with_val(wp, p);
    if s.fract() == 0.0 && s.abs() < 1e6 {
        return Float::with_val(wp, Pow::pow(&base, -(s as i32)));
    }
    if (2.0 * s).fract() == 0.0 && s.abs() < 1e6 {
        let whole = Float::with_val(wp, Pow::pow(&base, -(s.floor() as i32)));
        return whole * base.recip_sqrt();
    }
    let ln = base.ln();
    Float::with_val(wp, -(ln * Float::with_val(wp, s))).exp()
}

/// `ln` of a bound on `sum_{p > q} p^-u`, from `pi(x) < 1.3 x / ln x`.
fn ln_prime_tail(u: f64, q: f64) -> f64 {
    (PRIME_COUNT_CONST * u / (u - 1.0)).ln() + (1.0 - u) * q.ln() - q.ln().ln()
}

fn mobius(mut n: usize) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Prime zeta tails `sum_{p > P} p^-(j s)` via `P(u) = sum_k mu(k)/k ln zeta(k u)`.
struct PrimeZeta {
    s: f64,
    wp: u32,
    ln_zeta: HashMap<usize, Float>,
}

impl PrimeZeta {
    fn new(s: f64, wp: u32) -> Self {
        PrimeZeta {
            s,
            wp,
            ln_zeta: HashMap::new(),
        }
    }

    /// `ln zeta(n s)`, cached.
    fn ln_zeta_at(&mut self, n: usize) -> Result<Float> {
        if let Some(v) = self.ln_zeta.get(&n) {
            return Ok(v.clone());
        }
        let ctx = PrecisionContext::new(self.wp)?;
        let arg = Float::with_val(self.wp, self.s) * n as u32;
        let z = zeta_em(&Complex::from_real(arg), &ctx)?;
        let v = z.value.re.ln();
        self.ln_zeta.insert(n, v.clone());
        Ok(v)
    }

    /// `P(j s)` and a bound on its truncation error.
    fn prime_zeta(&mut self, j: usize) -> Result<(Float, f64)> {
        let u = j as f64 * self.s;
        let k_max = ((self.wp as f64 / u).ceil() as usize).max((2.0 / u).ceil() as usize) + 1;
        let mut acc = Float::new(self.wp);
        for k in 1..=k_max {
            let mu = mobius(k);
            if mu == 0 {
                continue;
            }
            let l = self.ln_zeta_at(k * j)? / k as u32;
            if mu > 0 {
                acc += l;
            } else {
                acc -= l;
            }
        }
        // sum_{k > K} ln zeta(k u) / k <= sum 3 * 2^-(k u) <= 6 * 2^-((K+1) u)
        let rem = 6.0 * mp::pow2(-(((k_max + 1) as f64 * u).floor() as i64));
        Ok((acc, rem))
    }
}

struct BlockSum {
    log: Float,
    depth_err: f64,
    powers: Vec<Float>,
    max_depth: usize,
}

/// `log F(x)` for one factor, with the depth-truncation error on the log.
fn local_log(law: &Law, coeffs: &[Float], x: &Float, depth: usize) -> (Float, f64) {
    let wp = x.prec();
    let mut g = coeffs[depth].clone();
    for m in (0..depth).rev() {
        g *= x;
        g += &coeffs[m];
    }
    let xf = x.to_f64();
    let tail = law.tail_after(depth, xf);
    let gf = g.to_f64();
    let err = if gf > tail { tail / (gf - tail) } else { f64::INFINITY };
    let mut log = g.ln();
    let neg_x = Float::with_val(wp, -x);
    log += Float::with_val(wp, neg_x.ln_1p_ref()) * &law.e1;
    if law.e2 != 0 {
        let q = Float::with_val(wp, &neg_x / 4u32);
        log += Float::with_val(wp, q.ln_1p_ref()) * law.e2;
    }
    (log, err)
}

fn euler_product(name: &str, form: Form, s: f64, spec: &EulerProductSpec) -> Result<ProductValue> {
    if !(s > 0.5) || !s.is_finite() {
        return Err(Error::Convergence(format!("Euler product at s = {s} needs s > 1/2")));
    }
    let bits = spec.precision.bits();
    let target_ln = spec.precision.target_log2() * std::f64::consts::LN_2;
    let p_cut = spec.prime_cutoff;
    let primes = primes_up_to(p_cut as usize);
    let wp = bits + 32 + mp::magnitude_bits(primes.len() as f64);

    // beta and kappa do not depend on the series length
    let probe = Law::new(form, 2);
    let (beta, kappa) = (probe.beta, probe.kappa);
    let x0 = ((p_cut + 1) as f64).powf(-s);
    let correct = beta * x0 <= 0.5;

    let ln_term = |j: usize, q: f64| ((beta.powi(j as i32) + kappa) / j as f64).ln() + ln_prime_tail(j as f64 * s, q);
    let j_max = if correct {
        let goal = target_ln - 8f64.ln();
        (2..MAX_LOG_TERMS)
            .find(|&j| ln_term(j + 1, p_cut as f64) + 2f64.ln() <= goal)
            .unwrap_or(MAX_LOG_TERMS)
    } else {
        0
    };

    let depth_max = primes.first().map_or(1, |&p| spec.depth_for(p, s));
    let explicit_hi = if correct {
        p_cut
    } else {
        // first q with beta (q+1)^-s <= 1/2
        ((2.0 * beta).powf(1.0 / s).ceil() as u64).max(p_cut)
    };
    let len = depth_max.max(j_max).max(spec.depth_for(2, s)) + 2;
    let law = Law::new(form, len);
    let coeffs: Vec<Float> = law.series.iter().map(|g| Float::with_val(wp, g)).collect();

    let blocks: Vec<BlockSum> = primes
        .par_chunks(PRIME_BLOCK)
        .map(|chunk| {
            let mut log = Float::new(wp);
            let mut depth_err = 0.0;
            let mut powers = vec![Float::new(wp); j_max.saturating_sub(1)];
            let mut max_depth = 0;
            for &p in chunk {
                let x = pow_neg(p, s, wp);
                let depth = spec.depth_for(p, s);
                max_depth = max_depth.max(depth);
                let (l, e) = local_log(&law, &coeffs, &x, depth);
                log += l;
                depth_err += e;
                if j_max >= 2 {
                    let mut xj = Float::with_val(wp, x.square_ref());
                    for slot in powers.iter_mut() {
                        *slot += &xj;
                        xj *= &x;
                    }
                }
            }
            BlockSum {
                log,
                depth_err,
                powers,
                max_depth,
            }
        })
        .collect();

    let mut log = Float::new(wp);
    let mut depth_err = 0.0;
    let mut powers = vec![Float::new(wp); j_max.saturating_sub(1)];
    let mut max_depth = 0;
    for b in &blocks {
        log += &b.log;
        depth_err += b.depth_err;
        max_depth = max_depth.max(b.max_depth);
        for (acc, v) in powers.iter_mut().zip(&b.powers) {
            *acc += v;
        }
    }

    let mut bound = depth_err;
    if correct {
        let c = law.log_coeffs(j_max);
        let mut pz = PrimeZeta::new(s, wp);
        for j in 2..=j_max {
            if c[j].cmp0().is_eq() {
                continue;
            }
            let (full, rem) = pz.prime_zeta(j)?;
            let tail = full - &powers[j - 2];
            log += tail * &c[j];
            bound += rem * c[j].to_f64().abs();
        }
        bound += 2.0 * ln_term(j_max + 1, p_cut as f64).exp();
    } else {
        // primes in (P, Q] are bounded one by one, the rest by the majorant
        for p in primes_up_to(explicit_hi as usize).into_iter().filter(|&p| p > p_cut) {
            let x = pow_neg(p, s, wp);
            let (l, e) = local_log(&law, &coeffs, &x, spec.depth_for(p, s));
            bound += l.to_f64().abs() + e;
        }
        let q = explicit_hi as f64;
        let xq = (q + 1.0).powf(-s);
        let lead = 0.5 * (beta * beta / (1.0 - beta * xq) + kappa / (1.0 - xq));
        bound += lead * ln_prime_tail(2.0 * s, q).exp();
    }
    let ops = (primes.len() * (max_depth + j_max + 8)) as f64;
    bound += 16.0 * ops * mp::pow2(-(wp as i64));

    let value = Float::with_val(bits, log.exp_ref());
    Ok(ProductValue {
        name: name.to_string(),
        s,
        value,
        log_value: Float::with_val(bits, log),
        prime_cutoff: p_cut,
        factor_depth: max_depth as u32,
        tail_bound: Float::with_val(bits, bound),
        precision_bits: bits,
    })
}

/// `sum_{m=0}^{M} d_k(p^m)^2 p^-ms` with a bound on the dropped terms.
pub fn local_factor_g(
    p: u64,
    s: f64,
    k: FractionalOrder,
    depth: u32,
    ctx: &PrecisionContext,
) -> Result<Bounded<Float>> {
    if !(s > 0.5) {
        return Err(Error::Convergence(format!("local factor at s = {s} needs s > 1/2")));
    }
    if p < 2 {
        return Err(Error::InvalidArgument(format!("{p} is not a prime")));
    }
    let law = Law::new(Form::Pochhammer(k), depth as usize + 2);
    let wp = ctx.working(16);
    let x = pow_neg(p, s, wp);
    let mut acc = Float::new(wp);
    for m in (0..=depth as usize).rev() {
        acc *= &x;
        acc += Float::with_val(wp, &law.series[m]);
    }
    let tail = law.tail_after(depth as usize, x.to_f64());
    if !tail.is_finite() {
        return Err(Error::Convergence(format!(
            "local series for k = {k} at p = {p}, s = {s} has no geometric tail bound at depth {depth}"
        )));
    }
    Ok(Bounded {
        value: Float::with_val(ctx.bits(), acc),
        abs_error: Float::with_val(ctx.bits(), tail + 8.0 * depth as f64 * mp::pow2(-(wp as i64))),
    })
}

/// `C_0 = prod_p (1 - 1/p)^(1/4) sum_m a(p^m)^2 p^-m`, `a(p^m)` in double-factorial form.
pub fn c0(spec: &EulerProductSpec) -> Result<ProductValue> {
    euler_product("C0", Form::DoubleFactorial, 1.0, spec)
}

/// `c_k = Gamma(k^2 + 1)^-1 prod_p (1 - 1/p)^(k^2) sum_m d_k(p^m)^2 p^-m`.
pub fn conrey_ghosh_ck(k: FractionalOrder, spec: &EulerProductSpec) -> Result<ProductValue> {
    let mut pv = euler_product(&format!("c_{k}"), Form::Pochhammer(k), 1.0, spec)?;
    let ctx = spec.precision();
    let k2 = Float::with_val(ctx.bits(), Rational::from(k.to_rational().square_ref()));
    let g = gamma_real(&(k2 + 1u32), ctx)?;
    let rel = g.abs_error.to_f64() / g.value.to_f64().abs();
    pv.value /= &g.value;
    pv.log_value -= g.value.ln();
    pv.tail_bound += rel * 1.01;
    Ok(pv)
}

/// `h(s) / k(s)` as a product of `h_p / k_p` over primes.
pub fn hk_ratio(s: f64, spec: &EulerProductSpec) -> Result<ProductValue> {
    euler_product("h/k", Form::HkRatio, s, spec)
}

/// `g(s) = (h(s)/k(s)) zeta(s)^(1/4)`, the product route to `sum a(n)^2 n^-s`.
pub fn g_product(s: f64, spec: &EulerProductSpec) -> Result<Bounded<Float>> {
    if !(s > 1.0) {
        return Err(Error::Convergence(format!("g(s) product route needs s > 1, got {s}")));
    }
    let ctx = spec.precision();
    let hk = hk_ratio(s, spec)?;
    let z = zeta_em(&Complex::from_f64(ctx.bits(), s, 0.0), ctx)?;
    let zr = z.value.re;
    let quarter = Float::with_val(ctx.bits(), zr.ln_ref()) / 4u32;
    let value = Float::with_val(ctx.bits(), quarter.exp_ref()) * &hk.value;
    let rel = hk.tail_bound.to_f64().exp_m1() + z.abs_error_bound.to_f64() / zr.to_f64() / 4.0 * 1.01;
    let err = value.to_f64() * rel;
    Ok(Bounded {
        abs_error: Float::with_val(ctx.bits(), err),
        value,
    })
}

/// `sum_{n <= N} d_k(n)^2 n^-s` and a bound `N^(1-s)/(s-1)` on the rest.
#[derive(Clone, Debug)]
pub struct SeriesValue {
    pub s: f64,
    pub terms: usize,
    pub value: Float,
    pub tail_bound: Float,
}

pub fn g_series(s: f64, table: &CoefficientTable, n: usize, ctx: &PrecisionContext) -> Result<SeriesValue> {
    if !(s > 1.0) {
        return Err(Error::Convergence(format!("series at s = {s} needs s > 1")));
    }
    if table.order().to_f64() > 1.0 {
        return Err(Error::InvalidArgument(format!(
            "tail bound needs d_k(n) <= 1, i.e. k <= 1; got k = {}",
            table.order()
        )));
    }
    if n < 1 || n > table.limit() {
        return Err(Error::Range(format!("series length {n} outside 1..={}", table.limit())));
    }
    let wp = ctx.working(32);
    let values = &table.values()[..n];
    let partial: Vec<Float> = values
        .par_chunks(SERIES_BLOCK)
        .enumerate()
        .map(|(ci, chunk)| {
            let mut acc = Float::new(wp);
            for (off, c) in chunk.iter().enumerate() {
                let m = ci * SERIES_BLOCK + off + 1;
                let a = Float::with_val(wp, *c.numer()) / Float::with_val(wp, *c.denom());
                let a2 = Float::with_val(wp, a.square_ref());
                acc += a2 * pow_neg(m as u64, s, wp);
            }
            acc
        })
        .collect();
    let mut value = Float::new(wp);
    for p in &partial {
        value += p;
    }
    let tail = (n as f64).powf(1.0 - s) / (s - 1.0) + 8.0 * n as f64 * mp::pow2(-(wp as i64));
    Ok(SeriesValue {
        s,
        terms: n,
        value: Float::with_val(ctx.bits(), value),
        tail_bound: Float::with_val(ctx.bits(), tail),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::sieve_coeffs;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    fn spec(p: u64, bits: u32) -> EulerProductSpec {
        EulerProductSpec::new(p, ctx(bits)).unwrap()
    }

    #[test]
    fn local_factor_at_two() {
        // oracle: direct summation of a(2^m)^2 / 4^m
        let c = ctx(200);
        let v = local_factor_g(2, 2.0, FractionalOrder::half(), 30, &c).unwrap();
        let mut acc = Rational::new();
        for m in 0..=30u32 {
            let a = half_order_prime_power(m);
            acc += Rational::from(a.square_ref()) / Rational::from(rug::Integer::from(4u32).pow(m));
        }
        let d = Float::with_val(200, &v.value - Float::with_val(200, &acc)).abs();
        assert!(d < 1e-55);
        assert!(v.abs_error < 1e-19);
    }

    #[test]
    fn local_factor_tends_to_one() {
        let c = ctx(128);
        let v = local_factor_g(7, 60.0, FractionalOrder::half(), 10, &c).unwrap();
        assert!(Float::with_val(128, &v.value - 1u32).abs() < 1e-40);
    }

    #[test]
    fn local_factor_rejects_half() {
        let c = ctx(64);
        assert!(matches!(
            local_factor_g(2, 0.5, FractionalOrder::half(), 5, &c),
            Err(Error::Convergence(_))
        ));
    }

    #[test]
    fn single_prime_c0() {
        // P = 2 only: (1/2)^(1/4) * local_factor_g(2, 1) up to the bounded tail
        let sp = spec(2, 128).with_factor_depth(60).unwrap();
        let pv = c0(&sp).unwrap();
        let local = local_factor_g(2, 1.0, FractionalOrder::half(), 60, sp.precision()).unwrap();
        let want = Float::with_val(128, 0.5f64).pow(Float::with_val(128, 0.25)) * &local.value;
        let mut check = pv.log_value.clone();
        check -= want.ln();
        // all primes above 2 sit inside the tail bound
        assert!(check.abs() <= pv.tail_bound);
        assert!(pv.tail_bound.is_finite());
    }

    #[test]
    fn log_coeffs_start_at_two() {
        for form in [Form::DoubleFactorial, Form::HkRatio, Form::Pochhammer(FractionalOrder::new(3, 2).unwrap())] {
            let law = Law::new(form, 12);
            let c = law.log_coeffs(10);
            assert!(c[1].cmp0().is_eq(), "{form:?}");
            for (j, cj) in c.iter().enumerate().skip(1) {
                let b = (law.beta.powi(j as i32) + law.kappa) / j as f64;
                assert!(cj.to_f64().abs() <= b, "{form:?} j = {j}");
            }
        }
    }

    #[test]
    fn hk_and_double_factorial_share_log_coeffs() {
        let a = Law::new(Form::DoubleFactorial, 25).log_coeffs(20);
        let b = Law::new(Form::HkRatio, 25).log_coeffs(20);
        assert_eq!(a, b);
    }

    #[test]
    fn ck_at_one_is_one() {
        let pv = conrey_ghosh_ck(FractionalOrder::one(), &spec(1000, 128)).unwrap();
        let d = Float::with_val(128, &pv.value - 1u32).abs();
        assert!(d <= pv.abs_error() + 1e-35);
    }

    #[test]
    fn c0_matches_hk_at_one() {
        let sp = spec(10_000, 192);
        let a = c0(&sp).unwrap();
        let b = hk_ratio(1.0, &sp).unwrap();
        let d = Float::with_val(192, &a.value - &b.value).abs();
        assert!(d <= Float::with_val(192, a.abs_error() + b.abs_error()));
        assert!(a.tail_bound < 1e-15);
    }

    #[test]
    fn tail_bound_shrinks_with_cutoff() {
        let mut prev = f64::INFINITY;
        for p in [3u64, 10, 100, 1000] {
            let pv = c0(&spec(p, 128)).unwrap();
            let b = pv.tail_bound.to_f64();
            assert!(b <= prev, "P = {p}: {b} > {prev}");
            prev = b;
        }
    }

    #[test]
    fn series_and_product_agree() {
        let table = sieve_coeffs(FractionalOrder::half(), 20_000).unwrap();
        let c = ctx(128);
        for s in [1.5, 2.0, 3.0] {
            let series = g_series(s, &table, 20_000, &c).unwrap();
            let prod = g_product(s, &spec(2000, 128)).unwrap();
            let d = Float::with_val(128, &series.value - &prod.value).abs();
            // the series omits only positive terms
            assert!(series.value <= prod.value, "s = {s}");
            assert!(d <= Float::with_val(128, &series.tail_bound + &prod.abs_error), "s = {s}");
        }
    }

    #[test]
    fn series_edge_cases() {
        let table = sieve_coeffs(FractionalOrder::half(), 1000).unwrap();
        let c = ctx(96);
        let one = g_series(2.0, &table, 1, &c).unwrap();
        assert_eq!(one.value, 1);
        let four = g_series(4.0, &table, 1000, &c).unwrap();
        assert!(four.tail_bound < 1e-9);
        assert!(matches!(g_series(1.0, &table, 10, &c), Err(Error::Convergence(_))));
    }

    #[test]
    fn mobius_values() {
        let want = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(mobius(i + 1), w);
        }
    }
}
