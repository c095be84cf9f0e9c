//! Even-index Bernoulli numbers `B_{2k}`, exact, computed once from the
//! tangent numbers.

use std::sync::OnceLock;

use rug::{Float, Integer, Rational};

/// Largest `k` for which `B_{2k}` is available.
pub const MAX_K: usize = 600;

static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
static LOG_RATIO: OnceLock<Vec<f64>> = OnceLock::new();
static LN_FACT: OnceLock<Vec<f64>> = OnceLock::new();

/// `ln(n!)` for `n <= 2 * MAX_K + 2`.
pub fn ln_factorial(n: usize) -> f64 {
    LN_FACT.get_or_init(|| {
        let mut v = Vec::with_capacity(2 * MAX_K + 3);
        let mut acc = 0.0f64;
        v.push(0.0);
        for j in 1..=(2 * MAX_K + 2) {
            acc += (j as f64).ln();
            v.push(acc);
        }
        v
    })[n]
}

fn build() -> Vec<Rational> {
    // Tangent numbers T_1..T_n (Brent & Harvey), then
    // B_{2k} = (-1)^(k-1) 2k T_k / (4^k (4^k - 1)).
    let n = MAX_K;
    let mut t = vec![Integer::new(); n + 1];
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u32 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j - k) as u32);
            let b = Integer::from(&t[j] * (j - k + 2) as u32);
            t[j] = a + b;
        }
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::from(1));
    for (k, tk) in t.iter().enumerate().skip(1) {
        let four_k = Integer::from(1) << (2 * k as u32);
        let den = &four_k * Integer::from(&four_k - 1u32);
        let mut num = Integer::from(tk * (2 * k as u32));
        if k % 2 == 0 {
            num = -num;
        }
        out.push(Rational::from((num, den)));
    }
    out
}

/// `B_{2k}` for `0 <= k <= MAX_K` (so `b2k(1) = 1/6`).
pub fn b2k(k: usize) -> &'static Rational {
    assert!(k <= MAX_K, "Bernoulli index 2*{k} beyond cache");
    &TABLE.get_or_init(build)[k]
}

/// `B_{2k}` rounded to `prec` bits.
pub fn b2k_float(k: usize, prec: u32) -> Float {
    Float::with_val(prec, b2k(k))
}

/// `ln(|B_{2k}| / (2k)!)` for planning; exact up to f64 rounding.
pub fn ln_b2k_over_factorial(k: usize) -> f64 {
    LOG_RATIO.get_or_init(|| {
        (0..=MAX_K)
            .map(|k| {
                let b = Float::with_val(64, b2k(k)).abs().ln().to_f64();
                b - ln_factorial(2 * k)
            })
            .collect()
    })[k]
}
