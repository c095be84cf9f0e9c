//! Least-squares fit of `value ~ C T log^(1/4) T`.

use crate::error::{Error, Result};

use super::ReferenceConstants;

#[derive(Clone, Debug, PartialEq)]
pub struct FitReport {
    pub c_hat: f64,
    /// `(T, value / (T log^(1/4) T))` per point.
    pub ratios: Vec<(f64, f64)>,
    /// `value / (c_hat T log^(1/4) T) - 1` per point.
    pub residuals: Vec<f64>,
    /// `(max - min) / min` over the point ratios.
    pub ratio_spread: f64,
    pub paper_constant: f64,
    pub cg_constant: f64,
}

/// Fits `C` in `value = C f(T)`, `f(T) = T log^(1/4) T`, minimizing the
/// squared absolute residuals: `C = sum v f / sum f^2`.
pub fn fit_constant(data: &[(f64, f64)], consts: &ReferenceConstants) -> Result<FitReport> {
    if data.len() < 3 {
        return Err(Error::InvalidArgument(format!("fit needs at least 3 points, got {}", data.len())));
    }
    if data.windows(2).any(|w| !(w[1].0 > w[0].0)) || !(data[0].0 > 1.0) {
        return Err(Error::InvalidArgument("T values must ascend from above 1".into()));
    }
    let (lo, hi) = (data[0].0, data[data.len() - 1].0);
    if hi / lo < 10.0 {
        return Err(Error::DegenerateFit(format!(
            "T spans [{lo}, {hi}], less than one decade"
        )));
    }
    let shape = |t: f64| t * t.ln().powf(0.25);
    let (num, den) = data.iter().fold((0.0, 0.0), |(n, d), &(t, v)| {
        let f = shape(t);
        (n + v * f, d + f * f)
    });
    let c_hat = num / den;
    let ratios: Vec<(f64, f64)> = data.iter().map(|&(t, v)| (t, v / shape(t))).collect();
    let residuals = ratios.iter().map(|&(_, r)| r / c_hat - 1.0).collect();
    let (min, max) = ratios
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &(_, r)| (a.min(r), b.max(r)));
    Ok(FitReport {
        c_hat,
        ratios,
        residuals,
        ratio_spread: (max - min) / min,
        paper_constant: consts.paper_constant(),
        cg_constant: consts.cg_constant(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const RC: ReferenceConstants = ReferenceConstants {
        c0: 1.0,
        gamma_5_4: 1.0,
        gamma_1_4: 1.0,
    };

    fn ts() -> Vec<f64> {
        vec![500.0, 1000.0, 2000.0, 5000.0]
    }

    #[test]
    fn exact_synthetic() {
        let data: Vec<_> = ts().into_iter().map(|t| (t, 3.0 * t * t.ln().powf(0.25))).collect();
        let r = fit_constant(&data, &RC).unwrap();
        assert!((r.c_hat - 3.0).abs() < 1e-14);
        assert!(r.ratio_spread < 1e-14);
    }

    #[test]
    fn noisy_synthetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let data: Vec<_> = ts()
                .into_iter()
                .map(|t| (t, 3.0 * t * t.ln().powf(0.25) * (1.0 + rng.gen_range(-0.01..0.01))))
                .collect();
            let r = fit_constant(&data, &RC).unwrap();
            assert!((r.c_hat / 3.0 - 1.0).abs() < 0.015);
        }
    }

    #[test]
    fn rejects_short_span() {
        let data = [(100.0, 1.0), (200.0, 2.0), (900.0, 9.0)];
        assert!(matches!(fit_constant(&data, &RC), Err(Error::DegenerateFit(_))));
        assert!(fit_constant(&data[..2], &RC).is_err());
    }

    proptest::proptest! {
        #[test]
        fn scaling_data_scales_constant(scale in 1e-3f64..1e3, noise in proptest::collection::vec(-0.05f64..0.05, 4)) {
            let data: Vec<_> = ts().into_iter().zip(&noise).map(|(t, e)| (t, t * (1.0 + e))).collect();
            let scaled: Vec<_> = data.iter().map(|&(t, v)| (t, scale * v)).collect();
            let a = fit_constant(&data, &RC).unwrap();
            let b = fit_constant(&scaled, &RC).unwrap();
            proptest::prop_assert!((b.c_hat / (scale * a.c_hat) - 1.0).abs() < 1e-12);
            proptest::prop_assert!((b.ratio_spread - a.ratio_spread).abs() < 1e-9);
        }
    }
}
