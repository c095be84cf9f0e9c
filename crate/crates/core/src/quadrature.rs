//! Gauss–Kronrod (10, 21) adaptive quadrature and composite Simpson, for
//! integrands that come with their own pointwise error bound.

use crate::error::{Error, Result};

/// Kronrod abscissae on `[-1, 1]`, positive half, centre last.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_22,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_725,
    0.054_755_896_574_351_995,
    0.075_039_674_810_919_96,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_84,
    0.134_709_217_311_473_34,
    0.142_775_938_577_060_09,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];

/// Gauss weights for the odd-indexed Kronrod abscissae `XGK[1], XGK[3], .., XGK[9]`.
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// One integrand sample: value and a bound on its absolute error.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Sample {
    pub value: f64,
    pub error: f64,
}

impl Sample {
    pub fn exact(value: f64) -> Self {
        Sample { value, error: 0.0 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Discretization error estimate, `|K21 - G10|` summed over leaves.
    pub error: f64,
    /// `integral |f - f_computed|` bound from the per-sample error bounds.
    pub integrand_error: f64,
    pub evaluations: usize,
    /// True if some leaf hit the depth limit above tolerance.
    pub unresolved: bool,
}

impl QuadResult {
    pub fn total_error(&self) -> f64 {
        self.error + self.integrand_error
    }

    fn add(&mut self, other: &QuadResult) {
        self.value += other.value;
        self.error += other.error;
        self.integrand_error += other.integrand_error;
        self.evaluations += other.evaluations;
        self.unresolved |= other.unresolved;
    }
}

/// One 21-point Kronrod rule with its embedded 10-point Gauss estimate.
pub fn gk21<F>(f: &F, a: f64, b: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Sample>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mid = f(c)?;
    let mut kron = WGK[10] * mid.value;
    let mut gauss = 0.0;
    let mut ierr = WGK[10] * mid.error;
    for i in 0..10 {
        let lo = f(c - h * XGK[i])?;
        let hi = f(c + h * XGK[i])?;
        kron += WGK[i] * (lo.value + hi.value);
        ierr += WGK[i] * (lo.error + hi.error);
        if i % 2 == 1 {
            gauss += WG[i / 2] * (lo.value + hi.value);
        }
    }
    Ok(QuadResult {
        value: kron * h,
        error: ((kron - gauss) * h).abs(),
        integrand_error: ierr * h.abs(),
        evaluations: 21,
        unresolved: false,
    })
}

/// Adaptive bisection on GK21 until each leaf has `|K - G| <= tol` (tolerance
/// halved per level), at most `max_depth` levels deep. Leaves are summed
/// left to right.
pub fn adaptive<F>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Sample>,
{
    if !(a.is_finite() && b.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "quadrature on [{a}, {b}] with tolerance {tol}"
        )));
    }
    let whole = gk21(f, a, b)?;
    refine(f, a, b, tol, max_depth, whole)
}

fn refine<F>(f: &F, a: f64, b: f64, tol: f64, depth: u32, est: QuadResult) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Sample>,
{
    if est.error <= tol {
        return Ok(est);
    }
    if depth == 0 {
        return Ok(QuadResult {
            unresolved: true,
            ..est
        });
    }
    let m = 0.5 * (a + b);
    let left = gk21(f, a, m)?;
    let right = gk21(f, m, b)?;
    let mut out = refine(f, a, m, 0.5 * tol, depth - 1, left)?;
    let r = refine(f, m, b, 0.5 * tol, depth - 1, right)?;
    out.add(&r);
    out.evaluations += est.evaluations;
    Ok(out)
}

/// Composite Simpson with `n` (rounded up to even) subintervals.
pub fn simpson<F>(f: &F, a: f64, b: f64, n: usize) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Sample>,
{
    let n = (n.max(2) + 1) & !1;
    let h = (b - a) / n as f64;
    let mut acc = 0.0;
    let mut err = 0.0;
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let s = f(a + h * i as f64)?;
        acc += w * s.value;
        err += w * s.error;
    }
    Ok(QuadResult {
        value: acc * h / 3.0,
        error: 0.0,
        integrand_error: err * h.abs() / 3.0,
        evaluations: n + 1,
        unresolved: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(d: i32) -> impl Fn(f64) -> Result<Sample> {
        move |x: f64| Ok(Sample::exact(x.powi(d)))
    }

    #[test]
    fn weights_sum_to_two() {
        let k: f64 = WGK[10] + 2.0 * WGK[..10].iter().sum::<f64>();
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn exact_degrees() {
        // Kronrod exact to degree 31, Gauss to degree 19
        for d in [0, 2, 10, 18, 30] {
            let r = gk21(&poly(d), -1.0, 1.0).unwrap();
            let want = 2.0 / (d as f64 + 1.0);
            assert!((r.value - want).abs() < 1e-14, "degree {d}");
            if d <= 18 {
                assert!(r.error < 1e-14, "degree {d}");
            }
        }
        let r = gk21(&poly(22), -1.0, 1.0).unwrap();
        assert!(r.error > 1e-8);
    }

    #[test]
    fn adaptive_on_a_kink() {
        let f = |x: f64| Ok(Sample::exact((x - 0.3).abs()));
        let r = adaptive(&f, 0.0, 1.0, 1e-12, 40).unwrap();
        assert!((r.value - (0.045 + 0.245)).abs() < 1e-11);
        assert!(!r.unresolved);
    }

    #[test]
    fn simpson_cubic_exact() {
        let f = |x: f64| Ok(Sample::exact(x * x * x - x));
        let r = simpson(&f, 0.0, 2.0, 7).unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
        assert_eq!(r.evaluations, 9);
    }

    #[test]
    fn integrand_error_accumulates() {
        let f = |_x: f64| Ok(Sample { value: 1.0, error: 1e-3 });
        let r = adaptive(&f, 0.0, 4.0, 1e-9, 10).unwrap();
        assert!((r.integrand_error - 4e-3).abs() < 1e-12);
        let s = simpson(&f, 0.0, 4.0, 100).unwrap();
        assert!((s.integrand_error - 4e-3).abs() < 1e-12);
    }

    proptest::proptest! {
        #[test]
        fn gk21_exact_on_cubics(c in proptest::array::uniform4(-10.0f64..10.0), a in -5.0f64..5.0, w in 0.1f64..5.0) {
            let f = |x: f64| Ok(Sample::exact(c[0] + x * (c[1] + x * (c[2] + x * c[3]))));
            let anti = |x: f64| x * (c[0] + x * (c[1] / 2.0 + x * (c[2] / 3.0 + x * c[3] / 4.0)));
            let b = a + w;
            let r = gk21(&f, a, b).unwrap();
            let exact = anti(b) - anti(a);
            proptest::prop_assert!((r.value - exact).abs() <= 1e-12 * (1.0 + exact.abs()));
        }

        #[test]
        fn integral_is_additive(a in -3.0f64..3.0, w1 in 0.1f64..3.0, w2 in 0.1f64..3.0) {
            let f = |x: f64| Ok(Sample::exact(x.sin() * x.exp()));
            let (m, b) = (a + w1, a + w1 + w2);
            let whole = adaptive(&f, a, b, 1e-12, 30).unwrap().value;
            let parts = adaptive(&f, a, m, 1e-12, 30).unwrap().value + adaptive(&f, m, b, 1e-12, 30).unwrap().value;
            proptest::prop_assert!((whole - parts).abs() < 1e-10);
        }
    }
}
