//! The acceptance suite: eleven checks with pinned tolerances and a
//! deterministic text report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Float, Rational};

use crate::coeffs::{dirichlet_convolve, half_order_prime_power, prime_power_coeff, sieve_coeffs, FractionalOrder};
use crate::error::{Error, Result};
use crate::moments::{
    fit_constant, fractional_moment_offline, lemma4_stieltjes, lemma4_sum, second_moment_model, second_moment_sharp,
    sharp_moments, MomentConfig, Power, ReferenceConstants, MODEL_CG, MODEL_PAPER, MODEL_SINGLE,
};
use crate::mp::{self, Complex};
use crate::products::{c0, conrey_ghosh_ck, g_series, hk_ratio, EulerProductSpec, ProductValue};
use crate::zeta::{chi, gamma_quarter_stirling_check, gamma_real, theta, zeta_em, PrecisionContext};

pub const CONVOLUTION_LIMIT: usize = 100_000;
pub const LOCAL_TERMS: u32 = 20;
pub const LOCAL_PRIMES: [u64; 4] = [2, 3, 5, 7];
pub const PRODUCT_CUTOFF: u64 = 100_000;
pub const PRODUCT_CUTOFFS: [u64; 2] = [100_000, 1_000_000];
pub const PRODUCT_BITS: u32 = 256;
pub const SERIES_TERMS: usize = 1_000_000;
pub const SERIES_BITS: u32 = 192;
pub const SERIES_PRODUCT_TOL: f64 = 1e-12;
pub const STIRLING_SIGMAS: [f64; 3] = [0.0, 0.5, 1.0];
pub const STIRLING_TS: [f64; 4] = [10.0, 100.0, 1000.0, 10000.0];
/// Largest `relative error * |s|` seen on the first run, rounded up.
pub const STIRLING_SCALED_MAX: f64 = 0.16;
pub const PHASE_SAMPLES: usize = 20;
pub const PHASE_RANGE: (f64, f64) = (15.0, 2000.0);
pub const PHASE_BITS: u32 = 256;
pub const CHI_TOL: f64 = 1e-25;
pub const REALITY_TOL: f64 = 1e-20;
pub const MOMENT_BITS: u32 = 128;
pub const SECOND_MOMENT_T: f64 = 2000.0;
pub const SECOND_MOMENT_TOL: f64 = 0.05;
pub const OFFLINE_SIGMA: f64 = 0.75;
pub const OFFLINE_T: f64 = 2000.0;
pub const OFFLINE_BAND: (f64, f64) = (0.9, 1.1);
pub const LEMMA4_DELTAS: [f64; 3] = [1e-3, 1e-4, 1e-5];
pub const LEMMA4_TOL: f64 = 1e-10;
pub const FIRST_MOMENT_TS: [f64; 4] = [500.0, 1000.0, 2000.0, 5000.0];
pub const FIRST_MOMENT_REL_ERR: f64 = 1e-4;
pub const FIT_SPREAD: f64 = 0.10;
pub const DETERMINISM_JOBS: [usize; 2] = [1, 8];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Criteria 1-10 on the current thread pool.
    Quick,
    /// Criteria 1-10 under each thread count of `DETERMINISM_JOBS`, then 11.
    Full,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub level: Level,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub lines: Vec<String>,
}

impl Criterion {
    fn new(id: u8, title: &'static str) -> Self {
        Criterion {
            id,
            title,
            passed: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        let tag = if ok { "ok  " } else { "FAIL" };
        self.lines.push(format!("{tag} {line}"));
    }

    fn note(&mut self, line: String) {
        self.lines.push(format!("     {line}"));
    }

    pub fn summary(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!("{status} criterion {:>2}: {}", self.id, self.title)
    }

    pub fn render(&self) -> String {
        let mut s = self.summary();
        for l in &self.lines {
            s.push_str("\n    ");
            s.push_str(l);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub criteria: Vec<Criterion>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut s: String = self.criteria.iter().map(|c| c.render() + "\n").collect();
        let failed = self.criteria.iter().filter(|c| !c.passed).count();
        s.push_str(&format!("{} criteria, {failed} failed\n", self.criteria.len()));
        s
    }
}

fn dec(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return mp::decimal_f64(x);
    }
    mp::decimal(&Float::with_val(53, x), 6)
}

fn ctx(bits: u32) -> Result<PrecisionContext> {
    PrecisionContext::new(bits)
}

fn product_spec(p: u64, bits: u32) -> Result<EulerProductSpec> {
    EulerProductSpec::new(p, ctx(bits)?)
}

fn fail_on_error(id: u8, title: &'static str, r: Result<Criterion>) -> Criterion {
    r.unwrap_or_else(|e| {
        let mut c = Criterion::new(id, title);
        c.check(false, format!("error ({}): {e}", e.kind()));
        c
    })
}

pub fn convolution_identity() -> Result<Criterion> {
    let mut c = Criterion::new(1, "exact convolution identity d_1/2 * d_1/2 = 1");
    let half = sieve_coeffs(FractionalOrder::half(), CONVOLUTION_LIMIT)?;
    let conv = dirichlet_convolve(&half, &half, CONVOLUTION_LIMIT)?;
    let bad = conv.values().iter().filter(|v| **v != num_rational::Ratio::from_integer(1)).count();
    c.check(bad == 0, format!("n <= {CONVOLUTION_LIMIT}: {bad} entries differ from 1"));
    Ok(c)
}

fn abs_err(p: &ProductValue) -> f64 {
    p.abs_error().to_f64()
}

pub fn local_identity() -> Result<Criterion> {
    let mut c = Criterion::new(2, "local series identity and c_1/2 Gamma(5/4) = C0");
    let half = FractionalOrder::half();
    for &p in &LOCAL_PRIMES {
        let mut mismatches = 0;
        for m in 0..LOCAL_TERMS {
            let pm = Rational::from(rug::Integer::from(p).pow(m));
            let pochhammer = Rational::from(prime_power_coeff(half, m).square_ref()) / &pm;
            let double_factorial = Rational::from(half_order_prime_power(m).square_ref()) / &pm;
            if pochhammer != double_factorial {
                mismatches += 1;
            }
        }
        c.check(mismatches == 0, format!("p = {p}: {mismatches} of {LOCAL_TERMS} terms differ"));
    }
    let spec = product_spec(PRODUCT_CUTOFF, PRODUCT_BITS)?;
    let ck = conrey_ghosh_ck(half, &spec)?;
    let c0v = c0(&spec)?;
    let g = gamma_real(&Float::with_val(PRODUCT_BITS, 1.25), spec.precision())?;
    let lhs = Float::with_val(PRODUCT_BITS, &ck.value * &g.value);
    let diff = Float::with_val(PRODUCT_BITS, &lhs - &c0v.value).abs().to_f64();
    let bound = abs_err(&ck) * g.value.to_f64() + ck.value.to_f64() * g.abs_error.to_f64() + abs_err(&c0v);
    c.check(
        diff <= bound,
        format!("P = {PRODUCT_CUTOFF}, {PRODUCT_BITS} bits: |c_1/2 Gamma(5/4) - C0| = {} <= {}", dec(diff), dec(bound)),
    );
    Ok(c)
}

pub fn series_product_cross_route() -> Result<Criterion> {
    let mut c = Criterion::new(3, "g(2): series vs h/k zeta^(1/4) product");
    let pc = ctx(SERIES_BITS)?;
    let table = sieve_coeffs(FractionalOrder::half(), SERIES_TERMS)?;
    let series = g_series(2.0, &table, SERIES_TERMS, &pc)?;
    let spec = product_spec(PRODUCT_CUTOFF, SERIES_BITS)?;
    let hk = hk_ratio(2.0, &spec)?;
    let z = zeta_em(&Complex::from_f64(SERIES_BITS, 2.0, 0.0), &pc)?;
    let quarter = Float::with_val(SERIES_BITS, z.value.re.ln_ref()) / 4u32;
    let product = Float::with_val(SERIES_BITS, quarter.exp_ref()) * &hk.value;
    let diff = Float::with_val(SERIES_BITS, &series.value - &product).abs().to_f64();
    let tails = series.tail_bound.to_f64() + abs_err(&hk) * 1.5 + z.abs_error_bound.to_f64();
    c.check(
        diff < SERIES_PRODUCT_TOL + tails,
        format!(
            "N = {SERIES_TERMS}, P = {PRODUCT_CUTOFF}: |series - product| = {} < {} + tails {}",
            dec(diff),
            dec(SERIES_PRODUCT_TOL),
            dec(tails)
        ),
    );
    c.check(series.value <= product, "series lies below the product (positive terms omitted)".into());
    c.note(format!("product g(2) = {}", mp::decimal(&product, 25)));
    Ok(c)
}

pub fn c0_two_routes() -> Result<Criterion> {
    let mut c = Criterion::new(4, "C0 = h(1)/k(1) by two product routes");
    let mut values = Vec::new();
    for &p in &PRODUCT_CUTOFFS {
        let spec = product_spec(p, PRODUCT_BITS)?;
        let a = c0(&spec)?;
        let b = hk_ratio(1.0, &spec)?;
        let diff = Float::with_val(PRODUCT_BITS, &a.value - &b.value).abs().to_f64();
        let bound = abs_err(&a) + abs_err(&b);
        c.check(
            diff <= bound,
            format!("P = {p}: |C0 - h(1)/k(1)| = {} <= {}", dec(diff), dec(bound)),
        );
        values.push(a);
    }
    let (lo, hi) = (&values[0], &values[1]);
    let diff = Float::with_val(PRODUCT_BITS, &lo.value - &hi.value).abs().to_f64();
    let bound = abs_err(lo) + abs_err(hi);
    c.check(diff <= bound, format!("P = 1e5 vs 1e6: {} <= {}", dec(diff), dec(bound)));
    let doubled = c0(&product_spec(PRODUCT_CUTOFF, 2 * PRODUCT_BITS)?)?;
    let diff = Float::with_val(2 * PRODUCT_BITS, &doubled.value - &lo.value).abs().to_f64();
    c.check(
        diff <= lo.tail_bound.to_f64(),
        format!("{} vs {} bits: change {} <= tail bound {}", PRODUCT_BITS, 2 * PRODUCT_BITS, dec(diff), dec(lo.tail_bound.to_f64())),
    );
    c.note(format!("C0 = {} (log bound {})", mp::decimal(&hi.value, 24), dec(hi.tail_bound.to_f64())));
    Ok(c)
}

pub fn stirling_quarter() -> Result<Criterion> {
    let mut c = Criterion::new(5, "Stirling factorization of Gamma(s)^(1/4)");
    let pc = ctx(PRODUCT_BITS)?;
    let mut worst: f64 = 0.0;
    for &sigma in &STIRLING_SIGMAS {
        let pts: Vec<(f64, f64)> = STIRLING_TS.iter().map(|&t| (sigma, t)).collect();
        let rows = gamma_quarter_stirling_check(&pts, &pc)?;
        let decreasing = rows.windows(2).all(|w| w[1].relative_error < w[0].relative_error);
        let errs: Vec<String> = rows.iter().map(|r| dec(r.relative_error)).collect();
        c.check(decreasing, format!("sigma = {sigma}: relative errors [{}] decrease in t", errs.join(", ")));
        worst = rows.iter().map(|r| r.scaled_error).fold(worst, f64::max);
    }
    c.check(
        worst <= STIRLING_SCALED_MAX,
        format!("max relative error * |s| = {} <= {}", dec(worst), dec(STIRLING_SCALED_MAX)),
    );
    Ok(c)
}

pub fn phase_invariants(seed: u64) -> Result<Criterion> {
    let mut c = Criterion::new(6, "|chi(1/2+it)| = 1 and Z(t) real");
    let pc = ctx(PHASE_BITS)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts: Vec<f64> = (0..PHASE_SAMPLES).map(|_| rng.gen_range(PHASE_RANGE.0..PHASE_RANGE.1)).collect();
    let mut chi_worst: f64 = 0.0;
    let mut im_worst: f64 = 0.0;
    for &t in &ts {
        let s = Complex::from_f64(PHASE_BITS, 0.5, t);
        let x = chi(&s, &pc)?;
        let d = Float::with_val(PHASE_BITS, x.value.abs() - 1u32).abs().to_f64();
        chi_worst = chi_worst.max(d);
        let z = zeta_em(&s, &pc)?;
        let th = theta(&Float::with_val(PHASE_BITS, t), &pc)?;
        let (sin, cos) = th.value.sin_cos(Float::new(PHASE_BITS));
        let im = Float::with_val(PHASE_BITS, &sin * &z.value.re) + Float::with_val(PHASE_BITS, &cos * &z.value.im);
        im_worst = im_worst.max(im.abs().to_f64());
    }
    c.check(
        chi_worst < CHI_TOL,
        format!("{PHASE_SAMPLES} t in [15, 2000], seed {seed}: max ||chi| - 1| = {} < {}", dec(chi_worst), dec(CHI_TOL)),
    );
    c.check(
        im_worst < REALITY_TOL,
        format!("max |Im e^(i theta) zeta| = {} < {}", dec(im_worst), dec(REALITY_TOL)),
    );
    Ok(c)
}

fn moment_config() -> Result<MomentConfig> {
    Ok(MomentConfig::new(ctx(MOMENT_BITS)?))
}

pub fn second_moment() -> Result<Criterion> {
    let mut c = Criterion::new(7, "second moment against T log(T/2 pi) + (2 gamma - 1) T");
    let e = second_moment_sharp(SECOND_MOMENT_T, &moment_config()?)?;
    let model = second_moment_model(SECOND_MOMENT_T);
    let rel = (e.value.to_f64() - model).abs() / SECOND_MOMENT_T;
    c.check(
        rel < SECOND_MOMENT_TOL,
        format!(
            "T = {SECOND_MOMENT_T}: value {} model {} |diff|/T = {} < {}",
            dec(e.value.to_f64()),
            dec(model),
            dec(rel),
            dec(SECOND_MOMENT_TOL)
        ),
    );
    c.note(format!("quadrature error {}", dec(e.quadrature_error)));
    Ok(c)
}

pub fn offline_mean_value() -> Result<Criterion> {
    let mut c = Criterion::new(8, "off-line first moment against T g(2 sigma)");
    let e = fractional_moment_offline(OFFLINE_SIGMA, OFFLINE_T, &moment_config()?)?;
    let ratio = e.ratio(MODEL_SINGLE).unwrap_or(f64::NAN);
    c.check(
        ratio >= OFFLINE_BAND.0 && ratio <= OFFLINE_BAND.1,
        format!(
            "sigma = {OFFLINE_SIGMA}, T = {OFFLINE_T}: ratio {} in [{}, {}]",
            dec(ratio),
            dec(OFFLINE_BAND.0),
            dec(OFFLINE_BAND.1)
        ),
    );
    c.note(format!(
        "value {} quadrature error {} model {}",
        dec(e.value.to_f64()),
        dec(e.quadrature_error),
        dec(e.model_predictions[MODEL_SINGLE])
    ));
    Ok(c)
}

pub fn lemma4_routes() -> Result<Criterion> {
    let mut c = Criterion::new(9, "quartic-weight sum: direct vs Stieltjes");
    let table = sieve_coeffs(FractionalOrder::half(), 1000)?;
    let pc = ctx(MOMENT_BITS)?;
    let rc = ReferenceConstants::compute(PRODUCT_CUTOFF, &pc)?;
    for &delta in &LEMMA4_DELTAS {
        let direct = lemma4_sum(delta, &table, &rc, &pc)?;
        let st = lemma4_stieltjes(delta, &table)?;
        let v = direct.value.to_f64();
        let rel = ((v - st) / v).abs();
        c.check(
            rel < LEMMA4_TOL,
            format!("delta = {}: relative difference {} < {}", dec(delta), dec(rel), dec(LEMMA4_TOL)),
        );
    }
    Ok(c)
}

pub fn first_moment_report() -> Result<Criterion> {
    let mut c = Criterion::new(10, "first-moment constant report");
    let cfg = moment_config()?;
    let est = sharp_moments(Power::One, &FIRST_MOMENT_TS, &cfg)?;
    let rc = ReferenceConstants::compute(cfg.prime_cutoff, &cfg.ctx)?;
    for e in &est {
        let v = e.value.to_f64();
        let rel = e.quadrature_error / v;
        c.check(
            rel < FIRST_MOMENT_REL_ERR,
            format!(
                "T = {}: value {} relative quadrature error {} ratio_paper {} ratio_cg {}",
                e.parameter,
                dec(v),
                dec(rel),
                dec(e.ratio(MODEL_PAPER).unwrap_or(f64::NAN)),
                dec(e.ratio(MODEL_CG).unwrap_or(f64::NAN))
            ),
        );
    }
    let data: Vec<(f64, f64)> = est.iter().map(|e| (e.parameter, e.value.to_f64())).collect();
    let fit = fit_constant(&data, &rc)?;
    c.check(
        fit.ratio_spread < FIT_SPREAD,
        format!("point ratios spread {} < {}", dec(fit.ratio_spread), dec(FIT_SPREAD)),
    );
    c.note(format!(
        "C_hat = {}  sqrt2 C0/Gamma(5/4) = {}  C0/Gamma(5/4) = {}",
        dec(fit.c_hat),
        dec(fit.paper_constant),
        dec(fit.cg_constant)
    ));
    for (t, r) in &fit.ratios {
        c.note(format!(
            "T = {t}: value/(T log^(1/4) T) = {}  / sqrt2 C0/Gamma(5/4) = {}  / C0/Gamma(5/4) = {}",
            dec(*r),
            dec(r / fit.paper_constant),
            dec(r / fit.cg_constant)
        ));
    }
    Ok(c)
}

/// Criteria 1-10 on the current rayon pool. Failures, including errors,
/// are recorded in the criteria rather than returned.
pub fn run_primary(seed: u64) -> Vec<Criterion> {
    vec![
        fail_on_error(1, "exact convolution identity d_1/2 * d_1/2 = 1", convolution_identity()),
        fail_on_error(2, "local series identity and c_1/2 Gamma(5/4) = C0", local_identity()),
        fail_on_error(3, "g(2): series vs h/k zeta^(1/4) product", series_product_cross_route()),
        fail_on_error(4, "C0 = h(1)/k(1) by two product routes", c0_two_routes()),
        fail_on_error(5, "Stirling factorization of Gamma(s)^(1/4)", stirling_quarter()),
        fail_on_error(6, "|chi(1/2+it)| = 1 and Z(t) real", phase_invariants(seed)),
        fail_on_error(7, "second moment against T log(T/2 pi) + (2 gamma - 1) T", second_moment()),
        fail_on_error(8, "off-line first moment against T g(2 sigma)", offline_mean_value()),
        fail_on_error(9, "quartic-weight sum: direct vs Stieltjes", lemma4_routes()),
        fail_on_error(10, "first-moment constant report", first_moment_report()),
    ]
}

/// Criteria 1-10 on a dedicated pool of `jobs` threads.
pub fn run_on_threads(jobs: usize, seed: u64) -> Result<Vec<Criterion>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
    Ok(pool.install(|| run_primary(seed)))
}

/// Criterion 11 from runs of criteria 1-10 under different thread counts.
pub fn determinism(runs: &[(usize, Vec<Criterion>)]) -> Criterion {
    let mut c = Criterion::new(11, "byte-identical output across thread counts");
    let Some((base_jobs, base)) = runs.first() else {
        c.check(false, "no runs to compare".into());
        return c;
    };
    for (jobs, run) in &runs[1..] {
        for (a, b) in base.iter().zip(run) {
            let same = a.render() == b.render();
            c.check(same, format!("criterion {}: jobs {base_jobs} vs {jobs} identical", a.id));
        }
        if base.len() != run.len() {
            c.check(false, format!("jobs {jobs} produced {} criteria", run.len()));
        }
    }
    c
}

pub fn run(cfg: &VerifyConfig) -> Result<Report> {
    match cfg.level {
        Level::Quick => Ok(Report {
            criteria: run_primary(cfg.seed),
        }),
        Level::Full => {
            let runs = DETERMINISM_JOBS
                .iter()
                .map(|&j| Ok((j, run_on_threads(j, cfg.seed)?)))
                .collect::<Result<Vec<_>>>()?;
            let eleven = determinism(&runs);
            let mut criteria = runs.into_iter().next().map(|(_, r)| r).unwrap_or_default();
            criteria.push(eleven);
            Ok(Report { criteria })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_criteria_pass() {
        for c in [convolution_identity().unwrap(), lemma4_routes().unwrap()] {
            assert!(c.passed, "{}", c.render());
        }
    }

    #[test]
    fn determinism_flags_differences() {
        let a = vec![Criterion::new(1, "x")];
        let mut b = a.clone();
        b[0].note("extra".into());
        assert!(determinism(&[(1, a.clone()), (8, a.clone())]).passed);
        assert!(!determinism(&[(1, a), (8, b)]).passed);
    }

    #[test]
    fn errors_become_failures() {
        let c = fail_on_error(3, "t", Err(Error::Range("r".into())));
        assert!(!c.passed);
        assert!(c.render().contains("range"));
    }
}
