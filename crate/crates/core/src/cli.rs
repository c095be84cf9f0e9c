//! Command-line front end. Every run writes a provenance header line first,
//! then its payload: CSV after a `#` comment line, or JSON Lines where the
//! first object has schema "provenance". Exit codes: 0 success, 1 computational
//! error (reported as a JSON object), 2 usage error.

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Float;
use serde_json::{json, Value};

use crate::coeffs::{sieve_coeffs, Coeff, FractionalOrder};
use crate::error::{Error, Result};
use crate::moments::{
    first_moment_laplace, fractional_moment_offline, lemma4_stieltjes, lemma4_sum, lemma4_truncation, sharp_moments,
    MomentConfig, MomentEstimate, Power, ReferenceConstants, MODEL_CG, MODEL_PAPER, MODEL_SINGLE,
};
use crate::mp::{self, Complex};
use crate::products::{c0, conrey_ghosh_ck, g_product, hk_ratio, EulerProductSpec, ProductValue};
use crate::verify::{self, Level, VerifyConfig};
use crate::zeta::{zeta_em, CriticalLine, PrecisionContext, ZetaSample, RS_T_MIN};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Options shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Args)]
pub struct RunConfig {
    /// Working binary precision.
    #[arg(long, global = true, default_value_t = 192, value_parser = clap::value_parser!(u32).range(64..))]
    pub precision_bits: u32,
    /// Largest prime taken explicitly in Euler products.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(2..))]
    pub prime_cutoff: u64,
    /// Coefficient table length.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub sieve_limit: u64,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Seed for randomized sampling in checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Parser)]
#[command(name = "zeta-moments", version, about = "Numerics for the first moment of |zeta(1/2 + it)|")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstantName {
    /// `C_0`, the product over `(1 - 1/p)^(1/4) sum a(p^m)^2 p^-m`.
    #[value(name = "C0")]
    C0,
    /// `c_k` for the order given by `--k`.
    Ck,
    /// `h(s)/k(s)` at `--s`.
    Hk,
    /// `g(s) = (h/k)(s) zeta(s)^(1/4)` at `--s`.
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZetaMethod {
    Em,
    Rs,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MomentKindArg {
    First,
    Second,
    Laplace,
    Offline,
    Lemma4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of d_k(n) as exact rationals.
    Coeffs {
        #[arg(long, default_value = "1/2")]
        k: FractionalOrder,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
    },
    /// Euler-product constants with tail bounds.
    Constants {
        #[arg(long, value_enum)]
        name: ConstantName,
        #[arg(long, default_value = "1/2")]
        k: FractionalOrder,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        /// Fixed number of terms per local factor.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        factor_depth: Option<u32>,
    },
    /// zeta(sigma + it) with an error bound.
    ZetaEval {
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, value_enum, default_value_t = ZetaMethod::Auto)]
        method: ZetaMethod,
    },
    /// Moment integrals and smoothed sums with their models.
    Moment {
        #[arg(long, value_enum)]
        kind: MomentKindArg,
        /// Upper limits T (comma separated).
        #[arg(long, value_delimiter = ',')]
        t_max: Vec<f64>,
        /// Smoothing parameters delta (comma separated).
        #[arg(long, value_delimiter = ',')]
        delta: Vec<f64>,
        #[arg(long, default_value_t = 0.75)]
        sigma: f64,
    },
    /// Quartic-weight coefficient sum by both routes.
    Lemma4 {
        #[arg(long, value_delimiter = ',', required = true)]
        delta: Vec<f64>,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
}

fn provenance(cfg: &RunConfig, command: &str) -> String {
    match cfg.output {
        OutputFormat::Csv => format!(
            "# {TOOL} {VERSION} command={command} precision_bits={} prime_cutoff={} sieve_limit={} seed={}",
            cfg.precision_bits, cfg.prime_cutoff, cfg.sieve_limit, cfg.seed
        ),
        OutputFormat::Json => json!({
            "schema": "provenance",
            "tool": TOOL,
            "version": VERSION,
            "command": command,
            "precision_bits": cfg.precision_bits.to_string(),
            "prime_cutoff": cfg.prime_cutoff.to_string(),
            "sieve_limit": cfg.sieve_limit.to_string(),
            "seed": cfg.seed.to_string(),
        })
        .to_string(),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Coeffs { .. } => "coeffs",
        Command::Constants { .. } => "constants",
        Command::ZetaEval { .. } => "zeta-eval",
        Command::Moment { .. } => "moment",
        Command::Lemma4 { .. } => "lemma4",
        Command::Verify { .. } => "verify",
    }
}

fn rational(c: &Coeff) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn dec(x: &Float) -> String {
    mp::decimal(x, mp::digits_for_bits(x.prec()))
}

fn dec_f64(x: f64) -> String {
    mp::decimal_f64(x)
}

/// Payload of one run, before formatting.
enum Output {
    Csv(Vec<String>, Vec<Vec<String>>),
    Json(Value),
    Text(String),
}

struct Run {
    output: Output,
    ok: bool,
}

fn ctx(cfg: &RunConfig) -> Result<PrecisionContext> {
    PrecisionContext::new(cfg.precision_bits)
}

fn product_json(p: &ProductValue) -> Value {
    json!({
        "schema": "product-value",
        "name": p.name,
        "s": dec_f64(p.s),
        "value": dec(&p.value),
        "log_value": dec(&p.log_value),
        "prime_cutoff": p.prime_cutoff.to_string(),
        "factor_depth": p.factor_depth.to_string(),
        "tail_bound": mp::decimal(&p.tail_bound, 6),
        "abs_error": mp::decimal(&p.abs_error(), 6),
        "precision_bits": p.precision_bits.to_string(),
    })
}

fn run_coeffs(cfg: &RunConfig, k: FractionalOrder, limit: u64, fmt: OutputFormat) -> Result<Run> {
    let table = sieve_coeffs(k, limit as usize)?;
    let output = match fmt {
        OutputFormat::Csv => Output::Csv(
            vec!["n".into(), "num".into(), "den".into()],
            table
                .values()
                .iter()
                .enumerate()
                .map(|(i, c)| vec![(i + 1).to_string(), c.numer().to_string(), c.denom().to_string()])
                .collect(),
        ),
        OutputFormat::Json => Output::Json(json!({
            "schema": "coeff-table",
            "k": k.to_string(),
            "limit": limit.to_string(),
            "values": table.values().iter().map(rational).collect::<Vec<_>>(),
        })),
    };
    let _ = cfg;
    Ok(Run { output, ok: true })
}

fn run_constants(
    cfg: &RunConfig,
    name: ConstantName,
    k: FractionalOrder,
    s: f64,
    depth: Option<u32>,
    fmt: OutputFormat,
) -> Result<Run> {
    let mut spec = EulerProductSpec::new(cfg.prime_cutoff, ctx(cfg)?)?;
    if let Some(m) = depth {
        spec = spec.with_factor_depth(m)?;
    }
    let value = match name {
        ConstantName::C0 => product_json(&c0(&spec)?),
        ConstantName::Ck => product_json(&conrey_ghosh_ck(k, &spec)?),
        ConstantName::Hk => product_json(&hk_ratio(s, &spec)?),
        ConstantName::G => {
            let g = g_product(s, &spec)?;
            json!({
                "schema": "bounded-value",
                "name": "g",
                "s": dec_f64(s),
                "value": dec(&g.value),
                "abs_error": mp::decimal(&g.abs_error, 6),
                "prime_cutoff": cfg.prime_cutoff.to_string(),
                "precision_bits": cfg.precision_bits.to_string(),
            })
        }
    };
    Ok(Run {
        output: json_or_csv(value, fmt),
        ok: true,
    })
}

/// CSV from a flat JSON object: one header row of keys, one row of values.
fn json_or_csv(v: Value, fmt: OutputFormat) -> Output {
    match fmt {
        OutputFormat::Json => Output::Json(v),
        OutputFormat::Csv => {
            let obj = v.as_object().cloned().unwrap_or_default();
            let (keys, vals): (Vec<String>, Vec<String>) = obj
                .into_iter()
                .filter(|(k, _)| k != "schema")
                .map(|(k, v)| (k, v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())))
                .unzip();
            Output::Csv(keys, vec![vals])
        }
    }
}

fn run_zeta(cfg: &RunConfig, sigma: f64, t: f64, method: ZetaMethod, fmt: OutputFormat) -> Result<Run> {
    let c = ctx(cfg)?;
    let use_rs = match method {
        ZetaMethod::Em => false,
        ZetaMethod::Rs => true,
        ZetaMethod::Auto => sigma == 0.5 && t.abs() >= RS_T_MIN,
    };
    let sample: ZetaSample = if use_rs {
        if sigma != 0.5 {
            return Err(Error::InvalidArgument(format!(
                "Riemann-Siegel needs sigma = 1/2, got {sigma}"
            )));
        }
        let line = CriticalLine::new(t.abs(), &c)?;
        let mut z = line.zeta(&Float::with_val(cfg.precision_bits, t.abs()), 4)?;
        if t < 0.0 {
            z.value = z.value.conj();
            z.s = z.s.conj();
        }
        z
    } else {
        zeta_em(&Complex::from_f64(cfg.precision_bits, sigma, t), &c)?
    };
    let value = json!({
        "schema": "zeta-sample",
        "s": { "sigma": dec_f64(sigma), "t": dec_f64(t) },
        "re": dec(&sample.value.re),
        "im": dec(&sample.value.im),
        "abs": dec(&sample.abs()),
        "method": sample.method.as_str(),
        "error_bound": mp::decimal(&sample.abs_error_bound, 6),
    });
    let output = match fmt {
        OutputFormat::Json => Output::Json(value),
        OutputFormat::Csv => Output::Csv(
            ["sigma", "t", "re", "im", "abs", "method", "error_bound"].map(String::from).to_vec(),
            vec![vec![
                dec_f64(sigma),
                dec_f64(t),
                dec(&sample.value.re),
                dec(&sample.value.im),
                dec(&sample.abs()),
                sample.method.as_str().to_string(),
                mp::decimal(&sample.abs_error_bound, 6),
            ]],
        ),
    };
    Ok(Run { output, ok: true })
}

fn moment_config(cfg: &RunConfig) -> Result<MomentConfig> {
    let mut m = MomentConfig::new(ctx(cfg)?);
    m.prime_cutoff = cfg.prime_cutoff;
    Ok(m)
}

const MOMENT_COLUMNS: [&str; 7] = [
    "parameter",
    "value",
    "quadrature_error",
    "model_paper",
    "model_cg",
    "ratio_paper",
    "ratio_cg",
];

/// Columns `model_paper`/`ratio_paper` carry the single model for kinds that have one.
fn moment_row(e: &MomentEstimate) -> Vec<String> {
    let (paper, cg) = if e.model_predictions.contains_key(MODEL_PAPER) {
        (MODEL_PAPER, Some(MODEL_CG))
    } else {
        (MODEL_SINGLE, None)
    };
    let model = |k: &str| e.model_predictions.get(k).map(|&v| dec_f64(v)).unwrap_or_default();
    let ratio = |k: &str| e.ratio(k).map(dec_f64).unwrap_or_default();
    vec![
        dec_f64(e.parameter),
        dec_f64(e.value.to_f64()),
        dec_f64(e.quadrature_error),
        model(paper),
        cg.map(model).unwrap_or_default(),
        ratio(paper),
        cg.map(ratio).unwrap_or_default(),
    ]
}

fn moment_json(e: &MomentEstimate) -> Value {
    let models: serde_json::Map<String, Value> = e
        .model_predictions
        .iter()
        .map(|(k, &v)| (k.clone(), Value::String(dec_f64(v))))
        .collect();
    let ratios: serde_json::Map<String, Value> = e
        .model_predictions
        .keys()
        .filter_map(|k| e.ratio(k).map(|r| (k.clone(), Value::String(dec_f64(r)))))
        .collect();
    json!({
        "parameter": dec_f64(e.parameter),
        "kind": e.kind.as_str(),
        "value": dec_f64(e.value.to_f64()),
        "quadrature_error": dec_f64(e.quadrature_error),
        "model_predictions": models,
        "ratios": ratios,
        "notes": e.notes,
    })
}

fn need<'a>(v: &'a [f64], flag: &str) -> Result<&'a [f64]> {
    if v.is_empty() {
        return Err(Error::InvalidArgument(format!("--{flag} is required for this kind")));
    }
    Ok(v)
}

fn run_moment(
    cfg: &RunConfig,
    kind: MomentKindArg,
    t_max: &[f64],
    delta: &[f64],
    sigma: f64,
    fmt: OutputFormat,
) -> Result<Run> {
    let mc = moment_config(cfg)?;
    let estimates: Vec<MomentEstimate> = match kind {
        MomentKindArg::First => sharp_moments(Power::One, need(t_max, "t-max")?, &mc)?,
        MomentKindArg::Second => sharp_moments(Power::Two, need(t_max, "t-max")?, &mc)?,
        MomentKindArg::Laplace => need(delta, "delta")?
            .iter()
            .map(|&d| first_moment_laplace(d, &mc))
            .collect::<Result<_>>()?,
        MomentKindArg::Offline => need(t_max, "t-max")?
            .iter()
            .map(|&t| fractional_moment_offline(sigma, t, &mc))
            .collect::<Result<_>>()?,
        MomentKindArg::Lemma4 => {
            let deltas = need(delta, "delta")?;
            let (table, rc) = lemma4_inputs(cfg, deltas)?;
            deltas
                .iter()
                .map(|&d| lemma4_sum(d, &table, &rc, &mc.ctx))
                .collect::<Result<_>>()?
        }
    };
    let output = match fmt {
        OutputFormat::Csv => Output::Csv(
            MOMENT_COLUMNS.map(String::from).to_vec(),
            estimates.iter().map(moment_row).collect(),
        ),
        OutputFormat::Json => Output::Json(json!({
            "schema": "moment-estimates",
            "estimates": estimates.iter().map(moment_json).collect::<Vec<_>>(),
        })),
    };
    Ok(Run { output, ok: true })
}

fn lemma4_inputs(cfg: &RunConfig, deltas: &[f64]) -> Result<(crate::coeffs::CoefficientTable, ReferenceConstants)> {
    let mut n = 1;
    for &d in deltas {
        n = n.max(lemma4_truncation(d)?);
    }
    // the Stieltjes route runs a little past the direct truncation
    let limit = (2 * n + 8).min(cfg.sieve_limit as usize).max(n);
    let table = sieve_coeffs(FractionalOrder::half(), limit)?;
    let rc = ReferenceConstants::compute(cfg.prime_cutoff, &ctx(cfg)?)?;
    Ok((table, rc))
}

fn run_lemma4(cfg: &RunConfig, deltas: &[f64], fmt: OutputFormat) -> Result<Run> {
    let (table, rc) = lemma4_inputs(cfg, deltas)?;
    let c = ctx(cfg)?;
    let mut rows = Vec::new();
    for &d in deltas {
        let direct = lemma4_sum(d, &table, &rc, &c)?;
        let st = lemma4_stieltjes(d, &table)?;
        let v = direct.value.to_f64();
        rows.push(vec![
            dec_f64(d),
            dec(&direct.value),
            dec_f64(st),
            dec_f64(((v - st) / v).abs()),
            dec_f64(direct.model_predictions[MODEL_SINGLE]),
            dec_f64(direct.ratio(MODEL_SINGLE).unwrap_or(f64::NAN)),
            direct.notes.trim_start_matches("terms=").to_string(),
        ]);
    }
    let header = ["delta", "direct", "stieltjes", "relative_difference", "model", "ratio", "terms"];
    let output = match fmt {
        OutputFormat::Csv => Output::Csv(header.map(String::from).to_vec(), rows),
        OutputFormat::Json => Output::Json(json!({
            "schema": "lemma4-sums",
            "rows": rows
                .iter()
                .map(|r| header.iter().zip(r).map(|(h, v)| (h.to_string(), Value::String(v.clone()))).collect::<serde_json::Map<_, _>>())
                .collect::<Vec<_>>(),
        })),
    };
    Ok(Run { output, ok: true })
}

fn run_verify(cfg: &RunConfig, level: LevelArg, fmt: OutputFormat) -> Result<Run> {
    let report = verify::run(&VerifyConfig {
        level: match level {
            LevelArg::Quick => Level::Quick,
            LevelArg::Full => Level::Full,
        },
        seed: cfg.seed,
    })?;
    let ok = report.passed();
    let output = match fmt {
        OutputFormat::Csv => Output::Text(report.render()),
        OutputFormat::Json => Output::Json(json!({
            "schema": "verify-report",
            "passed": ok,
            "criteria": report.criteria.iter().map(|c| json!({
                "id": c.id,
                "title": c.title,
                "passed": c.passed,
                "lines": c.lines,
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(Run { output, ok })
}

fn execute(cli: &Cli) -> Result<Run> {
    let cfg = &cli.config;
    let fmt = cfg.output;
    match &cli.command {
        Command::Coeffs { k, limit } => run_coeffs(cfg, *k, *limit, fmt),
        Command::Constants {
            name,
            k,
            s,
            factor_depth,
        } => run_constants(cfg, *name, *k, *s, *factor_depth, fmt),
        Command::ZetaEval { sigma, t, method } => run_zeta(cfg, *sigma, *t, *method, fmt),
        Command::Moment {
            kind,
            t_max,
            delta,
            sigma,
        } => run_moment(cfg, *kind, t_max, delta, *sigma, fmt),
        Command::Lemma4 { delta } => run_lemma4(cfg, delta, fmt),
        Command::Verify { level } => run_verify(cfg, *level, fmt),
    }
}

fn write_output<W: Write>(out: &mut W, output: &Output) -> io::Result<()> {
    match output {
        Output::Json(v) => {
            serde_json::to_writer(&mut *out, v)?;
            writeln!(out)
        }
        Output::Text(s) => out.write_all(s.as_bytes()),
        Output::Csv(header, rows) => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(header)?;
            for r in rows {
                w.write_record(r)?;
            }
            w.flush()
        }
    }
}

/// Runs the parsed command on a pool of `--jobs` threads and writes to `out`.
/// Returns the process exit code.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> i32 {
    let header = provenance(&cli.config, command_name(&cli.command));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.config.jobs as usize)
        .build();
    let result = match pool {
        Ok(p) => p.install(|| execute(cli)),
        Err(e) => Err(Error::Resource(format!("thread pool: {e}"))),
    };
    let written = writeln!(out, "{header}").and_then(|_| match &result {
        Ok(r) => write_output(out, &r.output),
        Err(e) => write_output(
            out,
            &Output::Json(json!({
                "schema": "error",
                "kind": e.kind(),
                "message": e.to_string(),
            })),
        ),
    });
    match (written, result) {
        (Err(_), _) => 1,
        (Ok(()), Ok(r)) if r.ok => 0,
        _ => 1,
    }
}

/// Parses `argv` and runs it; usage errors print clap's message and return 2.
pub fn dispatch<I, T, W>(argv: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(&cli, out),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = dispatch(std::iter::once("zeta-moments").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn coeffs_csv() {
        let (code, out) = call(&["coeffs", "--k", "1/2", "--limit", "12", "--output", "csv"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert!(lines[0].starts_with("# zeta-moments"));
        assert_eq!(lines[1], "n,num,den");
        assert_eq!(lines.len(), 14);
        assert_eq!(lines[13], "12,3,16");
    }

    #[test]
    fn coeffs_json_rationals() {
        let (code, out) = call(&["coeffs", "--limit", "4"]);
        assert_eq!(code, 0);
        let body: Value = serde_json::from_str(out.split_once('\n').unwrap().1).unwrap();
        assert_eq!(body["schema"], "coeff-table");
        assert_eq!(body["values"][3], "3/8");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["coeffs"]).0, 2);
        assert_eq!(call(&["nonsense"]).0, 2);
        assert_eq!(call(&["coeffs", "--limit", "0"]).0, 2);
        assert_eq!(call(&["coeffs", "--limit", "5", "--k", "x"]).0, 2);
    }

    #[test]
    fn computational_errors_exit_one() {
        let (code, out) = call(&["zeta-eval", "--sigma", "1", "--t", "0", "--precision-bits", "64"]);
        assert_eq!(code, 1);
        let body: Value = serde_json::from_str(out.split_once('\n').unwrap().1).unwrap();
        assert_eq!(body["schema"], "error");
        assert_eq!(body["kind"], "pole");
    }

    #[test]
    fn zeta_eval_methods_agree() {
        let (c1, em) = call(&["zeta-eval", "--sigma", "0.5", "--t", "100", "--method", "em", "--precision-bits", "128"]);
        let (c2, rs) = call(&["zeta-eval", "--sigma", "0.5", "--t", "100", "--method", "auto", "--precision-bits", "128"]);
        assert_eq!((c1, c2), (0, 0));
        let em: Value = serde_json::from_str(em.split_once('\n').unwrap().1).unwrap();
        let rs: Value = serde_json::from_str(rs.split_once('\n').unwrap().1).unwrap();
        assert_eq!(rs["method"], "riemann-siegel");
        let a: f64 = em["abs"].as_str().unwrap().parse().unwrap();
        let b: f64 = rs["abs"].as_str().unwrap().parse().unwrap();
        assert!((a - b).abs() < 1e-6);
    }

    #[test]
    fn output_independent_of_jobs() {
        let args = ["constants", "--name", "hk", "--s", "2", "--prime-cutoff", "5000"];
        let (_, one) = call(&[&args[..], &["--jobs", "1"]].concat());
        let (_, four) = call(&[&args[..], &["--jobs", "4"]].concat());
        assert_eq!(one, four);
    }
}
