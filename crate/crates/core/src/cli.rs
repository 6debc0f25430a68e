//! Command-line front end: argument model, dispatch, and report rendering.
//!
//! Every report is a JSON document `{config, result, diagnostics, version}`;
//! `scan` can also emit CSV with the fixed header
//! `p,H,base_size,n_max,max_layer,elapsed_ms`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::base_sets::{
    build_prime_reciprocal_set, build_smooth_set, check_multiplicative_conditions, BaseSetSpec,
    PrimeReciprocalSet,
};
use crate::error::Error;
use crate::exp_sums::{
    check_covering_positivity, compute_j_real, min_covering_j, verify_bilinear_bound, ExpSumProfile,
};
use crate::field::PrimeField;
use crate::growth::{grow_until, n_bound, GrowthConfig, GrowthTrace, ResidueSet};
use crate::oracle;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::report::{ser_opt_biguint, ser_opt_rational, ser_rational};
use crate::representer::{min_terms, n_max, scan, ReprProblem, ScanRow};

/// Largest modulus accepted together with `--oracle`.
pub const ORACLE_MAX_P: u64 = 100;

pub const CSV_HEADER: [&str; 6] = ["p", "H", "base_size", "n_max", "max_layer", "elapsed_ms"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeRange {
    pub start: u64,
    pub end: u64,
}

impl FromStr for PrimeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once("..=")
            .or_else(|| s.split_once(".."))
            .ok_or_else(|| format!("expected a range \"lo..hi\", got {s:?}"))?;
        let parse = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
        Ok(PrimeRange {
            start: parse(a)?,
            end: parse(b)?,
        })
    }
}

impl fmt::Display for PrimeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    if !s.contains('/') {
        return Err(format!(
            "exponents are exact rationals \"num/den\", got {s:?}"
        ));
    }
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "modrecip",
    version,
    about = "Reciprocal power representations modulo a prime"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads (defaults to all cores). Never affects the output.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

impl Cli {
    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            command: self.command.clone(),
            format: self.format,
            output: self.output.clone(),
        }
    }
}

/// Everything that determines a report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    pub format: Format,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GrowthArgs {
    #[arg(long, value_parser = rational_arg)]
    #[serde(serialize_with = "ser_rational")]
    pub beta: Rational,
    /// Override the tuple length u.
    #[arg(long)]
    pub u: Option<u64>,
    #[arg(long = "threshold-exponent", value_parser = rational_arg, default_value = "2/3")]
    #[serde(serialize_with = "ser_rational")]
    pub threshold_exponent: Rational,
    #[arg(long = "max-iters", default_value_t = 64)]
    pub max_iters: usize,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Minimal witness for a single residue.
    Represent {
        #[command(flatten)]
        #[serde(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = rational_arg)]
        #[serde(serialize_with = "ser_rational")]
        epsilon: Rational,
        #[arg(long)]
        a: u64,
        /// Cross-check against the brute-force search (p <= 100).
        #[arg(long)]
        oracle: bool,
    },
    /// Minimal N for every residue.
    Nmax {
        #[command(flatten)]
        #[serde(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = rational_arg)]
        #[serde(serialize_with = "ser_rational")]
        epsilon: Rational,
        #[arg(long)]
        oracle: bool,
    },
    /// n_max over a range of primes.
    Scan {
        #[arg(long)]
        primes: PrimeRange,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, value_parser = rational_arg)]
        #[serde(serialize_with = "ser_rational")]
        epsilon: Rational,
        /// Record wall-clock time per row (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Sum/product growth from the prime reciprocal base set.
    Grow {
        #[command(flatten)]
        #[serde(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        #[serde(flatten)]
        growth: GrowthArgs,
    },
    /// Exponential sums and covering counts for a set T.
    Expsum {
        #[command(flatten)]
        #[serde(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        #[serde(flatten)]
        growth: GrowthArgs,
        /// Number of pair products; defaults to the sufficient J for the
        /// empirical exponent of |T|.
        #[arg(long)]
        j: Option<u64>,
        /// Use a random T of this size instead of the grown set.
        #[arg(long = "random-size", requires = "seed")]
        random_size: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The prime reciprocal base set and its distinctness report.
    Baseset {
        #[command(flatten)]
        #[serde(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = rational_arg)]
        #[serde(serialize_with = "ser_rational")]
        beta: Rational,
        #[arg(long)]
        u: Option<u64>,
    },
    /// Smooth multiplicative set and its structural conditions.
    Smoothset {
        #[arg(long)]
        p: u64,
        /// Largest allowed prime factor; defaults to floor(ln(p)^2).
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, value_parser = rational_arg)]
        #[serde(serialize_with = "ser_opt_rational")]
        epsilon: Option<Rational>,
        #[arg(long, value_parser = rational_arg)]
        #[serde(serialize_with = "ser_opt_rational")]
        theta: Option<Rational>,
    },
}

/// A failed run: exit code 1 for domain errors, 2 for usage errors.
#[derive(Debug, Clone, PartialEq)]
pub struct RunError {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

impl RunError {
    pub fn usage(message: impl Into<String>) -> Self {
        RunError {
            kind: "UsageError".into(),
            message: message.into(),
            exit_code: 2,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "error": { "kind": self.kind, "message": self.message, "exit_code": self.exit_code },
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError {
            kind: e.kind().into(),
            message: e.to_string(),
            exit_code: 1,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

/// A finished run, before rendering.
#[derive(Debug, Clone)]
pub struct Report {
    pub config: RunConfig,
    pub result: Value,
    pub diagnostics: Vec<String>,
    /// Present for `scan` only.
    pub rows: Option<Vec<ScanRow>>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "config": self.config,
            "result": self.result,
            "diagnostics": self.diagnostics,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }

    /// Renders in the configured format. Output always ends in a newline.
    pub fn render(&self) -> Result<String, RunError> {
        match self.config.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json())
                    .expect("report values are serializable");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let rows = self
                    .rows
                    .as_ref()
                    .ok_or_else(|| RunError::usage("csv output is only available for scan"))?;
                Ok(scan_csv(rows))
            }
            Format::Text => Ok(self.render_text()),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        if let Value::Object(map) = &self.result {
            for (key, value) in map {
                out.push_str(&format!("{key}: {value}\n"));
            }
        }
        for d in &self.diagnostics {
            out.push_str(&format!("note: {d}\n"));
        }
        out
    }
}

/// CSV for scan rows: UTF-8, LF line endings, fixed header.
pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    let opt = |v: Option<String>| v.unwrap_or_default();
    for r in rows {
        w.write_record([
            r.p.to_string(),
            r.height.to_string(),
            r.base_size.to_string(),
            opt(r.n_max.map(|n| n.to_string())),
            r.max_layer.to_string(),
            opt(r.elapsed_ms.map(|t| t.to_string())),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("ascii")
}

fn field_of(p: u64) -> Result<PrimeField, RunError> {
    Ok(PrimeField::new(p)?)
}

fn base_spec(
    field: PrimeField,
    k: u32,
    beta: Rational,
    u: Option<u64>,
) -> Result<BaseSetSpec, Error> {
    match u {
        Some(u) => BaseSetSpec::with_u(field, k, beta, u),
        None => BaseSetSpec::new(field, k, beta),
    }
}

#[derive(Serialize)]
struct TraceView<'a> {
    steps: &'a [crate::growth::GrowthStep],
    n: usize,
    u: u64,
    #[serde(serialize_with = "ser_opt_biguint")]
    term_bound: &'a Option<num_bigint::BigUint>,
    term_bound_overflow: bool,
    height_exponent: String,
    monotone: bool,
    shrinking_steps: &'a [usize],
    min_theta_hat: Option<f64>,
    n_bound_at_min_theta: Option<f64>,
}

fn trace_view<'a>(trace: &'a GrowthTrace, k: u32) -> TraceView<'a> {
    let min_theta = trace.min_theta_hat();
    TraceView {
        steps: &trace.steps,
        n: trace.n,
        u: trace.u,
        term_bound: &trace.term_bound,
        term_bound_overflow: trace.term_bound_overflow,
        height_exponent: format!(
            "{}/{}",
            trace.height_exponent.numer(),
            trace.height_exponent.denom()
        ),
        monotone: trace.is_monotone(),
        shrinking_steps: &trace.shrinking_steps,
        min_theta_hat: min_theta,
        n_bound_at_min_theta: min_theta.and_then(|t| n_bound(k, t).ok()),
    }
}

/// Base set followed by the growth iteration, shared by `grow` and `expsum`.
pub fn growth_pipeline(
    field: PrimeField,
    k: u32,
    growth: &GrowthArgs,
) -> Result<(PrimeReciprocalSet, ResidueSet, GrowthTrace), Error> {
    let spec = base_spec(field, k, growth.beta, growth.u)?;
    let base = build_prime_reciprocal_set(&spec)?;
    let cfg = GrowthConfig {
        threshold_exponent: growth.threshold_exponent,
        max_iters: growth.max_iters,
        ..GrowthConfig::for_k(k)
    };
    let (grown, trace) = grow_until(&base.set, &cfg, spec.u, spec.beta)?;
    Ok((base, grown, trace))
}

/// Seeded uniform random subset of Z/pZ of the given size.
pub fn random_set(field: PrimeField, size: usize, seed: u64) -> ResidueSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idx = sample(&mut rng, field.order(), size.min(field.order()));
    ResidueSet::from_values(field, idx.into_iter().map(|i| i as u64))
}

fn base_diagnostics(spec: &BaseSetSpec, diagnostics: &mut Vec<String>) {
    if !spec.in_small_beta_regime() {
        diagnostics.push(format!(
            "beta = {} is outside the small-beta regime beta < 1/(5k)",
            format_rational(&spec.beta)
        ));
    }
}

/// Executes a parsed configuration.
pub fn run(config: &RunConfig) -> Result<Report, RunError> {
    if config.format == Format::Csv && !matches!(config.command, Command::Scan { .. }) {
        return Err(RunError::usage("csv output is only available for scan"));
    }
    let mut diagnostics = Vec::new();
    let mut rows = None;
    let result = match &config.command {
        Command::Represent {
            field,
            epsilon,
            a,
            oracle: use_oracle,
        } => {
            let f = field_of(field.p)?;
            if *use_oracle && field.p > ORACLE_MAX_P {
                return Err(RunError::usage(format!(
                    "--oracle requires p <= {ORACLE_MAX_P}"
                )));
            }
            let problem = ReprProblem::new(f, field.k, *epsilon)?;
            let w = min_terms(*a, &problem)?;
            if *use_oracle {
                let brute = oracle::min_terms_all(&problem, f.order());
                let target = w.target as usize;
                if brute[target] != Some(w.len() as u32) {
                    return Err(Error::OracleMismatch {
                        residue: w.target,
                        layered: w.len() as u32,
                        oracle: brute[target],
                    }
                    .into());
                }
                diagnostics.push("oracle agrees".into());
            }
            json!({ "a": w.target, "H": problem.height, "N": w.len(), "witness": w.xs })
        }
        Command::Nmax {
            field,
            epsilon,
            oracle: use_oracle,
        } => {
            let f = field_of(field.p)?;
            if *use_oracle && field.p > ORACLE_MAX_P {
                return Err(RunError::usage(format!(
                    "--oracle requires p <= {ORACLE_MAX_P}"
                )));
            }
            let problem = ReprProblem::new(f, field.k, *epsilon)?;
            let prof = n_max(&problem)?;
            if *use_oracle {
                let (_, brute) = oracle::n_max(&problem)?;
                if let Some(r) = (0..brute.len()).find(|&r| brute[r] != prof.per_residue[r]) {
                    return Err(Error::OracleMismatch {
                        residue: r as u64,
                        layered: prof.per_residue[r],
                        oracle: Some(brute[r]),
                    }
                    .into());
                }
                diagnostics.push("oracle agrees".into());
            }
            json!({
                "H": problem.height,
                "base_size": prof.base_size,
                "layers": prof.layers_built,
                "n_max": prof.n_max,
                "histogram": prof.per_residue,
            })
        }
        Command::Scan {
            primes,
            k,
            epsilon,
            timing,
        } => {
            if *k == 0 {
                return Err(Error::InvalidParameter("k must be >= 1".into()).into());
            }
            let table = scan(primes.start..=primes.end, *k, *epsilon, *timing);
            if *timing {
                diagnostics.push("elapsed_ms is wall-clock time and varies between runs".into());
            }
            let value = json!({ "rows": table });
            rows = Some(table);
            value
        }
        Command::Grow { field, growth } => {
            let f = field_of(field.p)?;
            let (base, grown, trace) = growth_pipeline(f, field.k, growth)?;
            base_diagnostics(&base.spec, &mut diagnostics);
            json!({
                "u": base.spec.u,
                "base_size": base.set.card(),
                "base_report": base.report,
                "trace": trace_view(&trace, field.k),
                "final_size": grown.card(),
            })
        }
        Command::Expsum {
            field,
            growth,
            j,
            random_size,
            seed,
        } => {
            let f = field_of(field.p)?;
            let (t, source) = match (random_size, seed) {
                (Some(size), Some(seed)) => {
                    if *size == 0 {
                        return Err(RunError::usage("--random-size must be >= 1"));
                    }
                    (random_set(f, *size, *seed), "random")
                }
                (None, _) => {
                    let (base, grown, _) = growth_pipeline(f, field.k, growth)?;
                    base_diagnostics(&base.spec, &mut diagnostics);
                    (grown, "growth")
                }
                (Some(_), None) => return Err(RunError::usage("--random-size requires --seed")),
            };
            let profile = ExpSumProfile::new(&t);
            let bilinear = verify_bilinear_bound(&profile)?;
            let size = t.card() as f64;
            let p = f.modulus() as f64;
            let beta_emp = size.ln() / p.ln() - 0.5;
            let j = match j {
                Some(j) => *j,
                None if beta_emp > 0.0 => compute_j_real(beta_emp)?,
                None => return Err(RunError::usage("|T| <= sqrt(p); pass --j explicitly")),
            };
            let covering = check_covering_positivity(&t, j)?;
            json!({
                "source": source,
                "set_size": t.card(),
                "parseval_relative_error": profile.parseval_relative_error(),
                "bilinear": bilinear,
                "J": j,
                "covering": covering,
                "min_covering_j": min_covering_j(&t, 4 * f.modulus()),
            })
        }
        Command::Baseset { field, beta, u } => {
            let f = field_of(field.p)?;
            let spec = base_spec(f, field.k, *beta, *u)?;
            let base = build_prime_reciprocal_set(&spec)?;
            base_diagnostics(&spec, &mut diagnostics);
            json!({
                "u": spec.u,
                "u_overridden": spec.u_overridden,
                "primes": base.primes,
                "report": base.report,
                "members": base.set.to_vec(),
            })
        }
        Command::Smoothset {
            p,
            bound,
            epsilon,
            theta,
        } => {
            let f = field_of(*p)?;
            let bound = bound.unwrap_or_else(|| {
                let l = (*p as f64).ln();
                ((l * l).floor() as u64).max(2)
            });
            let set = build_smooth_set(f, bound)?;
            let eps = epsilon.unwrap_or(Rational::new(1, 2));
            let th = theta.unwrap_or(Rational::new(1, 2));
            let report = check_multiplicative_conditions(&set.members, f, eps, th)?;
            json!({
                "bound": bound,
                "size": set.members.len(),
                "members": set.members,
                "epsilon": format_rational(&eps),
                "theta": format_rational(&th),
                "report": report,
            })
        }
    };
    Ok(Report {
        config: config.clone(),
        result,
        diagnostics,
        rows,
    })
}

/// Parses argv and runs to a rendered document. Returns the text to write
/// and the exit code; failures render as a JSON error object.
pub fn run_args<I, T>(args: I) -> (Option<PathBuf>, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (None, e.to_string(), 0),
                _ => {
                    let err = RunError::usage(e.to_string().trim_end());
                    (None, format!("{}\n", err.to_json()), 2)
                }
            };
        }
    };
    let config = cli.run_config();
    let exec = || run(&config).and_then(|r| r.render());
    let outcome = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(exec),
            Err(e) => Err(RunError::usage(e.to_string())),
        },
        None => exec(),
    };
    match outcome {
        Ok(text) => (config.output, text, 0),
        Err(e) => (None, format!("{}\n", e.to_json()), e.exit_code),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (String, i32) {
        let mut argv = vec!["modrecip"];
        argv.extend_from_slice(args);
        let (_, out, code) = run_args(argv);
        (out, code)
    }

    fn result(args: &[&str]) -> Value {
        let (out, code) = go(args);
        assert_eq!(code, 0, "{out}");
        serde_json::from_str::<Value>(&out).unwrap()["result"].clone()
    }

    #[test]
    fn prime_range_parsing() {
        assert_eq!(
            "2..499".parse::<PrimeRange>().unwrap(),
            PrimeRange { start: 2, end: 499 }
        );
        assert_eq!(
            "2..=31".parse::<PrimeRange>().unwrap(),
            PrimeRange { start: 2, end: 31 }
        );
        assert!("2-31".parse::<PrimeRange>().is_err());
    }

    #[test]
    fn represent_example() {
        let r = result(&[
            "represent",
            "--p",
            "7",
            "--k",
            "1",
            "--epsilon",
            "1/1",
            "--a",
            "0",
        ]);
        assert_eq!(r["N"], 2);
        assert_eq!(r["witness"], json!([1, 6]));
        let r = result(&[
            "represent",
            "--p",
            "7",
            "--epsilon",
            "1/1",
            "--a",
            "0",
            "--oracle",
        ]);
        assert_eq!(r["N"], 2);
    }

    #[test]
    fn nmax_example() {
        let r = result(&["nmax", "--p", "7", "--k", "1", "--epsilon", "1/1"]);
        assert_eq!(r["n_max"], 2);
        assert_eq!(r["histogram"], json!([2, 1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn grow_example() {
        let r = result(&["grow", "--p", "101", "--k", "1", "--beta", "1/4"]);
        assert!(r["final_size"].as_u64().unwrap() > 21);
        let steps = r["trace"]["steps"].as_array().unwrap();
        assert_eq!(steps.len() as u64, r["trace"]["n"].as_u64().unwrap());
        assert!(r["trace"]["monotone"].as_bool().unwrap());
    }

    #[test]
    fn report_embeds_config() {
        let (out, _) = go(&["nmax", "--p", "7", "--epsilon", "1/2"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["config"]["command"], "nmax");
        assert_eq!(v["config"]["p"], 7);
        assert_eq!(v["config"]["k"], 1);
        assert_eq!(v["config"]["epsilon"], "1/2");
        assert_eq!(v["config"]["format"], "json");
        assert!(v["version"].is_string());
        assert!(v["diagnostics"].is_array());
    }

    #[test]
    fn exit_codes() {
        let (out, code) = go(&["nmax", "--p", "9", "--epsilon", "1/2"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["kind"], "NotPrime");

        let (_, code) = go(&["nmax", "--p", "7", "--epsilon", "0.5"]);
        assert_eq!(code, 2);
        let (_, code) = go(&["nmax", "--p", "101", "--epsilon", "1/2", "--oracle"]);
        assert_eq!(code, 2);
        let (_, code) = go(&["frobnicate"]);
        assert_eq!(code, 2);
        let (_, code) = go(&["grow", "--p", "7", "--epsilon", "1/2", "--format", "csv"]);
        assert_eq!(code, 2);
        let (out, code) = go(&["grow", "--p", "101", "--beta", "1/1"]);
        assert_eq!(code, 1, "{out}");
    }

    #[test]
    fn scan_csv_shape() {
        let (out, code) = go(&[
            "scan",
            "--primes",
            "2..13",
            "--k",
            "1",
            "--epsilon",
            "1/1",
            "--format",
            "csv",
        ]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.split('\n').collect();
        assert_eq!(lines[0], "p,H,base_size,n_max,max_layer,elapsed_ms");
        assert_eq!(lines[1], "2,2,1,2,2,");
        assert_eq!(lines.len(), 2 + 6); // header, 6 primes, trailing empty
        assert!(!out.contains('\r'));
    }

    #[test]
    fn other_commands_run() {
        let r = result(&["baseset", "--p", "101", "--beta", "1/2", "--u", "1"]);
        assert_eq!(r["members"], json!([29, 34, 51, 81]));
        let r = result(&["smoothset", "--p", "11", "--bound", "3"]);
        assert_eq!(r["members"], json!([1, 2, 3, 4, 6, 8, 9]));
        assert_eq!(r["report"]["closure"], true);
        let r = result(&["expsum", "--p", "101", "--beta", "1/4"]);
        assert_eq!(r["source"], "growth");
        assert_eq!(r["covering"]["all_covered"], true);
        let r = result(&[
            "expsum",
            "--p",
            "101",
            "--beta",
            "1/4",
            "--random-size",
            "30",
            "--seed",
            "7",
            "--j",
            "3",
        ]);
        assert_eq!(r["set_size"], 30);
        let (text, code) = go(&["nmax", "--p", "7", "--epsilon", "1/1", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(text.contains("n_max: 2"));
    }
}
