//! Command-line front end. Every subcommand writes CSV, JSON (sorted keys,
//! `"schema": "heisenspec/1"`) or SVG to stdout or `--out`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::butterfly::{butterfly_sweep, render_svg};
use crate::charpoly::{charpoly_coeffs, charpoly_eval};
use crate::eigen::{check_lemma_2_2, check_lemma_2_3, max_eigenvalue, max_over_q, DEFAULT_N0};
use crate::error::{invalid, Error};
use crate::group::{format_moment, return_moments, MAX_WALK_STEPS};
use crate::measure::{
    cheb_filter, edge_bound_report, finite_measure_with_guard, measure_of_edge_set, DESK_GUARD,
};
use crate::reps::{harper_matrix, irrep_table, is_prime};
use crate::verify::{run_suite, Level, SuiteConfig};

pub const SCHEMA: &str = "heisenspec/1";
pub const ENV_N0: &str = "HEISENSPEC_N0";
pub const ENV_DESK_GUARD: &str = "HEISENSPEC_DESK_GUARD";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "heisenspec", version, about = "Spectral toolkit for the discrete Heisenberg group")]
pub struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Asymptotic threshold for the eigenvalue bound checks (env HEISENSPEC_N0).
    #[arg(long, global = true)]
    pub n0: Option<usize>,

    /// Largest modulus for finite spectral measures (env HEISENSPEC_DESK_GUARD).
    #[arg(long, global = true)]
    pub desk_guard: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Irreducible representations of H_p and their Laplace values.
    Irreps {
        #[arg(long)]
        n: u64,
    },
    /// Largest eigenvalue of the Harper matrix T_q.
    Maxeig(MaxeigArgs),
    /// Sweep the eigenvalue envelopes over a range of primes.
    Bounds {
        #[arg(long, value_enum)]
        lemma: LemmaKind,
        #[arg(long)]
        nmin: usize,
        #[arg(long)]
        nmax: usize,
    },
    /// Characteristic polynomial of T_q: coefficients or a point value.
    Charpoly(CharpolyArgs),
    /// Band edges for every flux q/n with n up to the given denominator.
    Butterfly {
        #[arg(long)]
        max_denominator: usize,
        /// Also write an SVG rendering here.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 600)]
        height: u32,
    },
    /// Exact return moment after k steps.
    Moments {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        modulus: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Edge masses of the finite spectral measure.
    Measure {
        #[arg(long)]
        modulus: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        edges: Vec<f64>,
    },
    /// Sample the normalised Chebyshev edge filter on [-1, 1].
    Chebfilter {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
    },
    /// Edge-mass inequality chain at t = 1/n^2.
    Theorem43 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
    },
    /// Run the invariant suite.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyLevel::Quick)]
        level: VerifyLevel,
        #[arg(long, hide = true)]
        tamper_eigen: bool,
    },
}

#[derive(Debug, Args)]
pub struct MaxeigArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1, conflicts_with = "all_q")]
    pub q: usize,
    /// Maximise over every q.
    #[arg(long)]
    pub all_q: bool,
}

#[derive(Debug, Args)]
pub struct CharpolyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: usize,
    /// Emit expanded coefficients (default).
    #[arg(long, conflicts_with = "eval")]
    pub expand: bool,
    #[arg(long, allow_negative_numbers = true)]
    pub eval: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LemmaKind {
    #[value(name = "2.2")]
    Lambda,
    #[value(name = "2.3")]
    Mu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyLevel {
    Quick,
    Full,
}

/// Resolved configuration: flags first, then environment, then defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub out: Option<PathBuf>,
    pub n0: usize,
    pub desk_guard: u64,
}

fn env_override<T: std::str::FromStr>(name: &str) -> Result<Option<T>, Error> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| invalid(format!("{name} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<RunConfig, Error> {
        let n0 = match cli.n0 {
            Some(v) => v,
            None => env_override(ENV_N0)?.unwrap_or(DEFAULT_N0),
        };
        let desk_guard = match cli.desk_guard {
            Some(v) => v,
            None => env_override(ENV_DESK_GUARD)?.unwrap_or(DESK_GUARD),
        };
        if desk_guard < 3 {
            return Err(invalid(format!("desk guard must be at least 3, got {desk_guard}")));
        }
        Ok(RunConfig {
            out: cli.out.clone(),
            n0,
            desk_guard,
        })
    }
}

/// `{:.16e}`: 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_doc(fields: Value) -> String {
    let mut map = match fields {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    };
    map.insert("schema".into(), Value::from(SCHEMA));
    let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("finite json");
    s.push('\n');
    s
}

fn num(x: f64) -> Result<Value, Error> {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .ok_or_else(|| Error::Overflow(format!("non-finite value {x}")))
}

enum Output {
    Text(String),
    /// Already streamed to stdout; exit with this code.
    Streamed(i32),
}

fn execute(cli: &Cli, cfg: &RunConfig) -> Result<Output, Error> {
    let text = match &cli.command {
        Command::Irreps { n } => {
            let table = irrep_table(*n)?;
            let one_dim = table
                .one_dim
                .iter()
                .map(|&(a, b, v)| Ok(json!([a, b, num(v)?])))
                .collect::<Result<Vec<_>, Error>>()?;
            json_doc(json!({
                "n": n,
                "one_dim": one_dim,
                "multi_dim": table.multi_dim,
                "dimension_square_sum": table.dimension_square_sum(),
            }))
        }
        Command::Maxeig(args) => {
            let (lambda, q) = if args.all_q {
                max_over_q(args.n)?
            } else {
                (max_eigenvalue(&harper_matrix(args.n, args.q)?)?, args.q)
            };
            let key = if args.all_q { "argmax_q" } else { "q" };
            let mut doc = json!({
                "n": args.n,
                "lambda": num(lambda)?,
                "gap_times_n": num((4.0 - lambda) * args.n as f64)?,
            });
            doc[key] = json!(q);
            json_doc(doc)
        }
        Command::Bounds { lemma, nmin, nmax } => bounds_csv(*lemma, *nmin, *nmax, cfg.n0)?,
        Command::Charpoly(args) => {
            if let Some(x) = args.eval {
                json_doc(json!({
                    "n": args.n,
                    "q": args.q,
                    "x": num(x)?,
                    "value": num(charpoly_eval(args.n, args.q, x)?)?,
                }))
            } else {
                let c = charpoly_coeffs(args.n, args.q)?
                    .into_iter()
                    .map(num)
                    .collect::<Result<Vec<_>, Error>>()?;
                json_doc(json!({
                    "n": args.n,
                    "q": args.q,
                    "order": "ascending",
                    "coefficients": c,
                }))
            }
        }
        Command::Butterfly {
            max_denominator,
            svg,
            width,
            height,
        } => {
            if *width == 0 || *height == 0 {
                return Err(invalid(format!("svg dimensions must be positive, got {width}x{height}")));
            }
            let all = butterfly_sweep(*max_denominator)?;
            if let Some(path) = svg {
                write_file(path, &render_svg(&all, *width, *height)?)?;
            }
            let mut s = String::from("n,q,band_index,lower,upper\n");
            for b in &all {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    b.n,
                    b.q,
                    b.index,
                    fmt_float(b.lower),
                    fmt_float(b.upper)
                ));
            }
            s
        }
        Command::Moments { k, modulus, format } => {
            if *k > MAX_WALK_STEPS {
                return Err(invalid(format!(
                    "k must be at most {MAX_WALK_STEPS} (the walk state grows like k^4), got {k}"
                )));
            }
            let m = return_moments(*k, *modulus)?;
            match format {
                Format::Json => {
                    let mut doc = json!({"k": k, "value": format_moment(&m[*k])});
                    if let Some(p) = modulus {
                        doc["modulus"] = json!(p);
                    }
                    json_doc(doc)
                }
                Format::Csv => {
                    let mut s = String::from("k,value\n");
                    for (i, v) in m.iter().enumerate() {
                        s.push_str(&format!("{i},{}\n", format_moment(v)));
                    }
                    s
                }
            }
        }
        Command::Measure { modulus, edges } => {
            for &t in edges {
                if !(t > 0.0 && t <= 1.0) {
                    return Err(invalid(format!("edge width t must lie in (0, 1], got {t}")));
                }
            }
            let m = finite_measure_with_guard(*modulus, cfg.desk_guard)?;
            let mut s = String::from("t,mu\n");
            for &t in edges {
                s.push_str(&format!("{},{}\n", fmt_float(t), fmt_float(measure_of_edge_set(&m, t)?)));
            }
            s
        }
        Command::Chebfilter { n, alpha, grid } => {
            if *grid < 2 {
                return Err(invalid(format!("grid needs at least 2 points, got {grid}")));
            }
            let f = cheb_filter(*n, *alpha)?;
            let mut s = String::from("x,p\n");
            let m = grid - 1;
            for i in 0..=m {
                let x = -1.0 + 2.0 * i as f64 / m as f64;
                s.push_str(&format!("{},{}\n", fmt_float(x), fmt_float(f.eval(x))));
            }
            s
        }
        Command::Theorem43 { n, alpha } => {
            let r = edge_bound_report(*n, *alpha, cfg.desk_guard)?;
            json_doc(json!({
                "n": r.n,
                "alpha": num(r.alpha)?,
                "t": num(r.t)?,
                "N": r.modulus,
                "c0": num(r.c0)?,
                "norm_c": num(r.norm_c)?,
                "mu_edge": num(r.mu_edge)?,
                "mu_relaxed": num(r.mu_relaxed)?,
                "norm_squared": num(r.norm_squared)?,
                "norm_squared_infinite": num(r.norm_squared_infinite)?,
                "lhs": num(r.lhs)?,
                "rhs": num(r.rhs)?,
                "upper_ok": r.upper_ok,
                "lower_ok": r.lower_ok,
                "transfer_ok": r.transfer_ok,
                "counting_bound": num(r.counting_bound)?,
                "counting_ok": r.counting_ok,
                "chain_ok": r.chain_ok,
                "c1_estimate": num(r.c1_estimate)?,
            }))
        }
        Command::Verify {
            level,
            tamper_eigen,
        } => {
            let suite = SuiteConfig {
                level: match level {
                    VerifyLevel::Quick => Level::Quick,
                    VerifyLevel::Full => Level::Full,
                },
                n0: cfg.n0,
                desk_guard: cfg.desk_guard,
                tamper_eigen: *tamper_eigen,
            };
            return Ok(Output::Streamed(verify(&suite, cfg)?));
        }
    };
    Ok(Output::Text(text))
}

fn bounds_csv(lemma: LemmaKind, nmin: usize, nmax: usize, n0: usize) -> Result<String, Error> {
    if nmin > nmax {
        return Err(invalid(format!("nmin {nmin} exceeds nmax {nmax}")));
    }
    if nmin < n0 {
        return Err(invalid(format!(
            "nmin {nmin} is below the asymptotic threshold n0={n0}"
        )));
    }
    let mut s = String::from("n,lambda_or_mu,bound_low,bound_high,pass\n");
    for n in (nmin..=nmax).filter(|&n| is_prime(n as u64)) {
        match lemma {
            LemmaKind::Lambda => {
                let c = check_lemma_2_2(n, n0)?;
                s.push_str(&format!(
                    "{n},{},{},{},{}\n",
                    fmt_float(c.lambda),
                    fmt_float(c.bound_low()),
                    fmt_float(c.bound_high()),
                    c.passed()
                ));
            }
            LemmaKind::Mu => {
                let c = check_lemma_2_3(n, n0)?;
                s.push_str(&format!(
                    "{n},{},,{},{}\n",
                    fmt_float(c.mu),
                    fmt_float(c.bound_high()),
                    c.ok
                ));
            }
        }
    }
    Ok(s)
}

fn verify(suite: &SuiteConfig, cfg: &RunConfig) -> Result<i32, Error> {
    let mut lines = String::new();
    let mut stdout = std::io::stdout().lock();
    let outcomes = run_suite(suite, |o| {
        let line = format!(
            "{} {} {}\n",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
        if cfg.out.is_none() {
            let _ = stdout.write_all(line.as_bytes());
            let _ = stdout.flush();
        }
        lines.push_str(&line);
    });
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    let summary = format!(
        "{} invariants, {} passed, {} failed\n",
        outcomes.len(),
        outcomes.len() - failed.len(),
        failed.len()
    );
    lines.push_str(&summary);
    match &cfg.out {
        Some(path) => write_file(path, &lines)?,
        None => {
            let _ = stdout.write_all(summary.as_bytes());
        }
    }
    if !failed.is_empty() {
        eprintln!("verify: failed invariants: {}", failed.join(", "));
        return Ok(EXIT_NUMERICAL);
    }
    Ok(EXIT_OK)
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Error> {
    std::fs::write(path, text)
        .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))
}

fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_INVALID
    }
}

/// Parses `argv`, runs the subcommand and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let cfg = match RunConfig::resolve(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("heisenspec: {e}");
            return EXIT_INVALID;
        }
    };
    match execute(&cli, &cfg) {
        Ok(Output::Text(text)) => match &cfg.out {
            Some(path) => match write_file(path, &text) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    eprintln!("heisenspec: {e}");
                    EXIT_INVALID
                }
            },
            None => {
                let mut stdout = std::io::stdout().lock();
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            }
        },
        Ok(Output::Streamed(code)) => code,
        Err(e) => {
            eprintln!("heisenspec: {e}");
            exit_code(&e)
        }
    }
}
