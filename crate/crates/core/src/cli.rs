//! The `englert-sums` command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bernoulli::{bernoulli, format_rational};
use crate::coeffs::{c_table, poly_c, poly_s};
use crate::error::Error;
use crate::oracle::{oracle_eval, MIN_TOL};
use crate::polylog::{li_on_circle, UnitCirclePoint};
use crate::sums::{eval, eval_via_relation, singular_distance, singular_points, SumFamily};
use crate::verify::{run_arbitration, run_verify, ArbitrationCase, Grid, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Environment variable capping the worker threads used by `verify`.
pub const THREADS_ENV: &str = "ENGLERT_SUMS_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "englert-sums",
    version,
    about = "Closed forms of Englert-type Fourier series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one family at one point.
    Eval {
        family: String,
        n: u32,
        #[arg(allow_hyphen_values = true)]
        z: f64,
        /// Use the interrelation with another family instead of the direct form.
        #[arg(long)]
        relation: bool,
    },
    /// Tabulate a family on an evenly spaced grid.
    Table {
        family: String,
        n: u32,
        #[arg(allow_hyphen_values = true)]
        z0: f64,
        #[arg(allow_hyphen_values = true)]
        z1: f64,
        steps: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 1e-3)]
        exclusion_eps: f64,
    },
    /// Print the coefficient row c_i(n) of the cosine polynomial.
    Coeffs {
        n: u32,
        /// LaTeX for the cosine and sine polynomials instead of CSV.
        #[arg(long, conflicts_with = "csv")]
        latex: bool,
        #[arg(long)]
        csv: bool,
        /// Print the Bernoulli number B_r instead.
        #[arg(long, value_name = "R")]
        bernoulli: Option<usize>,
    },
    /// Evaluate Li_a(e^(i theta)).
    Polylog {
        a: u32,
        #[arg(allow_hyphen_values = true)]
        theta: f64,
    },
    /// Sum the series directly.
    Oracle {
        family: String,
        n: u32,
        #[arg(allow_hyphen_values = true)]
        z: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Compare closed forms with the oracle on a grid and write a report.
    Verify {
        /// Comma-separated family codes (default: all).
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<String>>,
        /// Inclusive order range `a..b`.
        #[arg(long, default_value = "0..3")]
        orders: String,
        /// `z0 z1 steps`.
        #[arg(long, num_args = 3, allow_hyphen_values = true, value_names = ["Z0", "Z1", "STEPS"])]
        grid: Option<Vec<String>>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value = "verify_report.csv")]
        report: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 1e-3)]
        exclusion_eps: f64,
        /// Also arbitrate displayed formulas against the oracle.
        #[arg(long)]
        arbitrate: bool,
        #[arg(long, default_value = "conformance_report.csv")]
        conformance: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

/// Numbers are printed with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let first = e.to_string();
            let first = first
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            let _ = writeln!(err, "E{EXIT_USAGE}: {first}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "E{EXIT_USAGE}: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "E{}: {e}", e.code());
            match e {
                Error::UnknownFamily(_) => EXIT_USAGE,
                _ => EXIT_DOMAIN,
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "E{EXIT_DOMAIN}: {e}");
            EXIT_DOMAIN
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Eval {
            family,
            n,
            z,
            relation,
        } => {
            let f = SumFamily::parse(&family, n)?;
            let r = if relation {
                eval_via_relation(&f, z)?
            } else {
                eval(&f, z)?
            };
            writeln!(out, "{}", fmt_f64(r.value))?;
            writeln!(out, "path={}", r.path)?;
            writeln!(out, "error_bound={}", fmt_f64(r.error_bound))?;
        }
        Command::Table {
            family,
            n,
            z0,
            z1,
            steps,
            format,
            exclusion_eps,
        } => table(
            &family,
            n,
            Grid::new(z0, z1, steps)?,
            format,
            exclusion_eps,
            out,
        )?,
        Command::Coeffs {
            n,
            latex,
            csv: _,
            bernoulli: b,
        } => {
            if let Some(r) = b {
                writeln!(out, "{}", format_rational(&bernoulli(r)?))?;
            } else if latex {
                writeln!(out, "C_{n}(z) = {}", poly_c(n)?.to_latex())?;
                writeln!(out, "S_{n}(z) = {}", poly_s(n)?.to_latex())?;
            } else {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(["n", "i", "num", "den"])?;
                for (i, c) in c_table(n)?.iter().enumerate() {
                    w.write_record([
                        n.to_string(),
                        i.to_string(),
                        c.numer().to_string(),
                        c.denom().to_string(),
                    ])?;
                }
                w.flush()?;
            }
        }
        Command::Polylog { a, theta } => {
            let v = li_on_circle(a, UnitCirclePoint::from_theta(theta)?)?;
            writeln!(out, "re={}", fmt_f64(v.real_part))?;
            writeln!(out, "im={}", fmt_f64(v.imag_part))?;
            writeln!(out, "error_bound={}", fmt_f64(v.error_bound))?;
        }
        Command::Oracle { family, n, z, tol } => {
            let f = SumFamily::parse(&family, n)?;
            let r = oracle_eval(&f, z, tol)?;
            writeln!(out, "value={}", fmt_f64(r.value))?;
            writeln!(out, "terms_used={}", r.terms_used)?;
            writeln!(out, "tail_bound={}", fmt_f64(r.tail_bound))?;
            writeln!(out, "mode={}", r.mode)?;
        }
        Command::Verify {
            families,
            orders,
            grid,
            tol,
            report,
            format,
            exclusion_eps,
            arbitrate,
            conformance,
        } => {
            let families = families
                .unwrap_or_else(|| SumFamily::CODES.iter().map(|s| s.to_string()).collect());
            let cfg = VerifyConfig {
                families,
                orders: parse_orders(&orders)?,
                grid: parse_grid(grid.as_deref())?,
                tol,
                exclusion_eps,
            };
            if tol.is_nan() || tol < MIN_TOL {
                return Err(Failure::Usage(format!(
                    "--tol must be at least {MIN_TOL:e}"
                )));
            }
            return verify(
                &cfg,
                &report,
                format,
                arbitrate.then_some(&*conformance),
                out,
            );
        }
    }
    Ok(EXIT_OK)
}

fn parse_orders(s: &str) -> Result<std::ops::RangeInclusive<u32>, Failure> {
    let bad = || Failure::Usage(format!("--orders expects `a..b`, got `{s}`"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn parse_grid(g: Option<&[String]>) -> Result<Grid, Failure> {
    let Some(g) = g else {
        return Ok(Grid::new(-1.3, 2.7, 41)?);
    };
    let bad = |v: &str| Failure::Usage(format!("invalid --grid value `{v}`"));
    let z0: f64 = g[0].parse().map_err(|_| bad(&g[0]))?;
    let z1: f64 = g[1].parse().map_err(|_| bad(&g[1]))?;
    let steps: usize = g[2].parse().map_err(|_| bad(&g[2]))?;
    Grid::new(z0, z1, steps).map_err(|e| Failure::Usage(e.to_string()))
}

fn with_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    match builder.build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn delimiter(format: Format) -> u8 {
    if format == Format::Tsv {
        b'\t'
    } else {
        b','
    }
}

#[derive(Serialize)]
struct TableRow {
    z: f64,
    value: f64,
    path: &'static str,
    error_bound: f64,
}

fn table(
    code: &str,
    n: u32,
    grid: Grid,
    format: Format,
    eps: f64,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let f = SumFamily::parse(code, n)?;
    let mut rows = Vec::new();
    let mut excluded = Vec::new();
    for z in grid.points() {
        if !singular_points(&f).is_empty() && singular_distance(&f, z) <= eps {
            excluded.push(z);
            continue;
        }
        let r = eval(&f, z)?;
        rows.push(TableRow {
            z,
            value: r.value,
            path: r.path.as_str(),
            error_bound: r.error_bound,
        });
    }
    if format == Format::Json {
        #[derive(Serialize)]
        struct Doc<'a> {
            family: String,
            n: u32,
            rows: &'a [TableRow],
            excluded: &'a [f64],
        }
        let doc = Doc {
            family: f.code(),
            n,
            rows: &rows,
            excluded: &excluded,
        };
        serde_json::to_writer_pretty(&mut *out, &doc).map_err(io::Error::other)?;
        writeln!(out)?;
        return Ok(());
    }
    {
        let mut w = csv::WriterBuilder::new()
            .delimiter(delimiter(format))
            .from_writer(&mut *out);
        w.write_record(["z", "value", "path", "error_bound"])?;
        for r in &rows {
            w.write_record([
                fmt_f64(r.z),
                fmt_f64(r.value),
                r.path.to_string(),
                fmt_f64(r.error_bound),
            ])?;
        }
        w.flush()?;
    }
    if !excluded.is_empty() {
        writeln!(out, "# excluded {} singular point(s):", excluded.len())?;
        for z in &excluded {
            writeln!(out, "# {}", fmt_f64(*z))?;
        }
    }
    Ok(())
}

fn verify(
    cfg: &VerifyConfig,
    report: &Path,
    format: Format,
    conformance: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let outcome = with_pool(|| run_verify(cfg))?;
    let file = File::create(report)?;
    if format == Format::Json {
        serde_json::to_writer_pretty(&file, &outcome.rows).map_err(io::Error::other)?;
    } else {
        let mut w = csv::WriterBuilder::new()
            .delimiter(delimiter(format))
            .from_writer(file);
        w.write_record([
            "family",
            "n",
            "z",
            "closed_form",
            "oracle",
            "abs_diff",
            "verdict",
        ])?;
        for r in &outcome.rows {
            w.write_record([
                r.family.clone(),
                r.n.to_string(),
                fmt_f64(r.z),
                fmt_f64(r.closed_form),
                fmt_f64(r.oracle),
                fmt_f64(r.abs_diff),
                r.verdict.as_str().to_string(),
            ])?;
        }
        w.flush()?;
    }
    let mut ok = outcome.all_passed();
    if let Some(path) = conformance {
        let cases = run_arbitration(cfg.tol)?;
        write_conformance(&cases, path, format)?;
        for c in &cases {
            let total = c.report.rows.len();
            let a = c
                .report
                .rows
                .iter()
                .filter(|r| r.diff_a <= r.threshold)
                .count();
            let b = c
                .report
                .rows
                .iter()
                .filter(|r| r.diff_b <= r.threshold)
                .count();
            writeln!(
                out,
                "arbitrate {}: {} {a}/{total}, {} {b}/{total}",
                c.name, c.claim_a, c.claim_b
            )?;
            // claim A is the form the library evaluates
            ok &= c.report.a_holds();
        }
    }
    writeln!(out, "{}", outcome.summary())?;
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

fn write_conformance(
    cases: &[ArbitrationCase],
    path: &Path,
    format: Format,
) -> Result<(), Failure> {
    let file = File::create(path)?;
    if format == Format::Json {
        serde_json::to_writer_pretty(&file, cases).map_err(io::Error::other)?;
        return Ok(());
    }
    let mut w = csv::WriterBuilder::new()
        .delimiter(delimiter(format))
        .from_writer(file);
    w.write_record([
        "case",
        "claim_a",
        "claim_b",
        "z",
        "value_a",
        "value_b",
        "oracle",
        "diff_a",
        "diff_b",
        "threshold",
        "verdict",
    ])?;
    for c in cases {
        for r in &c.report.rows {
            w.write_record([
                c.name.clone(),
                c.claim_a.to_string(),
                c.claim_b.to_string(),
                fmt_f64(r.z),
                fmt_f64(r.claim_a),
                fmt_f64(r.claim_b),
                fmt_f64(r.oracle),
                fmt_f64(r.diff_a),
                fmt_f64(r.diff_b),
                fmt_f64(r.threshold),
                r.verdict.as_str().to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
