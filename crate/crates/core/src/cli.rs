//! The `qdensity` command line.
//!
//! Exit codes: `0` success, `1` verification failure, `2` usage or parse
//! error, `3` resource limit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::json;

use crate::error::Error;
use crate::numeric::{parse_complex, q_of_z, ComplexPoint, EvalOptions, EvalResult, Route};
use crate::partitions::Oracle;
use crate::pell::pell_solutions;
use crate::series::smallest_part_series;
use crate::subsets::{parse, zeta_reciprocal_even, SubsetSpec};
use crate::tables::{self, truncate_complex, truncate_decimal, TableId};
use crate::verify::{self, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qdensity", version, about = "Arithmetic densities as radial limits of partition q-series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Direct,
    Sieve,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, clap::Args)]
struct Precision {
    /// Target absolute truncation error.
    #[arg(long, default_value_t = 1e-12)]
    eps: f64,
    /// Cap on product and sum lengths.
    #[arg(long, default_value_t = 10_000_000)]
    max_terms: usize,
}

impl Precision {
    fn options(&self) -> Result<EvalOptions, Error> {
        let opts = EvalOptions::default().with_eps(self.eps).with_max_terms(self.max_terms).with_env_overrides()?;
        opts.validate()?;
        Ok(opts)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate F_S at one point.
    Eval {
        #[arg(long)]
        subset: String,
        /// Point inside the unit disk, e.g. 0.9 or 0.99i or -0.5+0.3i.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "z", required_unless_present = "z")]
        q: Option<String>,
        /// Point of the upper half plane, mapped to q = exp(-2πi/z).
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        #[arg(long, value_enum, default_value_t = RouteArg::Direct)]
        route: RouteArg,
        #[command(flatten)]
        precision: Precision,
        /// Print values truncated to this many decimals.
        #[arg(long)]
        digits: Option<usize>,
        #[arg(long, value_enum, default_value_t = EvalFormat::Text)]
        format: EvalFormat,
    },
    /// Recompute a published table: ex1.1, ex4.1-real, ex4.1-imag, ex4.2, ex4.3.
    Table {
        id: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Emit `x,value_re,value_im` rows for plotting instead.
        #[arg(long)]
        plot_data: bool,
        #[arg(long)]
        digits: Option<usize>,
        #[arg(long, value_enum, default_value_t = RouteArg::Direct)]
        route: RouteArg,
        #[command(flatten)]
        precision: Precision,
        /// Compare against the printed digits and exit 1 on any mismatch.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a self-check suite: identities, duality, oracle, corollary12,
    /// sieve-vs-direct, qbinomial.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 200)]
        order: usize,
        #[arg(long, default_value_t = 40)]
        bound: u32,
        /// Restrict to these subsets (repeatable).
        #[arg(long)]
        subset: Vec<String>,
    },
    /// Exact density of a subset.
    Density {
        #[arg(long)]
        subset: String,
        #[arg(long, value_enum, default_value_t = EvalFormat::Text)]
        format: EvalFormat,
    },
    /// Solutions of x² − 6y² = 1 and the square pentagonal numbers they give.
    Pell {
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Compare series coefficients with brute-force partition sums.
    OracleCheck {
        #[arg(long)]
        subset: String,
        #[arg(long, default_value_t = 40)]
        bound: u32,
    },
}

/// A failure that maps to an exit code.
enum Failure {
    Lib(Error),
    Io(std::io::Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the command line with `args` (program name first).
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::ResourceLimit(_) => EXIT_RESOURCE,
                _ => EXIT_USAGE,
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILED
        }
    }
}

fn dispatch<W: Write, E: Write>(command: Command, out: &mut W, err: &mut E) -> CmdResult {
    match command {
        Command::Eval { subset, q, z, route, precision, digits, format } => {
            let spec = parse(&subset)?;
            let (input, point) = match (q, z) {
                (Some(q), _) => (q.clone(), ComplexPoint::new(parse_complex(&q)?)?),
                (None, Some(z)) => (z.clone(), q_of_z(parse_complex(&z)?)?),
                (None, None) => return Err(Failure::Usage("one of --q or --z is required".into())),
            };
            let opts = precision.options()?;
            let results = routes(route)
                .into_iter()
                .map(|r| Ok((r, r.evaluate(&spec, point, &opts)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            eval_output(out, &input, point, &results, digits, format)?;
            Ok(EXIT_OK)
        }
        Command::Table { id, format, plot_data, digits, route, precision, check, output } => {
            let id: TableId = id.parse()?;
            let opts = precision.options()?;
            let route = match route {
                RouteArg::Direct => Route::Direct,
                RouteArg::Sieve => Route::Sieve,
                RouteArg::Both => return Err(Failure::Usage("tables take a single route".into())),
            };
            let (golden, rows) = tables::compute_with(id, route, &opts)?;
            let mut buffer = Vec::new();
            table_output(&mut buffer, &rows, digits, format, plot_data)?;
            match output {
                Some(path) => std::fs::write(path, &buffer)?,
                None => out.write_all(&buffer)?,
            }
            for row in &rows {
                if let Err(e) = &row.result {
                    writeln!(err, "{}: {e}", row.input)?;
                }
            }
            if rows.iter().any(|r| matches!(r.result, Err(Error::ResourceLimit(_)))) {
                return Ok(EXIT_RESOURCE);
            }
            if check {
                let mismatched: Vec<_> = rows.iter().filter(|r| !r.matches(&golden)).collect();
                for row in &mismatched {
                    writeln!(err, "mismatch at {}: printed {}", row.input, row.printed)?;
                }
                if !mismatched.is_empty() {
                    return Ok(EXIT_FAILED);
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { suite, order, bound, subset } => {
            let suite: Suite = suite.parse()?;
            let subsets = if subset.is_empty() {
                None
            } else {
                Some(subset.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?)
            };
            let report = verify::run(suite, &VerifyOptions { order, bound, subsets })?;
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Density { subset, format } => {
            let spec = parse(&subset)?;
            density_output(out, &spec, format)?;
            Ok(EXIT_OK)
        }
        Command::Pell { count } => {
            if count == 0 {
                return Err(Failure::Usage("--count must be at least 1".into()));
            }
            let records: Vec<_> = pell_solutions(count)
                .iter()
                .map(|s| {
                    json!({
                        "k": s.k,
                        "x": s.x.to_string(),
                        "y": s.y.to_string(),
                        "n": s.square_root().map(|v| v.to_string()),
                        "m": s.pentagonal_index().map(|v| v.to_string()),
                        "square_pentagonal": s.square_pentagonal().map(|v| v.to_string()),
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&records)?)?;
            Ok(EXIT_OK)
        }
        Command::OracleCheck { subset, bound } => {
            let spec = parse(&subset)?;
            let oracle = Oracle::with_bound(bound);
            let series = smallest_part_series(&spec, bound as usize);
            let mut rows = Vec::new();
            let mut passed = true;
            for n in 0..=bound {
                let brute = oracle.f_s_coefficient(&spec, n)?;
                let exact = series.coeff(n as usize);
                let agree = BigInt::from(brute) == *exact;
                passed &= agree;
                rows.push(json!({ "n": n, "oracle": brute, "series": exact.to_string(), "agree": agree }));
            }
            let report = json!({ "subset": spec.to_string(), "bound": bound, "passed": passed, "coefficients": rows });
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            Ok(if passed { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn routes(route: RouteArg) -> Vec<Route> {
    match route {
        RouteArg::Direct => vec![Route::Direct],
        RouteArg::Sieve => vec![Route::Sieve],
        RouteArg::Both => vec![Route::Direct, Route::Sieve],
    }
}

fn render_complex(z: Complex64, digits: Option<usize>) -> String {
    match digits {
        Some(d) => truncate_complex(z, d),
        None => format!("{:?}{}{:?}i", z.re, if z.im.is_sign_negative() { "" } else { "+" }, z.im),
    }
}

fn render_real(x: f64, digits: Option<usize>) -> String {
    digits.map_or_else(|| format!("{x:?}"), |d| truncate_decimal(x, d))
}

fn csv_row(input: &str, r: &EvalResult, digits: Option<usize>) -> String {
    format!(
        "{input},{},{},{:e},{}",
        render_real(r.value.re, digits),
        render_real(r.value.im, digits),
        r.bound,
        r.terms_used
    )
}

const CSV_HEADER: &str = "input,value_re,value_im,bound,terms";

fn eval_output<W: Write>(
    out: &mut W,
    input: &str,
    point: ComplexPoint,
    results: &[(Route, EvalResult)],
    digits: Option<usize>,
    format: EvalFormat,
) -> std::io::Result<()> {
    match format {
        EvalFormat::Text => {
            writeln!(out, "q = {}", render_complex(point.value(), None))?;
            for (route, r) in results {
                let prefix = if results.len() > 1 { format!("[{route}] ") } else { String::new() };
                writeln!(out, "{prefix}value = {}", render_complex(r.value, digits))?;
                writeln!(out, "{prefix}bound = {:e}", r.bound)?;
                writeln!(out, "{prefix}terms = {}", r.terms_used)?;
            }
        }
        EvalFormat::Json => {
            let value = if results.len() == 1 {
                serde_json::to_value(results[0].1)?
            } else {
                results
                    .iter()
                    .map(|(route, r)| Ok((route.to_string(), serde_json::to_value(r)?)))
                    .collect::<Result<serde_json::Map<_, _>, serde_json::Error>>()?
                    .into()
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
        EvalFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for (_, r) in results {
                writeln!(out, "{}", csv_row(input, r, digits))?;
            }
        }
    }
    Ok(())
}

fn table_output<W: Write>(
    out: &mut W,
    rows: &[tables::TableRow],
    digits: Option<usize>,
    format: TableFormat,
    plot_data: bool,
) -> std::io::Result<()> {
    if plot_data {
        writeln!(out, "x,value_re,value_im")?;
        for row in rows {
            if let Ok(r) = &row.result {
                writeln!(out, "{:?},{},{}", row.x, render_real(r.value.re, digits), render_real(r.value.im, digits))?;
            }
        }
        return Ok(());
    }
    match format {
        TableFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for row in rows {
                match &row.result {
                    Ok(r) => writeln!(out, "{}", csv_row(&row.input, r, digits))?,
                    Err(_) => writeln!(out, "{},,,,", row.input)?,
                }
            }
        }
        TableFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(rows)?)?,
    }
    Ok(())
}

/// `p/q` as a decimal cut after `digits` places, without trailing zeros.
fn rational_decimal(r: &BigRational, digits: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let (int, mut rem) = r.numer().abs().div_rem(r.denom());
    let mut frac = String::new();
    for _ in 0..digits {
        if rem.is_zero() {
            break;
        }
        rem *= 10;
        let (d, next) = rem.div_rem(r.denom());
        frac.push_str(&d.to_string());
        rem = next;
    }
    let exact = rem.is_zero();
    let frac = frac.trim_end_matches('0');
    let body = if frac.is_empty() { int.to_string() } else { format!("{int}.{frac}") };
    format!("{sign}{body}{}", if exact { "" } else { "..." })
}

fn density_output<W: Write>(out: &mut W, spec: &SubsetSpec, format: EvalFormat) -> Result<(), Failure> {
    let density = spec.density()?;
    let reference = match spec {
        SubsetSpec::KFree(k) if k.power() % 2 == 0 => Some(zeta_reciprocal_even(k.power())?),
        _ => None,
    };
    match format {
        EvalFormat::Text | EvalFormat::Csv => {
            writeln!(out, "{density} = {}", rational_decimal(&density, 12))?;
            if let Some(z) = &reference {
                writeln!(
                    out,
                    "reference 1/zeta({k}) = {}/pi^{k} = {}",
                    z.coefficient,
                    truncate_decimal(z.value, 12),
                    k = z.k
                )?;
            }
        }
        EvalFormat::Json => {
            let mut v = json!({
                "subset": spec.to_string(),
                "density": density.to_string(),
                "decimal": rational_decimal(&density, 12),
            });
            if let Some(z) = &reference {
                v["reference"] = json!({ "k": z.k, "coefficient": z.coefficient.to_string(), "value": z.value });
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
    }
    Ok(())
}
