//! The `pierce` command line: argument parsing, dispatch and rendering.
//!
//! Every command produces a [`Doc`]: a list of named scalar fields plus an
//! optional table, rendered as an aligned table, CSV or versioned JSON.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::analysis::{self, counting};
use crate::digits::{convergent, expand, residual_via_shift};
use crate::error::{Error, Result};
use crate::esum::{cylinder_extrema, esum, esum_stream, jumps_at};
use crate::intervals::{fundamental_interval, interval_length};
use crate::rat::{fmt_rat, parse_rat, to_f64, Rat};
use crate::seq::{enumerate_prefixes, phi_finite, PierceSeq, PrefixBound};

pub const SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BAND: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "pierce",
    version,
    about = "Pierce expansions and their error-sum function"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every command.
#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
    /// Leave the timestamp out of JSON output.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Digits, convergents and residuals of a rational `p/q`.
    Expand { x: String },
    /// E at a rational, or an enclosure at a digit stream such as
    /// `const:one-minus-inv-e`, `arith:2:1`, `factorial` or `(2,5,11)`.
    Esum {
        x: String,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// One-sided limits of E at a rational in (0, 1).
    Jumps { x: String },
    /// Graph samples (phi, E*) over all sequences up to an order and digit cap.
    Graph {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 10)]
        digit_cap: u64,
    },
    /// Left Riemann sum of E on a uniform grid.
    Integral {
        #[arg(default_value_t = 1 << 20)]
        grid: u64,
        /// Acceptance band around -1/8.
        #[arg(long, default_value = "1/200")]
        tol: String,
    },
    /// Oscillation of E summed over an order-n partition.
    Variation {
        n: usize,
        #[arg(long)]
        digit_cap: Option<u64>,
    },
    /// Box counts over a dyadic sweep and the fitted slope.
    Dimension {
        #[arg(long, default_value_t = 6)]
        from: u32,
        #[arg(long, default_value_t = 14)]
        to: u32,
        #[arg(long, default_value_t = analysis::boxcount::SAMPLE_CONSTANT)]
        sample_constant: u64,
    },
    /// A point x in (a, b) with E(x) = y, bracketed.
    Ivt {
        a: String,
        b: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value = "1/1000000000")]
        tol: String,
    },
    /// Bounded-product sequence counts against their analytic bounds.
    Counts {
        p: u64,
        m: u32,
        #[arg(long)]
        increasing: bool,
        /// Check every p' <= p and m' <= m instead of a single pair.
        #[arg(long)]
        sweep: bool,
        /// Also check the factorial inequalities up to this n.
        #[arg(long)]
        factorial: Option<u64>,
    },
}

/// A rendered result: named scalars, an optional table and a verdict.
#[derive(Clone, Debug)]
pub struct Doc {
    pub command: &'static str,
    pub fields: Vec<(String, Value)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// `false` when an acceptance band check failed.
    pub in_band: bool,
}

impl Doc {
    fn new(command: &'static str) -> Self {
        Doc {
            command,
            fields: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            in_band: true,
        }
    }

    fn field(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.push((k.to_string(), v.into()));
        self
    }

    fn columns(&mut self, cols: &[&str]) -> &mut Self {
        self.columns = cols.iter().map(|c| c.to_string()).collect();
        self
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn render(doc: &Doc, format: Format, timestamp: Option<u64>) -> Result<String> {
    match format {
        Format::Json => {
            let mut m = Map::new();
            m.insert("schema".into(), json!(SCHEMA));
            m.insert("command".into(), json!(doc.command));
            if let Some(t) = timestamp {
                m.insert("timestamp".into(), json!(t));
            }
            let mut result = Map::new();
            for (k, v) in &doc.fields {
                result.insert(k.clone(), v.clone());
            }
            m.insert("result".into(), Value::Object(result));
            if !doc.columns.is_empty() {
                let rows: Vec<Value> = doc
                    .rows
                    .iter()
                    .map(|r| {
                        let o: Map<String, Value> = doc
                            .columns
                            .iter()
                            .cloned()
                            .zip(r.iter().map(|c| json!(c)))
                            .collect();
                        Value::Object(o)
                    })
                    .collect();
                m.insert("rows".into(), Value::Array(rows));
            }
            m.insert("in_band".into(), json!(doc.in_band));
            let mut s = serde_json::to_string_pretty(&Value::Object(m))
                .map_err(|e| Error::Parse(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            let io = |e: csv::Error| Error::Parse(e.to_string());
            if doc.columns.is_empty() {
                w.write_record(["field", "value"]).map_err(io)?;
                for (k, v) in &doc.fields {
                    w.write_record([k.as_str(), scalar(v).as_str()])
                        .map_err(io)?;
                }
            } else {
                w.write_record(&doc.columns).map_err(io)?;
                for r in &doc.rows {
                    w.write_record(r).map_err(io)?;
                }
            }
            let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
        }
        Format::Table => {
            let mut s = String::new();
            let width = doc.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &doc.fields {
                s.push_str(&format!("{k:<width$}  {}\n", scalar(v)));
            }
            if !doc.columns.is_empty() {
                if !doc.fields.is_empty() {
                    s.push('\n');
                }
                let mut w: Vec<usize> = doc.columns.iter().map(|c| c.len()).collect();
                for r in &doc.rows {
                    for (i, c) in r.iter().enumerate() {
                        w[i] = w[i].max(c.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    let parts: Vec<String> = cells
                        .iter()
                        .zip(&w)
                        .map(|(c, &n)| format!("{c:<n$}"))
                        .collect();
                    parts.join("  ").trim_end().to_string() + "\n"
                };
                s.push_str(&line(&doc.columns));
                s.push_str(&line(&w.iter().map(|&n| "-".repeat(n)).collect::<Vec<_>>()));
                for r in &doc.rows {
                    s.push_str(&line(r));
                }
            }
            Ok(s)
        }
    }
}

fn parse_point(s: &str) -> Result<Rat> {
    let x = parse_rat(s)?;
    crate::rat::check_unit(&x)?;
    Ok(x)
}

fn cmd_expand(x: &str) -> Result<Doc> {
    let x = parse_point(x)?;
    let seq = expand(&x)?;
    let mut d = Doc::new("expand");
    d.field("x", fmt_rat(&x));
    d.field("digits", seq.to_string());
    d.field("length", seq.prefix().len());
    d.columns(&["k", "digit", "convergent", "residual"]);
    for (i, digit) in seq.prefix().iter().enumerate() {
        let k = i + 1;
        let s = convergent(&x, k)?;
        let r = &x - &s;
        if r != residual_via_shift(&x, k)? {
            return Err(Error::Inconsistent(format!("residual mismatch at k = {k}")));
        }
        d.rows.push(vec![
            k.to_string(),
            digit.to_string(),
            fmt_rat(&s),
            fmt_rat(&r),
        ]);
    }
    Ok(d)
}

fn cmd_esum(x: &str, depth: usize) -> Result<Doc> {
    let mut d = Doc::new("esum");
    d.field("input", x);
    if let Ok(r) = parse_rat(x) {
        crate::rat::check_unit(&r)?;
        let v = esum(&r)?;
        d.field("value", fmt_rat(&v));
        d.field("exact", true);
        d.field("approx", to_f64(&v));
    } else {
        let seq = PierceSeq::parse(x)?;
        let e = esum_stream(&seq, depth)?;
        d.field("depth", depth);
        d.field("value", e.to_string());
        d.field("exact", e.is_exact());
        d.field("width", fmt_rat(&e.width()));
        d.field("approx", to_f64(&e.mid()));
    }
    Ok(d)
}

fn cmd_jumps(x: &str) -> Result<Doc> {
    let x = parse_point(x)?;
    let j = jumps_at(&x)?;
    let mut d = Doc::new("jumps");
    d.field("x", fmt_rat(&j.x));
    d.field("value", fmt_rat(&j.interior_value));
    d.field("left_limit", fmt_rat(j.left_limit()));
    d.field("right_limit", fmt_rat(j.right_limit()));
    d.field("jump_side", format!("{:?}", j.side).to_lowercase());
    d.field("jump_magnitude", fmt_rat(&j.jump_magnitude));
    d.field(
        "expansion_parity",
        format!("{:?}", j.expansion_length_parity).to_lowercase(),
    );
    d.field("preimage", j.preimages.0.to_string());
    d.field("preimage_non_realizable", j.preimages.1.to_string());
    Ok(d)
}

fn cmd_graph(n_max: usize, cap: u64) -> Result<Doc> {
    if n_max == 0 || cap == 0 {
        return Err(Error::Precondition(
            "n-max and digit-cap must be positive".into(),
        ));
    }
    let mut d = Doc::new("graph");
    d.field("n_max", n_max).field("digit_cap", cap);
    d.columns(&[
        "sigma",
        "order",
        "phi",
        "estar",
        "length",
        "interval",
        "oscillation",
    ]);
    for n in 1..=n_max {
        for c in enumerate_prefixes(n, PrefixBound::MaxDigit(cap))? {
            let ext = cylinder_extrema(&c);
            d.rows.push(vec![
                c.to_string(),
                n.to_string(),
                fmt_rat(&phi_finite(c.prefix())),
                fmt_rat(&crate::esum::estar_finite(c.prefix())),
                fmt_rat(&interval_length(&c)),
                fundamental_interval(&c).to_string(),
                fmt_rat(&(ext.max - ext.min)),
            ]);
        }
    }
    d.field("row_count", d.rows.len());
    Ok(d)
}

fn cmd_integral(grid: u64, tol: &str) -> Result<Doc> {
    let tol = parse_rat(tol)?;
    let r = analysis::integrate_esum(grid)?;
    let mut d = Doc::new("integral");
    d.field("grid", grid);
    d.field("estimate", r.estimate.to_string());
    d.field("estimate_approx", r.estimate_f64());
    d.field("target", fmt_rat(&r.target));
    d.field("deviation_bound", fmt_rat(&r.error_bound));
    d.field("deviation_approx", to_f64(&r.error_bound));
    d.field("tolerance", fmt_rat(&tol));
    d.in_band = r.error_bound < tol;
    Ok(d)
}

fn cmd_variation(n: usize, cap: Option<u64>) -> Result<Doc> {
    let cap = cap.unwrap_or(n as u64 + 8);
    let r = analysis::variation_over_partition(n, cap)?;
    let mut d = Doc::new("variation");
    d.field("order", n)
        .field("digit_cap", cap)
        .field("intervals", r.intervals);
    d.field("capped_sum", fmt_rat(&r.capped_sum));
    d.field("omitted_mass", fmt_rat(&r.omitted_mass));
    d.field("analytic_total", fmt_rat(&r.analytic_total));
    d.in_band = r.analytic_total == Rat::from_integer(n.into());
    Ok(d)
}

fn cmd_dimension(from: u32, to: u32, c: u64) -> Result<Doc> {
    let pts = analysis::dimension_sweep(from, to, c)?;
    let fit = analysis::dimension_slope(&pts)?;
    let mut d = Doc::new("dimension");
    d.columns(&["epsilon", "count", "lambda_bound", "n_of_m", "within_bound"]);
    let mut all_within = true;
    for (eps, count) in &pts {
        let cover = analysis::lambda_cover_for_epsilon(eps)?.with_empirical(*count);
        all_within &= cover.consistent();
        d.rows.push(vec![
            fmt_rat(eps),
            count.to_string(),
            cover.total_bound.to_string(),
            cover.n_of_m.to_string(),
            cover.consistent().to_string(),
        ]);
    }
    d.field("sample_constant", c);
    d.field("slope", fit.slope)
        .field("intercept", fit.intercept);
    d.field("band", "[0.8, 1.3]");
    d.field("counts_within_bounds", all_within);
    d.in_band = (0.8..=1.3).contains(&fit.slope) && all_within;
    Ok(d)
}

fn cmd_ivt(a: &str, b: &str, y: &str, tol: &str) -> Result<Doc> {
    let (a, b) = (parse_point(a)?, parse_point(b)?);
    let (y, tol) = (parse_rat(y)?, parse_rat(tol)?);
    let r = analysis::ivt_root(&a, &b, &y, &tol)?;
    let mut d = Doc::new("ivt");
    d.field("a", fmt_rat(&a))
        .field("b", fmt_rat(&b))
        .field("y", fmt_rat(&y));
    d.field("sigma", r.interval.sigma.to_string());
    d.field("interval", r.interval.to_string());
    d.field("width", fmt_rat(&r.width()));
    d.field("value_min", fmt_rat(r.min()))
        .field("value_max", fmt_rat(r.max()));
    d.field("cylinders_examined", r.nodes);
    d.in_band = r.min() <= &y && &y <= r.max() && r.width() < tol;
    Ok(d)
}

fn cmd_counts(
    p: u64,
    m: u32,
    increasing: bool,
    sweep: bool,
    factorial: Option<u64>,
) -> Result<Doc> {
    let mut d = Doc::new("counts");
    if m == 0 || p == 0 {
        return Err(Error::Precondition("p and m must be at least 1".into()));
    }
    if sweep {
        let all = counting::count_sweep(p, m)?;
        d.field("p_max", p)
            .field("m_max", m)
            .field("checked", all.len());
        d.columns(&["m", "increasing", "max_count", "worst_ratio", "violations"]);
        for mm in 1..=m {
            for inc in [false, true] {
                let rs: Vec<_> = all
                    .iter()
                    .filter(|r| r.m == mm && r.increasing == inc)
                    .collect();
                let worst = rs
                    .iter()
                    .map(|r| r.count as f64 / to_f64(&r.bound.lo))
                    .fold(0.0f64, f64::max);
                let bad = rs.iter().filter(|r| !r.within_bound).count();
                let max_count = rs.iter().map(|r| r.count).max().unwrap_or(0);
                d.rows.push(vec![
                    mm.to_string(),
                    inc.to_string(),
                    max_count.to_string(),
                    format!("{worst:.6}"),
                    bad.to_string(),
                ]);
            }
        }
        let ok = all.iter().all(|r| r.within_bound);
        d.field("all_within_bounds", ok);
        d.in_band &= ok;
    } else {
        let r = counting::count_bounded_products(p, m, increasing)?;
        d.field("p", p)
            .field("m", m)
            .field("increasing", increasing);
        d.field("count", r.count);
        d.field("bound", r.bound.to_string());
        d.field("bound_approx", to_f64(&r.bound.mid()));
        d.field("within_bound", r.within_bound);
        d.in_band &= r.within_bound;
    }
    if let Some(n) = factorial {
        let ok = counting::factorial_bounds_all(n)?;
        d.field("factorial_n", n).field("factorial_bounds_hold", ok);
        d.in_band &= ok;
    }
    Ok(d)
}

pub fn dispatch(cmd: &Command) -> Result<Doc> {
    match cmd {
        Command::Expand { x } => cmd_expand(x),
        Command::Esum { x, depth } => cmd_esum(x, *depth),
        Command::Jumps { x } => cmd_jumps(x),
        Command::Graph { n_max, digit_cap } => cmd_graph(*n_max, *digit_cap),
        Command::Integral { grid, tol } => cmd_integral(*grid, tol),
        Command::Variation { n, digit_cap } => cmd_variation(*n, *digit_cap),
        Command::Dimension {
            from,
            to,
            sample_constant,
        } => cmd_dimension(*from, *to, *sample_constant),
        Command::Ivt { a, b, y, tol } => cmd_ivt(a, b, y, tol),
        Command::Counts {
            p,
            m,
            increasing,
            sweep,
            factorial,
        } => cmd_counts(*p, *m, *increasing, *sweep, *factorial),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap(_) | Error::DepthOverflow { .. } | Error::ExpansionOverflow { .. } => {
            EXIT_RESOURCE
        }
        _ => EXIT_USAGE,
    }
}

fn timestamp() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Runs one invocation, writing to `stdout`/`stderr`, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let work = || dispatch(&cli.command);
    let result = match cli.config.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
        {
            Ok(pool) => pool.install(work),
            Err(e) => Err(Error::ResourceCap(e.to_string())),
        },
        None => work(),
    };
    let doc = match result {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let ts = (!cli.config.no_timestamp).then(timestamp);
    let text = match render(&doc, cli.config.format, ts) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.config.out {
        Some(path) => std::fs::write(path, text.as_bytes()).map_err(|e| e.to_string()),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    if doc.in_band {
        EXIT_OK
    } else {
        let _ = writeln!(stderr, "acceptance band check failed");
        EXIT_BAND
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    run(std::env::args_os(), &mut out, &mut err)
}

/// Convenience for tests and examples: `(exit code, stdout, stderr)`.
pub fn run_captured(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let full: Vec<&str> = std::iter::once("pierce")
        .chain(args.iter().copied())
        .collect();
    let code = run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_three_eighths() {
        let (code, out, _) = run_captured(&["--format", "csv", "expand", "3/8"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "k,digit,convergent,residual\n1,2,1/2,-1/8\n2,4,3/8,0/1\n"
        );
    }

    #[test]
    fn expand_endpoints() {
        let (_, out, _) = run_captured(&["--format", "json", "--no-timestamp", "expand", "0/1"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["result"]["digits"], "()");
        let (_, out, _) = run_captured(&["--format", "json", "--no-timestamp", "expand", "1/1"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["digits"], "(1)");
    }

    #[test]
    fn decimal_input_is_a_usage_error() {
        let (code, _, err) = run_captured(&["expand", "0.375"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("p/q"));
        assert_eq!(run_captured(&["expand", "3/2"]).0, EXIT_USAGE);
        assert_eq!(run_captured(&["nonsense"]).0, EXIT_USAGE);
    }

    #[test]
    fn json_is_deterministic_without_timestamp() {
        let args = [
            "--format",
            "json",
            "--no-timestamp",
            "graph",
            "--n-max",
            "2",
            "--digit-cap",
            "4",
        ];
        assert_eq!(run_captured(&args).1, run_captured(&args).1);
        let (_, with_ts, _) = run_captured(&["--format", "json", "esum", "3/8"]);
        assert!(with_ts.contains("\"timestamp\""));
    }

    #[test]
    fn graph_rows() {
        let (_, out, _) = run_captured(&[
            "--format",
            "csv",
            "graph",
            "--n-max",
            "2",
            "--digit-cap",
            "3",
        ]);
        let mut r = csv::Reader::from_reader(out.as_bytes());
        let ids: Vec<String> = r.records().map(|x| x.unwrap()[0].to_string()).collect();
        assert_eq!(ids, ["(1)", "(2)", "(3)", "(1,2)", "(1,3)", "(2,3)"]);
        assert_eq!(run_captured(&["graph", "--digit-cap", "0"]).0, EXIT_USAGE);
    }

    #[test]
    fn resource_cap_exit_code() {
        let (code, _, _) = run_captured(&["counts", "200000000", "2"]);
        assert_eq!(code, EXIT_RESOURCE);
    }

    #[test]
    fn band_failure_exit_code() {
        // A coarse grid cannot meet a tight band.
        let (code, _, _) = run_captured(&["integral", "8", "--tol", "1/1000000"]);
        assert_eq!(code, EXIT_BAND);
    }
}
