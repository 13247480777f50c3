//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::buchberger::{buchberger_criterion, minimal_gb, residue_gb, GroebnerBasis};
use crate::coefficient::Coefficient;
use crate::context::{AlgebraContext, Context, MonomialOrder};
use crate::division::{is_member, reduce};
use crate::error::{Error, Result};
use crate::oracle::classical_criterion;
use crate::parse::parse_series;
use crate::radii::{groebner_basis_with_dump, to_extension, Algorithm};
use crate::series::TateSeries;
use crate::term::{Exponent, RingMode};

const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "tategb", version, about = "Gröbner bases in Tate algebras over Q_p")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Prime p of the base field Q_p.
    #[arg(long, global = true, default_value_t = 2)]
    prime: u64,
    /// Precision cap: series are known modulo p^PREC.
    #[arg(long, global = true, default_value_t = 10)]
    prec: i64,
    /// Comma-separated variable names.
    #[arg(long, global = true, default_value = "x,y", value_delimiter = ',')]
    vars: Vec<String>,
    /// Comma-separated log-radii (rationals such as 1/2); zero by default.
    #[arg(long = "log-radii", global = true, value_delimiter = ',')]
    log_radii: Vec<String>,
    /// Monomial order used to break valuation ties.
    #[arg(long, global = true, default_value = "grevlex")]
    order: String,
    /// `tate` for K{X;r}, `integral` for its ring of integers.
    #[arg(long, global = true, default_value = "tate")]
    ring: String,
    #[arg(long, global = true, default_value = "buchberger")]
    algorithm: String,
    /// Output format: text or json.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Write every F4 Macaulay matrix as CSV into this directory.
    #[arg(long = "dump-matrices", global = true)]
    dump_matrices: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a minimal Gröbner basis of the given generators.
    Groebner {
        /// Generators, one series per line (`#` starts a comment).
        #[arg(long)]
        input: Option<PathBuf>,
        /// A generator given inline; may be repeated.
        #[arg(short = 'e', long = "expr")]
        exprs: Vec<String>,
    },
    /// Remainder of a series on division by a basis.
    Reduce(Target),
    /// Whether a series lies in the ideal of a basis (modulo the precision).
    Member(Target),
    /// Describe the context and, optionally, some series.
    Info {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(short = 'e', long = "expr")]
        exprs: Vec<String>,
    },
    /// Re-check a stored Gröbner basis.
    Verify {
        /// The basis to check (text or JSON output of `groebner`).
        #[arg(long)]
        basis: PathBuf,
        /// Generators that must reduce to zero modulo the basis.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Target {
    /// The series to test.
    #[arg(short = 'e', long = "expr")]
    expr: String,
    /// A Gröbner basis (text or JSON output of `groebner`).
    #[arg(long, conflicts_with = "generators")]
    basis: Option<PathBuf>,
    /// Generators; a Gröbner basis is computed first.
    #[arg(long)]
    generators: Option<PathBuf>,
}

#[derive(Serialize, Deserialize, Debug)]
struct JsonSeries {
    /// `[exponents, coefficient, coefficient cap]`; a null cap means exact.
    terms: Vec<(Vec<u32>, String, Option<i64>)>,
    /// Absolute cap in units of `1/cap_denominator`.
    series_cap: i64,
    cap_denominator: i64,
}

#[derive(Serialize, Deserialize, Debug)]
struct JsonBasis {
    schema: u32,
    prime: u64,
    vars: Vec<String>,
    log_radii: Vec<String>,
    order: String,
    ring: String,
    likely: bool,
    basis: Vec<JsonSeries>,
}

struct Settings {
    ctx: Context,
    mode: RingMode,
    algorithm: Algorithm,
    json: bool,
    dump: Option<PathBuf>,
}

fn config_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn settings(c: &Common) -> Result<Settings> {
    let order: MonomialOrder = c.order.parse()?;
    let mode: RingMode = c.ring.parse()?;
    let algorithm: Algorithm = c.algorithm.parse()?;
    let json = match c.format.as_str() {
        "text" => false,
        "json" => true,
        other => return Err(config_error(format!("unknown format `{other}`"))),
    };
    let radii = if c.log_radii.is_empty() {
        vec![Rational64::from_integer(0); c.vars.len()]
    } else {
        c.log_radii
            .iter()
            .map(|s| s.trim().parse::<Rational64>().map_err(|_| Error::BadRadius(s.clone())))
            .collect::<Result<_>>()?
    };
    let ctx = AlgebraContext::new(c.prime, &c.vars, &radii, order, c.prec)?;
    Ok(Settings { ctx, mode, algorithm, json, dump: c.dump_matrices.clone() })
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse_lines(text: &str, ctx: &Context) -> Result<Vec<TateSeries>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| parse_series(l, ctx))
        .collect()
}

/// Reads a list of series from a text file or a JSON basis document.
fn read_series_file(path: &PathBuf, ctx: &Context) -> Result<Vec<TateSeries>> {
    let text = read_file(path)?;
    if text.trim_start().starts_with('{') {
        let doc: JsonBasis = serde_json::from_str(&text).map_err(|e| config_error(format!("invalid JSON: {e}")))?;
        if doc.schema != SCHEMA {
            return Err(config_error(format!("unsupported schema {}", doc.schema)));
        }
        if doc.prime != ctx.prime() || doc.vars.len() != ctx.nvars() {
            return Err(config_error("basis file does not match --prime/--vars"));
        }
        doc.basis.iter().map(|s| series_from_json(s, ctx)).collect()
    } else {
        parse_lines(&text, ctx)
    }
}

fn coefficient_from_text(text: &str, cap: Option<i64>, p: u64) -> Result<Coefficient> {
    let bad = || config_error(format!("invalid coefficient `{text}`"));
    let (k, m) = match text.strip_prefix("p^-") {
        Some(rest) => {
            let (k, m) = rest.split_once('*').unwrap_or((rest, "1"));
            (k.parse::<i64>().map_err(|_| bad())?, m)
        }
        None => (0, text),
    };
    let m: BigInt = m.parse().map_err(|_| bad())?;
    Ok(Coefficient::from_parts(p, 1, -k, m, cap))
}

fn series_from_json(s: &JsonSeries, ctx: &Context) -> Result<TateSeries> {
    if s.cap_denominator != ctx.log_radii_den() {
        return Err(config_error("cap denominator does not match --log-radii"));
    }
    let terms = s
        .terms
        .iter()
        .map(|(e, c, cap)| {
            if e.len() != ctx.nvars() {
                return Err(config_error("exponent length does not match --vars"));
            }
            Ok((Exponent(e.clone()), coefficient_from_text(c, *cap, ctx.prime())?))
        })
        .collect::<Result<Vec<_>>>()?;
    TateSeries::from_terms(ctx, terms, s.series_cap)
}

fn series_to_json(f: &TateSeries) -> JsonSeries {
    JsonSeries {
        terms: f.terms().iter().map(|t| (t.exp.0.clone(), t.coeff.to_string(), t.coeff.cap())).collect(),
        series_cap: f.cap(),
        cap_denominator: f.ctx().log_radii_den(),
    }
}

fn basis_to_json(gb: &GroebnerBasis, s: &Settings) -> JsonBasis {
    let ctx = &s.ctx;
    JsonBasis {
        schema: SCHEMA,
        prime: ctx.prime(),
        vars: ctx.var_names().to_vec(),
        log_radii: ctx.log_radii().iter().map(|r| r.to_string()).collect(),
        order: ctx.order().to_string(),
        ring: match gb.mode {
            RingMode::Rational => "tate".into(),
            RingMode::Integral => "integral".into(),
        },
        likely: gb.likely,
        basis: gb.elements.iter().map(series_to_json).collect(),
    }
}

fn gather(input: &Option<PathBuf>, exprs: &[String], ctx: &Context) -> Result<Vec<TateSeries>> {
    let mut out = match input {
        Some(p) => read_series_file(p, ctx)?,
        None => Vec::new(),
    };
    for e in exprs {
        out.push(parse_series(e, ctx)?);
    }
    Ok(out)
}

fn compute(gens: &[TateSeries], s: &Settings) -> Result<GroebnerBasis> {
    if gens.is_empty() {
        return Err(Error::NoGenerators);
    }
    groebner_basis_with_dump(gens, s.mode, s.algorithm, s.dump.as_deref())
}

fn basis_for(t: &Target, s: &Settings) -> Result<Vec<TateSeries>> {
    match (&t.basis, &t.generators) {
        (Some(b), _) => read_series_file(b, &s.ctx),
        (None, Some(g)) => Ok(compute(&read_series_file(g, &s.ctx)?, s)?.elements),
        (None, None) => Err(config_error("one of --basis or --generators is required")),
    }
}

/// Warnings about bases that may be unreliable at this precision.
fn precision_warnings(gb: &GroebnerBasis, err: &mut dyn Write) {
    let ctx = gb.elements.first().map(|g| g.ctx().clone());
    if gb.likely {
        let _ = writeln!(err, "note: rational-ring basis computed over a fractional ideal; it is likely, not certainly, a Gröbner basis");
    }
    if let Some(ctx) = ctx {
        for g in &gb.elements {
            let v = g.terms()[0].val(&ctx);
            if g.cap() - v <= ctx.log_radii_den() {
                let _ = writeln!(err, "warning: leading term of `{g}` is within one unit of the precision cap");
            }
        }
    }
}

fn run_command(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let s = settings(&cli.common)?;
    let io = |e: std::io::Error| Error::Io(e.to_string());
    match &cli.command {
        Command::Groebner { input, exprs } => {
            let gens = gather(input, exprs, &s.ctx)?;
            let gb = compute(&gens, &s)?;
            precision_warnings(&gb, err);
            if s.json {
                let doc = serde_json::to_string_pretty(&basis_to_json(&gb, &s)).expect("serializable");
                writeln!(out, "{doc}").map_err(io)?;
            } else {
                for g in &gb.elements {
                    writeln!(out, "{g}").map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Reduce(t) => {
            let f = parse_series(&t.expr, &s.ctx)?;
            let basis = basis_for(t, &s)?;
            let r = reduce(&f, &basis, s.mode)?;
            if s.json {
                let doc = serde_json::json!({ "schema": SCHEMA, "remainder": series_to_json(&r) });
                writeln!(out, "{doc}").map_err(io)?;
            } else {
                writeln!(out, "{r}").map_err(io)?;
            }
            Ok(0)
        }
        Command::Member(t) => {
            let f = parse_series(&t.expr, &s.ctx)?;
            let basis = basis_for(t, &s)?;
            let m = is_member(&f, &basis, s.mode)?;
            if s.json {
                writeln!(out, "{}", serde_json::json!({ "schema": SCHEMA, "member": m })).map_err(io)?;
            } else {
                writeln!(out, "{m}").map_err(io)?;
            }
            Ok(0)
        }
        Command::Info { input, exprs } => {
            let ctx = &s.ctx;
            writeln!(out, "context: {ctx}").map_err(io)?;
            writeln!(out, "radii denominator: {}", ctx.log_radii_den()).map_err(io)?;
            for f in gather(input, exprs, ctx)? {
                let lt = f.leading_term().map(|t| t.format(ctx)).unwrap_or_else(|_| "none".into());
                writeln!(out, "{f}").map_err(io)?;
                writeln!(out, "  gauss valuation: {}", fmt_val(&f)).map_err(io)?;
                writeln!(out, "  leading term: {lt}").map_err(io)?;
            }
            Ok(0)
        }
        Command::Verify { basis, input } => {
            let g = read_series_file(basis, &s.ctx)?;
            if g.is_empty() {
                return Err(Error::NoGenerators);
            }
            let lifted: Vec<TateSeries> = g.iter().map(to_extension).collect();
            let mut ok = true;
            let mut report = |name: &str, pass: bool, out: &mut dyn Write| -> Result<()> {
                ok &= pass;
                writeln!(out, "{name}: {}", if pass { "ok" } else { "FAIL" }).map_err(io)
            };
            report("criterion", buchberger_criterion(&lifted, s.mode)?, out)?;
            report("minimal", minimal_gb(&g, s.mode).len() == g.len(), out)?;
            if let Some(path) = input {
                let gens = read_series_file(path, &s.ctx)?;
                let mut all = true;
                for f in &gens {
                    all &= reduce(f, &g, s.mode)?.is_zero();
                }
                report("generators reduce to zero", all, out)?;
            }
            let normalized = s.ctx.has_zero_radii() && g.iter().all(|f| f.gauss_val().exact() == Some(0));
            if normalized {
                let residues = residue_gb(&g)?;
                report("residue basis", classical_criterion(&residues, s.ctx.order()), out)?;
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn fmt_val(f: &TateSeries) -> String {
    let ctx = f.ctx();
    match f.gauss_val().exact() {
        Some(v) => ctx.format_scaled(v),
        None => format!(">= {}", ctx.format_scaled(f.cap())),
    }
}

/// Exit status for an error: 2 for input and configuration problems, 1 for
/// mathematical failures.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Io(_)
        | Error::NotPrime(_)
        | Error::NoVariables
        | Error::BadPrecision(_)
        | Error::RadiiLength { .. }
        | Error::BadRadius(_)
        | Error::NoGenerators => 2,
        _ => 1,
    }
}

/// Runs the tool on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match run_command(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
