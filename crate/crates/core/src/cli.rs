//! The `tauq` command line.
//!
//! Exit codes: 0 success, 1 an identity check failed, 2 usage, parse or
//! resource error, 3 degenerate input (a needed tau vanished). Errors are
//! written to the error stream as one JSON object per line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result, TauIndex};
use crate::factorization::{induction_replay, zero_curvature_numeric, zero_curvature_symbolic};
use crate::moments::{parse_moments, MomentFamilies, MomentSequence};
use crate::orthopoly::{monic_op, mop_type2, recurrence_coeffs, verify_mop, verify_orthogonality, MonicPolynomial};
use crate::report::VerificationReport;
use crate::ring::{format_rational, Family, Frac};
use crate::tau_gl2::{fill_grid_recurrence, tau_det, tau_residue, verify_qsystem, TauTable, DEFAULT_RESIDUE_BOUND};
use crate::tau_gl3::{tau3_e0_det, verify_gl3_relations, Tau3Method, Tau3Table, DEFAULT_KERNEL_BOUND};

const DEFAULT_SYMBOLIC_BOUND: usize = 6;
const DEFAULT_NUMERIC_BOUND: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "tauq", version, about = "Exact tau-functions from moment sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    #[arg(long, global = true, value_enum, default_value_t = Mode::Numeric)]
    mode: Mode,

    /// Largest determinant order (or residue variable count) to attempt.
    #[arg(long, global = true)]
    max_work: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Numeric,
    Symbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Det,
    Residue,
    Recurrence,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tables of tau values.
    #[command(subcommand)]
    Tau(TauCommand),
    /// Identity checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Monic orthogonal polynomials p_1..p_count.
    Opgen {
        #[command(flatten)]
        moments: Gl2Moments,
        #[arg(long)]
        count: usize,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_int)]
        alpha: Option<i64>,
    },
    /// Type II multiple orthogonal polynomials (E = 0).
    Mop {
        #[command(flatten)]
        moments: Gl3Moments,
        #[command(flatten)]
        ranges: Gl3Ranges,
    },
    /// Three-term recurrence coefficients a_k, b_k.
    Recurrence {
        #[command(flatten)]
        moments: Gl2Moments,
        #[command(flatten)]
        ranges: Gl2Ranges,
    },
}

#[derive(Debug, Subcommand)]
enum TauCommand {
    Gl2 {
        #[command(flatten)]
        moments: Gl2Moments,
        #[command(flatten)]
        ranges: Gl2Ranges,
        #[arg(long, value_enum, default_value_t = Method::Det)]
        method: Method,
    },
    Gl3 {
        #[command(flatten)]
        moments: Gl3Moments,
        #[command(flatten)]
        ranges: Gl3Ranges,
        /// Defaults to the E = 0 determinant when E vanishes, residues otherwise.
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    Qsystem {
        #[command(flatten)]
        moments: Gl2Moments,
        #[command(flatten)]
        ranges: Gl2Ranges,
    },
    Gl3 {
        #[command(flatten)]
        moments: Gl3Moments,
        #[command(flatten)]
        ranges: Gl3Ranges,
    },
    ZeroCurvature {
        #[command(flatten)]
        moments: Gl2Moments,
        #[command(flatten)]
        ranges: Gl2Ranges,
    },
    Orthogonality {
        #[command(flatten)]
        moments: Gl2Moments,
        #[command(flatten)]
        ranges: Gl2Ranges,
    },
    Mop {
        #[command(flatten)]
        moments: Gl3Moments,
        #[command(flatten)]
        ranges: Gl3Ranges,
    },
}

#[derive(Debug, Args)]
struct Gl2Moments {
    /// Moment sequence C: inline JSON or a file path.
    #[arg(long)]
    moments: Option<String>,
}

#[derive(Debug, Args)]
struct Gl3Moments {
    #[arg(long)]
    moments_c: Option<String>,
    #[arg(long)]
    moments_d: Option<String>,
    /// Defaults to the zero sequence.
    #[arg(long)]
    moments_e: Option<String>,
}

#[derive(Debug, Args)]
struct Gl2Ranges {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    k: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    alpha: Option<IntRange>,
}

#[derive(Debug, Args)]
struct Gl3Ranges {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    k: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    l: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    alpha: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    beta: Option<IntRange>,
}

/// Inclusive integer range, written `a..b` or as a single integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct IntRange {
    lo: i64,
    hi: i64,
}

impl IntRange {
    fn single(v: i64) -> Self {
        IntRange { lo: v, hi: v }
    }

    fn range(self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

fn parse_int(s: &str) -> std::result::Result<i64, String> {
    s.trim().parse().map_err(|_| format!("`{s}` is not an integer"))
}

fn parse_range(s: &str) -> std::result::Result<IntRange, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse_int(a)?, parse_int(b)?),
        None => {
            let v = parse_int(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(IntRange { lo, hi })
}

fn required(r: Option<IntRange>, name: &str) -> Result<IntRange> {
    r.ok_or_else(|| Error::parse(name, "this subcommand needs the range"))
}

fn or_zero(r: Option<IntRange>) -> IntRange {
    r.unwrap_or(IntRange::single(0))
}

fn load_moments(field: &str, raw: &str) -> Result<MomentSequence> {
    let text = if raw.trim_start().starts_with('{') {
        raw.to_string()
    } else {
        std::fs::read_to_string(raw).map_err(|e| Error::parse(field, format!("cannot read `{raw}`: {e}")))?
    };
    parse_moments(&text).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(field, message),
        other => other,
    })
}

struct Ctx {
    format: Format,
    mode: Mode,
    max_work: Option<usize>,
}

impl Ctx {
    fn gl2(&self, m: &Gl2Moments) -> Result<MomentSequence> {
        match (&m.moments, self.mode) {
            (Some(raw), _) => load_moments("--moments", raw),
            (None, Mode::Symbolic) => Ok(MomentSequence::formal(Family::C)),
            (None, Mode::Numeric) => Err(Error::parse("--moments", "numeric mode needs a moment sequence")),
        }
    }

    fn gl3(&self, m: &Gl3Moments) -> Result<MomentFamilies> {
        let get = |raw: &Option<String>, flag: &str, family: Family| match (raw, self.mode) {
            (Some(raw), _) => load_moments(flag, raw),
            (None, Mode::Symbolic) => Ok(MomentSequence::formal(family)),
            (None, Mode::Numeric) => Err(Error::parse(flag, "numeric mode needs a moment sequence")),
        };
        Ok(MomentFamilies {
            c: get(&m.moments_c, "--moments-c", Family::C)?,
            d: get(&m.moments_d, "--moments-d", Family::D)?,
            e: match &m.moments_e {
                Some(raw) => load_moments("--moments-e", raw)?,
                None => MomentSequence::zero(),
            },
        })
    }

    fn bound(&self, default: usize) -> usize {
        self.max_work.unwrap_or(default)
    }

    fn check_bound(&self, what: &str, requested: i64, default: usize) -> Result<()> {
        let limit = self.bound(default);
        if requested > limit as i64 {
            return Err(Error::Resource {
                what: what.to_string(),
                requested: requested as usize,
                limit,
            });
        }
        Ok(())
    }

    fn numeric_only(&self, what: &str) -> Result<()> {
        if self.mode == Mode::Symbolic {
            return Err(Error::Precondition(format!("{what} is only available in numeric mode")));
        }
        Ok(())
    }

    fn no_csv(&self, what: &str) -> Result<()> {
        if self.format == Format::Csv {
            return Err(Error::parse(
                "--format",
                format!("csv is only available for tau tables, not {what}"),
            ));
        }
        Ok(())
    }
}

/// What a subcommand produced: text for the output stream and an exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("").trim_start_matches("error: ");
            let record = json!({"error": "usage", "message": first});
            let _ = writeln!(err, "{record}");
            return 2;
        }
    };
    let ctx = Ctx {
        format: cli.format,
        mode: cli.mode,
        max_work: cli.max_work,
    };
    match dispatch(&ctx, &cli.command) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "{}", error_record(&e));
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Degenerate { .. } => 3,
        _ => 2,
    }
}

fn error_record(e: &Error) -> Value {
    let kind = match e {
        Error::DimensionMismatch { .. } => "dimension",
        Error::Parse { .. } => "parse",
        Error::Degenerate { .. } => "degenerate",
        Error::Resource { .. } => "resource",
        Error::Precondition(_) => "precondition",
    };
    let mut record = json!({"error": kind, "message": e.to_string()});
    if let Error::Degenerate { index, .. } = e {
        record["index"] = index_json(index);
    }
    record
}

fn index_json(index: &TauIndex) -> Value {
    let mut m = Map::new();
    for (k, v) in index.components() {
        m.insert(k.to_string(), json!(v));
    }
    Value::Object(m)
}

fn dispatch(ctx: &Ctx, command: &Command) -> Result<Outcome> {
    match command {
        Command::Tau(TauCommand::Gl2 {
            moments,
            ranges,
            method,
        }) => tau_gl2(ctx, moments, ranges, *method),
        Command::Tau(TauCommand::Gl3 {
            moments,
            ranges,
            method,
        }) => tau_gl3(ctx, moments, ranges, *method),
        Command::Verify(v) => {
            let report = match v {
                VerifyCommand::Qsystem { moments, ranges } => verify_qsystem_cmd(ctx, moments, ranges)?,
                VerifyCommand::Gl3 { moments, ranges } => verify_gl3_cmd(ctx, moments, ranges)?,
                VerifyCommand::ZeroCurvature { moments, ranges } => verify_zero_curvature_cmd(ctx, moments, ranges)?,
                VerifyCommand::Orthogonality { moments, ranges } => verify_orthogonality_cmd(ctx, moments, ranges)?,
                VerifyCommand::Mop { moments, ranges } => verify_mop_cmd(ctx, moments, ranges)?,
            };
            emit_report(ctx, &report)
        }
        Command::Opgen { moments, count, alpha } => opgen(ctx, moments, *count, alpha.unwrap_or(0)),
        Command::Mop { moments, ranges } => mop(ctx, moments, ranges),
        Command::Recurrence { moments, ranges } => recurrence(ctx, moments, ranges),
    }
}

/// One tau table row: index and rendered value.
type Row = (TauIndex, String);

fn tau_gl2(ctx: &Ctx, moments: &Gl2Moments, ranges: &Gl2Ranges, method: Method) -> Result<Outcome> {
    let seq = ctx.gl2(moments)?;
    let ks = required(ranges.k, "--k")?;
    let alphas = or_zero(ranges.alpha);
    let mut rows: Vec<Row> = Vec::new();
    let mut push = |k: i64, alpha: i64, value: String| rows.push((TauIndex::Gl2 { k, alpha }, value));
    match (ctx.mode, method) {
        (Mode::Symbolic, Method::Det) => {
            ctx.check_bound("symbolic GL2 determinant", ks.hi, DEFAULT_SYMBOLIC_BOUND)?;
            let src = seq.symbolic();
            for k in ks.range() {
                for alpha in alphas.range() {
                    push(k, alpha, tau_det(k, alpha, &src).to_string());
                }
            }
        }
        (Mode::Symbolic, Method::Residue) => {
            let src = seq.symbolic();
            for k in ks.range() {
                for alpha in alphas.range() {
                    let v = tau_residue(k, alpha, &src, ctx.bound(DEFAULT_RESIDUE_BOUND))?;
                    push(k, alpha, v.to_string());
                }
            }
        }
        (Mode::Symbolic, Method::Recurrence) => {
            return Err(Error::Precondition(
                "the recurrence fill is only available in numeric mode".into(),
            ))
        }
        (Mode::Numeric, Method::Det) => {
            ctx.check_bound("GL2 determinant", ks.hi, DEFAULT_NUMERIC_BOUND)?;
            let src = seq.numeric()?;
            for k in ks.range() {
                for alpha in alphas.range() {
                    push(k, alpha, format_rational(&tau_det(k, alpha, &src)));
                }
            }
        }
        (Mode::Numeric, Method::Residue) => {
            let src = seq.numeric()?;
            for k in ks.range() {
                for alpha in alphas.range() {
                    let v = tau_residue(k, alpha, &src, ctx.bound(DEFAULT_RESIDUE_BOUND))?;
                    push(k, alpha, format_rational(&v));
                }
            }
        }
        (Mode::Numeric, Method::Recurrence) => {
            ctx.check_bound("GL2 recurrence fill", ks.hi, DEFAULT_NUMERIC_BOUND)?;
            let src = seq.numeric()?;
            let grid = fill_grid_recurrence(&src, ks.hi.max(0), alphas.range())?;
            for k in ks.range() {
                for alpha in alphas.range() {
                    let v = grid.get(k, alpha).expect("requested entries are filled");
                    push(k, alpha, format_rational(&v));
                }
            }
        }
    }
    emit_table(ctx, &rows)
}

fn tau_gl3(ctx: &Ctx, moments: &Gl3Moments, ranges: &Gl3Ranges, method: Option<Method>) -> Result<Outcome> {
    let families = ctx.gl3(moments)?;
    let ks = required(ranges.k, "--k")?;
    let (ls, alphas, betas) = (or_zero(ranges.l), or_zero(ranges.alpha), or_zero(ranges.beta));
    let mut rows: Vec<Row> = Vec::new();
    let indices = || {
        let mut v = Vec::new();
        for k in ks.range() {
            for l in ls.range() {
                for alpha in alphas.range() {
                    for beta in betas.range() {
                        v.push((k, l, alpha, beta));
                    }
                }
            }
        }
        v
    };
    if ctx.mode == Mode::Symbolic {
        if !families.e.is_identically_zero() || method == Some(Method::Residue) {
            return Err(Error::Precondition(
                "symbolic GL3 tau values are available for E = 0 only".into(),
            ));
        }
        ctx.check_bound("symbolic GL3 determinant", ks.hi, DEFAULT_SYMBOLIC_BOUND)?;
        let (c, d) = (families.c.symbolic(), families.d.symbolic());
        for (k, l, alpha, beta) in indices() {
            let v = tau3_e0_det(k, l, alpha, beta, &c, &d);
            rows.push((TauIndex::Gl3 { k, l, alpha, beta }, v.to_string()));
        }
        return emit_table(ctx, &rows);
    }
    let max_vars = ctx.bound(DEFAULT_KERNEL_BOUND);
    let method = match method {
        None => Tau3Method::auto(&families, max_vars),
        Some(Method::Det) => Tau3Method::E0Determinant,
        Some(Method::Residue) => Tau3Method::Residue { max_vars },
        Some(Method::Recurrence) => return Err(Error::Precondition("GL3 tau values have no recurrence fill".into())),
    };
    let mut table = Tau3Table::new(&families, method);
    for (k, l, alpha, beta) in indices() {
        let v = table.get(k, l, alpha, beta)?;
        rows.push((TauIndex::Gl3 { k, l, alpha, beta }, format_rational(&v)));
    }
    emit_table(ctx, &rows)
}

fn emit_table(ctx: &Ctx, rows: &[Row]) -> Result<Outcome> {
    let mut text = String::new();
    match ctx.format {
        Format::Pretty => {
            for (index, value) in rows {
                let _ = writeln!(text, "{index} = {value}");
            }
        }
        Format::Csv => {
            let gl3 = matches!(rows.first(), Some((TauIndex::Gl3 { .. }, _)));
            text.push_str(if gl3 {
                "k,alpha,l,beta,value\n"
            } else {
                "k,alpha,value\n"
            });
            for (index, value) in rows {
                let cells = match *index {
                    TauIndex::Gl2 { k, alpha } => format!("{k},{alpha}"),
                    TauIndex::Gl3 { k, l, alpha, beta } => format!("{k},{alpha},{l},{beta}"),
                };
                let _ = writeln!(text, "{cells},{}", csv_cell(value));
            }
        }
        Format::Json => {
            let entries: Vec<Value> = rows
                .iter()
                .map(|(index, value)| {
                    let mut obj = index_json(index);
                    obj["value"] = json!(value);
                    obj
                })
                .collect();
            let _ = writeln!(text, "{}", json!({ "entries": entries }));
        }
    }
    Ok(Outcome::ok(text))
}

fn csv_cell(value: &str) -> String {
    if value.contains(',') || value.contains('"') {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

fn emit_report(ctx: &Ctx, report: &VerificationReport) -> Result<Outcome> {
    ctx.no_csv("verification reports")?;
    let text = match ctx.format {
        Format::Json => format!("{}\n", report.to_json()),
        _ => format!("{report}\n"),
    };
    Ok(Outcome {
        text,
        code: if report.all_pass() { 0 } else { 1 },
    })
}

fn verify_qsystem_cmd(ctx: &Ctx, moments: &Gl2Moments, ranges: &Gl2Ranges) -> Result<VerificationReport> {
    let seq = ctx.gl2(moments)?;
    let ks = required(ranges.k, "--k")?;
    let alphas = or_zero(ranges.alpha);
    Ok(match ctx.mode {
        Mode::Numeric => verify_qsystem(&seq.numeric()?, ks.range(), alphas.range()),
        Mode::Symbolic => {
            ctx.check_bound("symbolic GL2 determinant", ks.hi, DEFAULT_SYMBOLIC_BOUND)?;
            verify_qsystem(&seq.symbolic(), ks.range(), alphas.range())
        }
    })
}

fn verify_gl3_cmd(ctx: &Ctx, moments: &Gl3Moments, ranges: &Gl3Ranges) -> Result<VerificationReport> {
    ctx.numeric_only("GL3 relation checking")?;
    let families = ctx.gl3(moments)?;
    let ks = required(ranges.k, "--k")?;
    let method = Tau3Method::auto(&families, ctx.bound(DEFAULT_KERNEL_BOUND));
    verify_gl3_relations(
        &families,
        ks.range(),
        or_zero(ranges.l).range(),
        or_zero(ranges.alpha).range(),
        or_zero(ranges.beta).range(),
        method,
    )
}

fn verify_zero_curvature_cmd(ctx: &Ctx, moments: &Gl2Moments, ranges: &Gl2Ranges) -> Result<VerificationReport> {
    let seq = ctx.gl2(moments)?;
    let ks = required(ranges.k, "--k")?;
    let alphas = or_zero(ranges.alpha);
    let mut report = VerificationReport::new();
    match ctx.mode {
        Mode::Numeric => {
            let src = seq.numeric()?;
            for alpha in alphas.range() {
                for k in ks.range() {
                    report.extend(zero_curvature_numeric(&seq, k, alpha)?);
                }
                let mut table = TauTable::new(&src);
                report.extend(induction_replay(&mut |k, a| table.get(k, a), alpha, ks.hi)?);
            }
        }
        Mode::Symbolic => {
            // the alpha - 1 side reaches tau_{k+2}
            ctx.check_bound("symbolic zero curvature", ks.hi + 2, DEFAULT_SYMBOLIC_BOUND)?;
            let src = seq.symbolic();
            for alpha in alphas.range() {
                for k in ks.range() {
                    report.extend(zero_curvature_symbolic(&seq, k, alpha)?);
                }
                let mut table = TauTable::new(&src);
                report.extend(induction_replay(
                    &mut |k, a| Frac::from_ring(table.get(k, a)),
                    alpha,
                    ks.hi,
                )?);
            }
        }
    }
    Ok(report)
}

fn verify_orthogonality_cmd(ctx: &Ctx, moments: &Gl2Moments, ranges: &Gl2Ranges) -> Result<VerificationReport> {
    ctx.numeric_only("orthogonality checking")?;
    let seq = ctx.gl2(moments)?;
    let ks = required(ranges.k, "--k")?;
    let mut report = VerificationReport::new();
    for alpha in or_zero(ranges.alpha).range() {
        report.extend(verify_orthogonality(&seq, alpha, ks.hi.max(0) as usize)?);
    }
    Ok(report)
}

fn gl3_instances(ranges: &Gl3Ranges) -> Result<Vec<(usize, usize, i64, i64)>> {
    let ks = required(ranges.k, "--k")?;
    let ls = or_zero(ranges.l);
    if ks.lo < 0 || ls.lo < 0 {
        return Err(Error::parse("--k/--l", "polynomial degrees must be nonnegative"));
    }
    let mut v = Vec::new();
    for k in ks.range() {
        for l in ls.range().filter(|&l| l <= k) {
            for alpha in or_zero(ranges.alpha).range() {
                for beta in or_zero(ranges.beta).range() {
                    v.push((k as usize, l as usize, alpha, beta));
                }
            }
        }
    }
    Ok(v)
}

fn verify_mop_cmd(ctx: &Ctx, moments: &Gl3Moments, ranges: &Gl3Ranges) -> Result<VerificationReport> {
    ctx.numeric_only("multiple orthogonality checking")?;
    let families = ctx.gl3(moments)?;
    let mut report = VerificationReport::new();
    for (k, l, alpha, beta) in gl3_instances(ranges)? {
        report.extend(verify_mop(k, l, alpha, beta, &families.c, &families.d)?);
    }
    Ok(report)
}

fn poly_json(label: Value, p: &MonicPolynomial) -> Value {
    let coeffs: Vec<String> = p.coeffs().iter().map(format_rational).collect();
    let mut obj = label;
    obj["coeffs"] = json!(coeffs);
    obj["display"] = json!(p.to_string());
    obj
}

fn opgen(ctx: &Ctx, moments: &Gl2Moments, count: usize, alpha: i64) -> Result<Outcome> {
    ctx.numeric_only("polynomial generation")?;
    ctx.no_csv("polynomials")?;
    let seq = ctx.gl2(moments)?;
    let polys = (1..=count)
        .map(|k| monic_op(k, alpha, &seq).map(|p| (k, p)))
        .collect::<Result<Vec<_>>>()?;
    let mut text = String::new();
    match ctx.format {
        Format::Json => {
            let list: Vec<Value> = polys
                .iter()
                .map(|(k, p)| poly_json(json!({"k": k, "alpha": alpha}), p))
                .collect();
            let _ = writeln!(text, "{}", json!({ "polynomials": list }));
        }
        _ => {
            for (k, p) in &polys {
                let _ = writeln!(text, "p_{k} = {p}");
            }
        }
    }
    Ok(Outcome::ok(text))
}

fn mop(ctx: &Ctx, moments: &Gl3Moments, ranges: &Gl3Ranges) -> Result<Outcome> {
    ctx.numeric_only("multiple orthogonal polynomials")?;
    ctx.no_csv("polynomials")?;
    let families = ctx.gl3(moments)?;
    if !families.e.is_identically_zero() {
        return Err(Error::Precondition("multiple orthogonal polynomials need E = 0".into()));
    }
    let mut list = Vec::new();
    for (k, l, alpha, beta) in gl3_instances(ranges)? {
        list.push((
            (k, l, alpha, beta),
            mop_type2(k, l, alpha, beta, &families.c, &families.d)?,
        ));
    }
    let mut text = String::new();
    match ctx.format {
        Format::Json => {
            let list: Vec<Value> = list
                .iter()
                .map(|((k, l, a, b), p)| poly_json(json!({"k": k, "l": l, "alpha": a, "beta": b}), p))
                .collect();
            let _ = writeln!(text, "{}", json!({ "polynomials": list }));
        }
        _ => {
            for ((k, l, a, b), p) in &list {
                let _ = writeln!(text, "p_{{{k},{l}}}^({a},{b}) = {p}");
            }
        }
    }
    Ok(Outcome::ok(text))
}

fn recurrence(ctx: &Ctx, moments: &Gl2Moments, ranges: &Gl2Ranges) -> Result<Outcome> {
    ctx.numeric_only("recurrence coefficients")?;
    ctx.no_csv("recurrence coefficients")?;
    let seq = ctx.gl2(moments)?;
    let ks = required(ranges.k, "--k")?;
    let mut text = String::new();
    let mut list = Vec::new();
    for alpha in or_zero(ranges.alpha).range() {
        let coeffs = recurrence_coeffs(&seq, alpha, ks.hi.max(0) as usize)?;
        for (k, (a, b)) in coeffs.iter().enumerate().filter(|(k, _)| *k as i64 >= ks.lo) {
            list.push((k, alpha, a.clone(), b.clone()));
        }
    }
    match ctx.format {
        Format::Json => {
            let list: Vec<Value> = list
                .iter()
                .map(|(k, alpha, a, b)| {
                    json!({"k": k, "alpha": alpha, "a": format_rational(a), "b": format_rational(b)})
                })
                .collect();
            let _ = writeln!(text, "{}", json!({ "coefficients": list }));
        }
        _ => {
            for (k, alpha, a, b) in &list {
                let _ = writeln!(
                    text,
                    "k={k} alpha={alpha}: a = {}, b = {}",
                    format_rational(a),
                    format_rational(b)
                );
            }
        }
    }
    Ok(Outcome::ok(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["tauq"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    const CATALAN: &str = r#"{"kind":"named","name":"catalan"}"#;
    const HERMITE: &str = r#"{"kind":"named","name":"hermite"}"#;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-2..3"), Ok(IntRange { lo: -2, hi: 3 }));
        assert_eq!(parse_range("-3..-1"), Ok(IntRange { lo: -3, hi: -1 }));
        assert_eq!(parse_range("4"), Ok(IntRange::single(4)));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("a..1").is_err());
    }

    #[test]
    fn qsystem_suite() {
        let (code, out, _) = run_str(&[
            "verify",
            "qsystem",
            "--moments",
            CATALAN,
            "--k",
            "0..6",
            "--alpha",
            "0..2",
        ]);
        assert_eq!(code, 0);
        assert!(out.ends_with("21 checks, 21 pass\n"), "{out}");
    }

    #[test]
    fn opgen_hermite() {
        let (code, out, _) = run_str(&["opgen", "--moments", HERMITE, "--count", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "p_1 = z\np_2 = z^2 - 1/2\np_3 = z^3 - 3/2 z\n");
    }

    #[test]
    fn negative_k_is_zero() {
        let (code, out, _) = run_str(&["tau", "gl2", "--k", "-1", "--alpha", "0", "--moments", CATALAN]);
        assert_eq!(code, 0);
        assert_eq!(out, "tau_-1^(0) = 0\n");
    }

    #[test]
    fn formats() {
        let (_, csv, _) = run_str(&[
            "tau",
            "gl2",
            "--moments",
            CATALAN,
            "--k",
            "0..1",
            "--alpha",
            "2",
            "--format",
            "csv",
        ]);
        assert_eq!(csv, "k,alpha,value\n0,2,1\n1,2,2\n");
        let (_, js, _) = run_str(&["tau", "gl2", "--moments", CATALAN, "--k", "2", "--format", "json"]);
        let v: Value = serde_json::from_str(&js).unwrap();
        assert_eq!(v["entries"][0]["value"], "1");
        let (code, _, err) = run_str(&["verify", "qsystem", "--moments", CATALAN, "--k", "1", "--format", "csv"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn symbolic_without_moments_is_formal() {
        let (code, out, _) = run_str(&["tau", "gl2", "--mode", "symbolic", "--k", "2", "--alpha", "0"]);
        assert_eq!(code, 0);
        assert_eq!(out, "tau_2^(0) = c_0*c_2 - c_1^2\n");
        let (code, _, _) = run_str(&["tau", "gl2", "--mode", "symbolic", "--k", "9"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn usage_errors() {
        let (code, _, err) = run_str(&["tau", "gl2", "--k", "1"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "parse");
        let (code, _, err) = run_str(&["frobnicate"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn degenerate_exit() {
        let zeros = r#"{"kind":"window","lo":0,"values":["0","0","0"]}"#;
        let (code, _, err) = run_str(&["opgen", "--moments", zeros, "--count", "2"]);
        assert_eq!(code, 3);
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["index"]["k"], 1);
    }

    #[test]
    fn mop_and_recurrence() {
        let d = r#"{"kind":"window","lo":0,"values":["1","2","3","4","5","6"]}"#;
        let (code, out, _) = run_str(&["mop", "--moments-c", CATALAN, "--moments-d", d, "--k", "2", "--l", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "p_{2,1}^(0,0) = z^2 - z - 1\n");
        let (code, out, _) = run_str(&["recurrence", "--moments", HERMITE, "--k", "0..2"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "k=0 alpha=0: a = 0, b = 0\nk=1 alpha=0: a = 0, b = 1/2\nk=2 alpha=0: a = 0, b = 1\n"
        );
    }
}
