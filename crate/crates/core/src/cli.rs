//! Command-line front end.
//!
//! Exit codes: 0 when every report passes, 1 when any report fails or is
//! partial (or a numerical command errors), 2 on usage errors.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::complexfn::{c64, BranchedConstant, ComplexScalar};
use crate::error::{Error, Result};
use crate::hurwitz::{hurwitz_zeta, hurwitz_zeta_ds, ZetaConfig};
use crate::identities::{
    catalan_case, loggamma_case, sweep, verify, IdentityCase, ResidualRule, Verdict,
    VerificationReport, DEFAULT_FD_STEP, DEFAULT_SERIES_CAP,
};
use crate::quad::QuadConfig;
use crate::render::{format_complex, reports_csv, reports_json, report_json};
use crate::selftest::{run_all, DEFAULT_SEED};

pub const MAX_EVALS_ENV: &str = "ZETAQUAD_MAX_EVALS";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

/// Length of the decimal literal starting at `start` (digits, optional
/// fraction, optional exponent), without a leading sign.
fn scan_decimal(bytes: &[u8], start: usize) -> Result<usize> {
    let mut i = start;
    let digits = |i: &mut usize| {
        let from = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        *i - from
    };
    let int_digits = digits(&mut i);
    let mut frac_digits = 0;
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        frac_digits = digits(&mut i);
    }
    if int_digits + frac_digits == 0 {
        return Err(parse_err(start, "expected a decimal number"));
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mark = i;
        i += 1;
        if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            i += 1;
        }
        if digits(&mut i) == 0 {
            return Err(parse_err(mark, "exponent has no digits"));
        }
    }
    Ok(i)
}

fn signed_decimal(text: &str, start: usize) -> Result<(f64, usize)> {
    let bytes = text.as_bytes();
    let mut i = start;
    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
        i += 1;
    }
    let end = scan_decimal(bytes, i)?;
    let value = text[start..end]
        .parse::<f64>()
        .map_err(|e| parse_err(start, e.to_string()))?;
    Ok((value, end))
}

/// Rectangular complex literal: `[sign] real [(+|-) imag i]`, or a pure
/// imaginary `[sign] imag i`. Decimal exponents are accepted.
pub fn parse_complex(text: &str) -> Result<ComplexScalar> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(parse_err(0, "empty input"));
    }
    let (first, pos) = signed_decimal(text, 0)?;
    if pos == bytes.len() {
        return Ok(c64(first, 0.0));
    }
    if bytes[pos] == b'i' {
        if pos + 1 != bytes.len() {
            return Err(parse_err(pos + 1, "unexpected trailing characters"));
        }
        return Ok(c64(0.0, first));
    }
    if bytes[pos] != b'+' && bytes[pos] != b'-' {
        return Err(parse_err(pos, format!("unexpected character '{}'", bytes[pos] as char)));
    }
    let (imag, end) = signed_decimal(text, pos)?;
    if end >= bytes.len() || bytes[end] != b'i' {
        return Err(parse_err(end, "imaginary part must end with 'i'"));
    }
    if end + 1 != bytes.len() {
        return Err(parse_err(end + 1, "unexpected trailing characters"));
    }
    Ok(c64(first, imag))
}

/// Polar `r@theta` (r > 0, θ ∈ [0, 2π), no normalization) or a rectangular
/// literal converted with its argument mapped into `[0, 2π)`.
pub fn parse_constant(text: &str) -> Result<BranchedConstant> {
    if let Some(at) = text.find('@') {
        let (r, r_end) = signed_decimal(text, 0)?;
        if r_end != at {
            return Err(parse_err(r_end, "expected '@' after the modulus"));
        }
        if !(r > 0.0) {
            return Err(parse_err(0, "modulus must be positive"));
        }
        let (theta, end) = signed_decimal(text, at + 1)?;
        if end != text.len() {
            return Err(parse_err(end, "unexpected trailing characters"));
        }
        if !(0.0..2.0 * PI).contains(&theta) {
            return Err(parse_err(at + 1, "angle must lie in [0, 2π)"));
        }
        return BranchedConstant::new(r, theta);
    }
    BranchedConstant::from_complex(parse_complex(text)?).map_err(|e| parse_err(0, e.to_string()))
}

fn complex_arg(text: &str) -> std::result::Result<ComplexScalar, String> {
    parse_complex(text).map_err(|e| e.to_string())
}

fn constant_arg(text: &str) -> std::result::Result<BranchedConstant, String> {
    parse_constant(text).map_err(|e| e.to_string())
}

fn positive_arg(text: &str) -> std::result::Result<f64, String> {
    match text.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("expected a positive number, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Report format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ToleranceArgs {
    /// Pass/fail tolerance for route agreement (used as both atol and rtol).
    #[arg(long, value_parser = positive_arg)]
    pub tol: Option<f64>,

    /// Quadrature tolerance (atol = rtol), at least 1e-15.
    #[arg(long, value_parser = positive_arg)]
    pub quad_tol: Option<f64>,

    /// Quadrature evaluation cap per integral.
    #[arg(long)]
    pub max_evals: Option<usize>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Verify one (k, a) case by every applicable route.
    Verify {
        #[arg(long, allow_hyphen_values = true, value_parser = complex_arg)]
        k: ComplexScalar,
        /// Rectangular "x+yi" or polar "r@theta".
        #[arg(long, allow_hyphen_values = true, value_parser = constant_arg)]
        a: BranchedConstant,
        #[arg(long, default_value_t = DEFAULT_SERIES_CAP)]
        series_cap: usize,
        #[command(flatten)]
        tolerance: ToleranceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify the Cartesian product of k and a lists (default grid if omitted).
    Sweep {
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', value_parser = complex_arg)]
        k: Vec<ComplexScalar>,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', value_parser = constant_arg)]
        a: Vec<BranchedConstant>,
        #[command(flatten)]
        tolerance: ToleranceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The Catalan (k = -1) and log-Gamma (d/dk at k = 1) cases.
    Constants {
        #[arg(long, default_value_t = DEFAULT_FD_STEP)]
        fd_step: f64,
        #[command(flatten)]
        tolerance: ToleranceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print ζ(s, q), or ∂ζ/∂s with --derivative.
    Zeta {
        #[arg(long, allow_hyphen_values = true, value_parser = complex_arg)]
        s: ComplexScalar,
        #[arg(long, allow_hyphen_values = true, value_parser = complex_arg)]
        q: ComplexScalar,
        #[arg(long)]
        derivative: bool,
    },
    /// Run the seeded property checks of every module.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Parser)]
#[command(name = "zetaquad", version, about = "Four-route verification of log-tangent integrals against Hurwitz zeta closed forms")]
pub struct CliInvocation {
    #[command(subcommand)]
    pub command: Command,
}

/// The default sweep grid.
pub fn default_grid() -> (Vec<ComplexScalar>, Vec<BranchedConstant>) {
    let ks = vec![
        c64(-1.5, 0.0),
        c64(-1.0, 0.0),
        c64(-0.5, 0.0),
        c64(0.5, 0.0),
        c64(0.5, 0.3),
        c64(2.0, 0.0),
        c64(3.0, 0.0),
    ];
    let a = |r: f64, theta: f64| BranchedConstant::new(r, theta).expect("grid constant");
    let as_ = vec![a(1.0, 0.0), a(2.0, 0.0), a(0.5, 0.0), a(1.0, PI / 3.0), a(2.0, 3.0 * PI / 4.0)];
    (ks, as_)
}

fn quad_config(t: &ToleranceArgs, env_max_evals: Option<&str>) -> Result<QuadConfig> {
    let mut cfg = QuadConfig::default();
    if let Some(tol) = t.quad_tol {
        cfg = QuadConfig::new(tol, tol, cfg.max_evals())?;
    }
    if let Some(text) = env_max_evals {
        let n = text
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::Config(format!("{MAX_EVALS_ENV}: {e}")))?;
        cfg = cfg.with_max_evals(n)?;
    }
    if let Some(n) = t.max_evals {
        cfg = cfg.with_max_evals(n)?;
    }
    Ok(cfg)
}

fn check_rule(t: &ToleranceArgs, default: ResidualRule) -> ResidualRule {
    t.tol.map_or(default, |tol| ResidualRule::new(tol, tol))
}

fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(|r| r.verdict == Verdict::Pass) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn emit(text: &str, output: &OutputArgs, out: &mut dyn Write) -> std::io::Result<()> {
    match &output.output {
        Some(path) => fs::write(path, text),
        None => {
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn render(reports: &[VerificationReport], single: bool, format: Format) -> String {
    match format {
        Format::Json if single && reports.len() == 1 => report_json(&reports[0]),
        Format::Json => reports_json(reports),
        Format::Csv => reports_csv(reports),
    }
}

/// Re-applies a residual rule to an already computed special-case report.
fn retighten(report: &mut VerificationReport, rule: ResidualRule) {
    for r in &mut report.residuals {
        r.limit = r.limit.min(rule.atol);
        r.pass = r.abs <= r.limit;
    }
    if report.residuals.iter().any(|r| !r.pass) {
        report.verdict = Verdict::Fail;
    }
}

/// Executes a parsed invocation. `env_max_evals` carries the value of
/// `ZETAQUAD_MAX_EVALS`, if set.
pub fn run(
    invocation: &CliInvocation,
    env_max_evals: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let result = (|| -> std::result::Result<i32, (i32, String)> {
        let usage = |e: Error| (EXIT_USAGE, e.to_string());
        let io = |e: std::io::Error| (EXIT_FAIL, e.to_string());
        match &invocation.command {
            Command::Verify { k, a, series_cap, tolerance, output } => {
                let quad = quad_config(tolerance, env_max_evals).map_err(usage)?;
                let case = IdentityCase::new(*k, *a)
                    .map_err(usage)?
                    .with_quad(quad)
                    .with_check(check_rule(tolerance, ResidualRule::default()))
                    .with_series_cap(*series_cap);
                let reports = vec![verify(&case)];
                emit(&render(&reports, true, output.format), output, out).map_err(io)?;
                Ok(exit_code(&reports))
            }
            Command::Sweep { k, a, tolerance, output } => {
                let quad = quad_config(tolerance, env_max_evals).map_err(usage)?;
                let (default_k, default_a) = default_grid();
                let ks = if k.is_empty() { default_k } else { k.clone() };
                let as_ = if a.is_empty() { default_a } else { a.clone() };
                let result = sweep(
                    &ks,
                    &as_,
                    quad,
                    ZetaConfig::default(),
                    check_rule(tolerance, ResidualRule::default()),
                );
                for note in &result.notes {
                    let _ = writeln!(err, "{note}");
                }
                emit(&render(&result.reports, false, output.format), output, out).map_err(io)?;
                Ok(exit_code(&result.reports))
            }
            Command::Constants { fd_step, tolerance, output } => {
                let quad = quad_config(tolerance, env_max_evals).map_err(usage)?;
                let mut catalan = catalan_case(quad).map_err(|e| (EXIT_FAIL, e.to_string()))?;
                let mut loggamma =
                    loggamma_case(quad, *fd_step).map_err(|e| match e {
                        Error::Config(_) => usage(e),
                        other => (EXIT_FAIL, other.to_string()),
                    })?;
                if let Some(tol) = tolerance.tol {
                    retighten(&mut catalan, ResidualRule::absolute(tol));
                    retighten(&mut loggamma, ResidualRule::absolute(tol));
                }
                let reports = vec![catalan, loggamma];
                emit(&render(&reports, false, output.format), output, out).map_err(io)?;
                Ok(exit_code(&reports))
            }
            Command::Zeta { s, q, derivative } => {
                let cfg = ZetaConfig::default();
                let value = if *derivative {
                    hurwitz_zeta_ds(*s, *q, &cfg)
                } else {
                    hurwitz_zeta(*s, *q, &cfg)
                }
                .map_err(|e| (EXIT_FAIL, e.to_string()))?;
                writeln!(out, "{}", format_complex(value)).map_err(io)?;
                Ok(EXIT_PASS)
            }
            Command::Selftest { seed } => {
                let outcomes = run_all(*seed);
                for o in &outcomes {
                    writeln!(
                        out,
                        "{} {:<40} worst {:.3e} limit {:.3e} ({})",
                        if o.passed { "PASS" } else { "FAIL" },
                        o.name,
                        o.worst,
                        o.limit,
                        o.detail
                    )
                    .map_err(io)?;
                }
                Ok(if outcomes.iter().all(|o| o.passed) { EXIT_PASS } else { EXIT_FAIL })
            }
        }
    })();
    match result {
        Ok(code) => code,
        Err((code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

/// Parses `args` and runs; clap usage errors map to exit code 2.
pub fn main_with_args<I, T>(args: I, env_max_evals: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match CliInvocation::try_parse_from(args) {
        Ok(invocation) => run(&invocation, env_max_evals, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            code
        }
    }
}
