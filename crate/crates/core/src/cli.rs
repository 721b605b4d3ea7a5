//! The `hlzeta` command line.
//!
//! Exit codes: 0 success, 1 verification or probe failure, 2 usage or
//! domain error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::apostol::{apostol_eval_exact, apostol_poly, resolve_regime_exact, Regime};
use crate::exact_arith::{parse_exact_complex, parse_rational, BigRational, ExactComplex};
use crate::expansion::{
    eval_expansion_exact, expand, specialize, to_json, to_text, verify_fixtures, ExactParams,
    Expansion, PointSpec,
};
use crate::numeric::{Complex, Ctx, DEFAULT_DIGITS};
use crate::oracle::{limit_probe, DirectionVector, OracleError, ProbeSettings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn domain(e: impl std::fmt::Display) -> Self {
        Self::Domain(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "hlzeta",
    version,
    about = "Leading terms of Hurwitz-Lerch multiple zeta functions at non-positive integers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the expansion at the point `l`.
    Expand(ExpandArgs),
    /// Evaluate the expansion exactly at given a, z, eps.
    Eval(EvalArgs),
    /// Recompute the embedded reference expansions.
    Verify(VerifyArgs),
    /// Compare the direct series with the expansion along a ray.
    Probe(ProbeArgs),
    /// Apostol-Bernoulli polynomials and depth-one values.
    Apostol(ApostolArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    /// Comma-separated non-negative integers.
    #[arg(long)]
    l: String,
    /// Comma-separated regimes, `g` or `1`, one per coordinate.
    #[arg(long)]
    regime: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    l: String,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, allow_hyphen_values = true)]
    eps: String,
    #[arg(long)]
    regime: Option<String>,
    /// Significant digits of the decimal rendering.
    #[arg(long, default_value_t = 30)]
    precision: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Only references whose name starts with this prefix.
    #[arg(long)]
    only: Option<String>,
    #[arg(long, hide = true)]
    corrupt_fixture: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ProbeArgs {
    #[arg(long)]
    l: String,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Positive rational direction `c` of the ray `eps = δ·c`.
    #[arg(long)]
    dir: Option<String>,
    #[arg(long, default_value = "1e-2,1e-3,1e-4")]
    deltas: String,
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    precision: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ApostolArgs {
    /// Degree of the polynomial.
    #[arg(long, conflicts_with = "zeta")]
    n: Option<usize>,
    /// Print ζ(−n; a; z) = −B_{n+1}(a; z)/(n + 1) for this n.
    #[arg(long, allow_hyphen_values = true)]
    zeta: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long)]
    regime: Option<Regime>,
    #[arg(long, default_value_t = 30)]
    precision: u32,
    #[command(flatten)]
    common: Common,
}

/// Parses and runs one command line, writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Expand(a) => cmd_expand(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Probe(a) => cmd_probe(a),
        Command::Apostol(a) => cmd_apostol(a),
    };
    let common = match &cli.command {
        Command::Expand(a) => &a.common,
        Command::Eval(a) => &a.common,
        Command::Verify(a) => &a.common,
        Command::Probe(a) => &a.common,
        Command::Apostol(a) => &a.common,
    };
    match result.and_then(|(text, code)| emit(common, out, &text).map(|_| code)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Usage(_) | CliError::Domain(_) | CliError::Io(_) => EXIT_USAGE,
            }
        }
    }
}

fn emit(common: &Common, out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

type Outcome = Result<(String, i32), CliError>;

fn parse_point(s: &str) -> Result<PointSpec, CliError> {
    let l = s
        .split(',')
        .map(|x| {
            x.trim().parse::<u32>().map_err(|_| {
                CliError::Usage(format!(
                    "--l entries must be non-negative integers, got `{x}`"
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    PointSpec::new(l).map_err(|e| CliError::Usage(format!("{e} (use `apostol` for depth one)")))
}

fn parse_complex_list(flag: &str, s: &str, r: usize) -> Result<Vec<ExactComplex>, CliError> {
    let v = s
        .split(',')
        .map(|x| parse_exact_complex(x).map_err(|e| CliError::Usage(format!("--{flag}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != r {
        return Err(CliError::Usage(format!(
            "--{flag} needs {r} values, got {}",
            v.len()
        )));
    }
    Ok(v)
}

fn parse_rational_list(flag: &str, s: &str) -> Result<Vec<BigRational>, CliError> {
    s.split(',')
        .map(|x| parse_rational(x).map_err(|e| CliError::Usage(format!("--{flag}: {e}"))))
        .collect()
}

fn parse_regimes(s: Option<&str>, r: usize) -> Result<Option<Vec<Regime>>, CliError> {
    let Some(s) = s else { return Ok(None) };
    let v = s
        .split(',')
        .map(|x| x.parse::<Regime>().map_err(CliError::Usage))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != r {
        return Err(CliError::Usage(format!(
            "--regime needs {r} values, got {}",
            v.len()
        )));
    }
    Ok(Some(v))
}

fn cmd_expand(args: &ExpandArgs) -> Outcome {
    let point = parse_point(&args.l)?;
    let mut e: Expansion = expand(&point);
    if let Some(regimes) = parse_regimes(args.regime.as_deref(), point.r())? {
        e = specialize(&e, &regimes).map_err(CliError::domain)?;
    }
    let text = match args.common.format {
        Format::Text => to_text(&e),
        Format::Json => to_json(&e) + "\n",
    };
    Ok((text, EXIT_OK))
}

fn cmd_eval(args: &EvalArgs) -> Outcome {
    let point = parse_point(&args.l)?;
    let r = point.r();
    let a = parse_complex_list("a", &args.a, r)?;
    let z = parse_complex_list("z", &args.z, r)?;
    let eps = parse_complex_list("eps", &args.eps, r)?;
    let regimes: Vec<Option<Regime>> = match parse_regimes(args.regime.as_deref(), r)? {
        Some(v) => v.into_iter().map(Some).collect(),
        None => vec![None; r],
    };
    let params = ExactParams {
        a: &a,
        z: &z,
        regimes: &regimes,
        eps: &eps,
    };
    let value = eval_expansion_exact(&expand(&point), &params).map_err(CliError::domain)?;
    let ctx = Ctx::new(args.precision + 10);
    let decimal = ctx.complex(&value).format(args.precision as usize);
    let text = match args.common.format {
        Format::Text if decimal == value.to_string() => format!("{value}\n"),
        Format::Text => format!("{value}\n≈ {decimal}\n"),
        Format::Json => {
            json!({ "point": { "r": r, "l": point.l() }, "value": value.to_string(), "decimal": decimal })
                .to_string()
                + "\n"
        }
    };
    Ok((text, EXIT_OK))
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let outcomes = verify_fixtures(args.only.as_deref(), args.corrupt_fixture);
    if outcomes.is_empty() {
        return Err(CliError::Usage(format!(
            "no reference matches `{}`",
            args.only.as_deref().unwrap_or("")
        )));
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    let code = if passed == outcomes.len() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    let text = match args.common.format {
        Format::Text => {
            let mut s = String::new();
            for o in &outcomes {
                let status = if o.passed() { "pass" } else { "FAIL" };
                s.push_str(&format!("{:<8} {:>3} terms  {status}\n", o.name, o.terms));
                if let Some(d) = &o.diff {
                    s.push_str(&format!("    {d}\n"));
                }
            }
            s.push_str(&format!(
                "{passed}/{} references reproduced\n",
                outcomes.len()
            ));
            s
        }
        Format::Json => {
            let rows: Vec<_> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "name": o.name,
                        "terms": o.terms,
                        "passed": o.passed(),
                        "diff": o.diff.as_ref().map(|d| json!({
                            "composition": d.composition,
                            "expected": d.expected,
                            "computed": d.computed,
                        })),
                    })
                })
                .collect();
            json!({ "passed": passed, "total": outcomes.len(), "fixtures": rows }).to_string()
                + "\n"
        }
    };
    Ok((text, code))
}

fn cmd_probe(args: &ProbeArgs) -> Outcome {
    let point = parse_point(&args.l)?;
    let r = point.r();
    let ctx = Ctx::new(args.precision);
    let to_numeric =
        |v: Vec<ExactComplex>| v.iter().map(|x| ctx.complex(x)).collect::<Vec<Complex>>();
    let a = to_numeric(parse_complex_list("a", &args.a, r)?);
    let z = to_numeric(parse_complex_list("z", &args.z, r)?);
    let dir = match &args.dir {
        Some(d) => parse_rational_list("dir", d)?,
        None => vec![BigRational::from_integer(1.into()); r],
    };
    if dir.len() != r {
        return Err(CliError::Usage(format!(
            "--dir needs {r} values, got {}",
            dir.len()
        )));
    }
    let dir = DirectionVector::new(dir).map_err(|e| CliError::Usage(e.to_string()))?;
    let settings = ProbeSettings {
        deltas: parse_rational_list("deltas", &args.deltas)?,
        precision: args.precision,
        ..ProbeSettings::default()
    };
    let report = limit_probe(&point, &a, &z, &dir, &settings).map_err(|e| match e {
        OracleError::InvalidDirection(m) => CliError::Usage(m),
        other => CliError::domain(other),
    })?;
    let code = if report.passed { EXIT_OK } else { EXIT_FAILURE };
    let text = match args.common.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => {
            let mut s = format!(
                "{:<8} {:<32} {:<32} {}\n",
                "delta", "series", "expansion", "error"
            );
            for v in &report.values {
                s.push_str(&format!(
                    "{:<8} {:<32} {:<32} {}\n",
                    v.delta, v.zeta, v.formula, v.error
                ));
            }
            let order = report
                .empirical_order
                .map_or_else(|| "exact".to_string(), |p| format!("{p:.4}"));
            s.push_str(&format!(
                "order {order}, limit {} (off by {:.3e}): {}\n",
                report.extrapolated,
                report.limit_error,
                if report.passed { "pass" } else { "FAIL" }
            ));
            s
        }
    };
    Ok((text, code))
}

fn cmd_apostol(args: &ApostolArgs) -> Outcome {
    let z = args
        .z
        .as_deref()
        .map(|s| parse_exact_complex(s).map_err(|e| CliError::Usage(format!("--z: {e}"))))
        .transpose()?;
    let a = args
        .a
        .as_deref()
        .map(|s| parse_exact_complex(s).map_err(|e| CliError::Usage(format!("--a: {e}"))))
        .transpose()?;
    let (degree, zeta_of) = match (args.n, args.zeta) {
        (Some(n), None) => (n, None),
        (None, Some(m)) => {
            let m = m.unsigned_abs() as usize;
            (m + 1, Some(m))
        }
        _ => return Err(CliError::Usage("pass exactly one of --n or --zeta".into())),
    };

    let Some(a) = a else {
        if zeta_of.is_some() {
            return Err(CliError::Usage("--zeta needs --a and --z".into()));
        }
        // symbolic in a; an exact z = 1 selects the Bernoulli polynomial
        let regime = match (&z, args.regime) {
            (None, r) => r.unwrap_or(Regime::Generic),
            (Some(z), r) if z.is_one() => {
                resolve_regime_exact(z, Some(r.unwrap_or(Regime::ZEqualsOne)))
                    .map_err(CliError::domain)?
            }
            (Some(_), _) => {
                return Err(CliError::Usage(
                    "a symbolic polynomial takes no --z other than 1; pass --a to evaluate".into(),
                ))
            }
        };
        let poly = apostol_poly(degree, regime);
        let text = match args.common.format {
            Format::Text => format!("{poly}\n"),
            Format::Json => {
                json!({ "n": degree, "regime": regime.to_string(), "polynomial": poly.to_string() })
                    .to_string()
                    + "\n"
            }
        };
        return Ok((text, EXIT_OK));
    };
    let Some(z) = z else {
        return Err(CliError::Usage("--a needs --z".into()));
    };

    let b = apostol_eval_exact(degree, &a, &z, args.regime).map_err(CliError::domain)?;
    let value = match zeta_of {
        Some(m) => -(b * ExactComplex::real(BigRational::new(1.into(), (m as i64 + 1).into()))),
        None => b,
    };
    let ctx = Ctx::new(args.precision + 10);
    let decimal = ctx.complex(&value).format(args.precision as usize);
    let text = match args.common.format {
        Format::Text if decimal == value.to_string() => format!("{value}\n"),
        Format::Text => format!("{value}\n≈ {decimal}\n"),
        Format::Json => {
            json!({
                "value": value.to_string(),
                "decimal": decimal,
                "quantity": match zeta_of {
                    Some(m) => format!("zeta(-{m})"),
                    None => format!("B_{degree}"),
                },
            })
            .to_string()
                + "\n"
        }
    };
    Ok((text, EXIT_OK))
}
