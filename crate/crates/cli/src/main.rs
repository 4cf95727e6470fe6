use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qdr_core::catalog::{self, Context};
use qdr_core::conjugation::{build_z, normalize_lambda, Recursion};
use qdr_core::element::Element;
use qdr_core::error::Error;
use qdr_core::expr::eval_str;
use qdr_core::identities::{self, IdentityReport, Status};
use qdr_core::morphism::Morphism;
use qdr_core::rational_y::render_rational;
use qdr_core::scalar::render_scalar;
use qdr_core::skew_laurent::FG;
use qdr_core::subalgebra::{subalgebra_express, Expression};

#[derive(Parser)]
#[command(name = "qdr", version, about = "Exact computations in the q-division ring k_q(x,y)")]
struct Cli {
    /// Truncation window for series computations.
    #[arg(long, global = true, env = "QDR_PREC", default_value_t = 12, value_parser = clap::value_parser!(i32).range(4..))]
    prec: i32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RecursionArg {
    Corrected,
    Stated,
}

#[derive(Subcommand)]
enum Command {
    /// Run an identity suite (S1, S2, S3, S4, cross, all) or a suite file.
    Verify {
        suite: Option<String>,
        #[arg(long = "suite", conflicts_with = "suite")]
        suite_flag: Option<String>,
        /// One identity per line: `name | context | lhs | rhs | exact|series`.
        #[arg(long, conflicts_with_all = ["suite", "suite_flag"])]
        file: Option<PathBuf>,
    },
    /// Evaluate an expression.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value = "xy")]
        ctx: String,
    },
    /// Apply a registered morphism to an expression in its domain.
    Apply {
        morphism: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Coefficients z_0..z_N of the conjugator of a morphism.
    ZCoeffs {
        morphism: String,
        /// Highest index; defaults to the precision minus one.
        #[arg(short = 'n', long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = RecursionArg::Corrected)]
        recursion: RecursionArg,
    },
    /// Express an element as a combination of words in generators.
    Express {
        #[arg(allow_hyphen_values = true)]
        target: String,
        /// Generators, comma separated; defaults to theta1, theta2, theta3.
        #[arg(long, value_delimiter = ',', default_value = "theta1,theta2,theta3")]
        gens: Vec<String>,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
}

enum Failure {
    Usage(String),
    Eval(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unknown { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Eval(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
}

#[derive(Serialize)]
struct ResultEntry<'a> {
    name: &'a str,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exponent: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reached: Option<i32>,
    mode: String,
    ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<&'a str>,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    suite: &'a str,
    precision: i32,
    results: Vec<ResultEntry<'a>>,
}

fn mode_label(r: &IdentityReport) -> String {
    match r.mode {
        identities::Mode::Exact => "exact".into(),
        identities::Mode::Precision(p) => format!("precision {p}"),
    }
}

fn entry(r: &IdentityReport) -> ResultEntry<'_> {
    let (status, witness, exponent, reached) = match &r.status {
        Status::Pass => ("pass", None, None, None),
        Status::Fail { exponent, witness } => ("fail", Some(witness.as_str()), Some(*exponent), None),
        Status::Inconclusive { reached } => ("inconclusive", None, None, Some(*reached)),
    };
    ResultEntry {
        name: &r.name,
        status,
        witness,
        exponent,
        reached,
        mode: mode_label(r),
        ms: r.elapsed_ms,
        detail: r.detail.as_deref(),
    }
}

fn verify(suite: Option<String>, file: Option<PathBuf>, prec: i32, format: Format) -> Outcome {
    let (label, ids) = match (suite, file) {
        (_, Some(path)) => {
            let src = std::fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let label = path.file_stem().map_or("file".into(), |s| s.to_string_lossy().into_owned());
            let ids = identities::parse_suite_file(&src, &label).map_err(|e| Failure::Usage(e.to_string()))?;
            (label, ids)
        }
        (Some(name), None) => {
            let ids = identities::suite(&name).map_err(|e| Failure::Usage(e.to_string()))?;
            (name, ids)
        }
        (None, None) => return Err(Failure::Usage("verify needs a suite name or --file".into())),
    };
    let reports = identities::run_identities(&ids, prec);
    match format {
        Format::Json => {
            print_json(&VerifyReport { suite: &label, precision: prec, results: reports.iter().map(entry).collect() })
        }
        Format::Text => {
            for r in &reports {
                let e = entry(r);
                let mut line = format!(
                    "{:<5} {:<6} {:<28} {:>7} ms  {}",
                    e.status.to_uppercase(),
                    r.suite,
                    r.name,
                    r.elapsed_ms,
                    e.mode
                );
                match &r.status {
                    Status::Fail { exponent, witness } => {
                        line.push_str(&format!("  first difference at exponent {exponent}: {witness}"))
                    }
                    Status::Inconclusive { reached } => line.push_str(&format!("  agreed up to {reached}")),
                    Status::Pass => {}
                }
                if let Some(d) = &r.detail {
                    line.push_str(&format!("  [{d}]"));
                }
                println!("{line}");
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            println!("{label}: {passed}/{} passed at precision {prec}", reports.len());
        }
    }
    Ok(reports.iter().all(|r| r.passed()))
}

fn eval(expr: &str, ctx: &str, prec: i32, format: Format) -> Outcome {
    let ctx = Context::parse(ctx).map_err(|e| Failure::Usage(e.to_string()))?;
    let value = eval_str(expr, ctx, prec)?;
    emit_element(&value, format);
    Ok(true)
}

#[derive(Serialize)]
struct ElementReport {
    value: String,
    exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    precision: Option<i32>,
}

fn emit_element(value: &Element, format: Format) {
    match format {
        Format::Text => println!("{value}"),
        Format::Json => {
            let precision = match value {
                Element::Exact(_) => None,
                Element::Series(s) => Some(s.precision()),
            };
            print_json(&ElementReport { value: value.to_string(), exact: precision.is_none(), precision })
        }
    }
}

fn domain_context(m: &Morphism) -> Context {
    if m.domain() == FG {
        Context::Fg
    } else {
        Context::Xy
    }
}

fn apply(name: &str, expr: &str, prec: i32, format: Format) -> Outcome {
    let m = catalog::morphism(name, prec)?;
    let value = eval_str(expr, domain_context(&m), prec)?;
    emit_element(&m.apply(&value, prec)?, format);
    Ok(true)
}

#[derive(Serialize)]
struct ZReport {
    morphism: String,
    s: i32,
    lambda: String,
    leading: String,
    corrections: Vec<String>,
    coefficients: Vec<String>,
}

fn describe(m: &Morphism) -> String {
    let v = m.domain();
    format!("{} ↦ {}, {} ↦ {}", v.x, m.image_x(), v.y, m.image_y())
}

fn z_coeffs(name: &str, n: Option<usize>, recursion: RecursionArg, prec: i32, format: Format) -> Outcome {
    let m = catalog::morphism(name, prec)?;
    let lambda_before = qdr_core::conjugation::detect_standard_form(m.image_x(), m.image_y(), prec)?.lambda;
    let (sf, corrections) = normalize_lambda(m.image_x(), m.image_y(), prec)?;
    let recursion = match recursion {
        RecursionArg::Corrected => Recursion::Corrected,
        RecursionArg::Stated => Recursion::Stated,
    };
    let z = build_z(&sf, n.unwrap_or(prec as usize - 1), recursion)?;
    let y = sf.vars().y;
    let report = ZReport {
        morphism: m.name().to_string(),
        s: sf.s,
        lambda: render_scalar(&lambda_before, false),
        leading: render_rational(&sf.f_s, y, false),
        corrections: corrections.iter().map(describe).collect(),
        coefficients: z.coefficients.iter().map(|c| render_rational(c, y, false)).collect(),
    };
    match format {
        Format::Json => print_json(&report),
        Format::Text => {
            println!("{}: s = {}, lambda = {}, f_s = {}", report.morphism, report.s, report.lambda, report.leading);
            for c in &report.corrections {
                println!("correction: {c}");
            }
            for (i, c) in report.coefficients.iter().enumerate() {
                println!("z_{i} = {c}");
            }
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct ExpressReport {
    target: String,
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    combination: Option<String>,
}

fn express(target: &str, gens: &[String], max_len: usize, prec: i32, format: Format) -> Outcome {
    let exact = |src: &str| -> Result<_, Failure> {
        match eval_str(src, Context::Xy, prec)? {
            Element::Exact(p) => Ok(p),
            Element::Series(_) => Err(Failure::Eval(format!("`{src}` is not a Laurent polynomial"))),
        }
    };
    let t = exact(target)?;
    let g: Vec<_> = gens.iter().map(|s| exact(s)).collect::<Result<_, _>>()?;
    let combination = match subalgebra_express(&t, &g, max_len)? {
        Expression::Combination(c) => Some(render_words(&c, gens)),
        Expression::NotFound => None,
    };
    let found = combination.is_some();
    match format {
        Format::Json => print_json(&ExpressReport { target: target.into(), found, combination }),
        Format::Text => match &combination {
            Some(c) => println!("{target} = {c}"),
            None => println!("{target}: no combination of words of length <= {max_len}"),
        },
    }
    Ok(found)
}

fn render_words(c: &qdr_core::subalgebra::Combination, gens: &[String]) -> String {
    let parts: Vec<String> = c
        .iter()
        .map(|(word, k)| {
            let w: Vec<&str> = word.iter().map(|i| gens[*i].as_str()).collect();
            match (w.is_empty(), render_scalar(k, true)) {
                (true, _) => render_scalar(k, false),
                (false, s) if s == "1" => w.join("*"),
                (false, s) => format!("{s}*{}", w.join("*")),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn run(cli: Cli) -> Outcome {
    let (prec, format) = (cli.prec, cli.format);
    match cli.command {
        Command::Verify { suite, suite_flag, file } => verify(suite.or(suite_flag), file, prec, format),
        Command::Eval { expr, ctx } => eval(&expr, &ctx, prec, format),
        Command::Apply { morphism, expr } => apply(&morphism, &expr, prec, format),
        Command::ZCoeffs { morphism, n, recursion } => z_coeffs(&morphism, n, recursion, prec, format),
        Command::Express { target, gens, max_len } => express(&target, &gens, max_len, prec, format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Eval(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
