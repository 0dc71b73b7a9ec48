use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use sincint::oracle::DEFAULT_TOL;
use sincint::selftest::{run_selftest, GridBounds, SelftestConfig};
use sincint::{evaluate, verify, DomainError, IntegralParams};

mod record;

use record::OutputRecord;

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_PARTIAL_BATCH: u8 = 3;
const EXIT_SELFTEST: u8 = 4;
const EXIT_VERIFY_FAILED: u8 = 5;

#[derive(Parser)]
#[command(name = "sincint", version, about = "Exact values of ∫₀^∞ sin^a(px) cos^c(qx) / x^b dx")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact closed form and its decimal value.
    Eval {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Compare the closed form against numerical quadrature.
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, env = "SINCINT_TOL", default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate every `a b c p q` line of a file.
    Batch {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        allow_b1: bool,
        /// Also run the quadrature oracle on each line.
        #[arg(long)]
        verify: bool,
        #[arg(long, env = "SINCINT_TOL", default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Run the identity sweep and the oracle agreement grid.
    Selftest {
        #[arg(long)]
        max_a: Option<u32>,
        #[arg(long)]
        max_c: Option<u32>,
        #[arg(long)]
        max_p: Option<u32>,
        #[arg(long)]
        max_q: Option<u32>,
        #[arg(long, env = "SINCINT_TOL", default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Negate every exact value; the run must then fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Args)]
struct CaseArgs {
    #[arg(short = 'a', allow_negative_numbers = true)]
    a: i64,
    #[arg(short = 'b', allow_negative_numbers = true)]
    b: i64,
    #[arg(short = 'c', allow_negative_numbers = true, default_value_t = 0)]
    c: i64,
    #[arg(short = 'p', allow_negative_numbers = true)]
    p: i64,
    #[arg(short = 'q', allow_negative_numbers = true, default_value_t = 0)]
    q: i64,
    /// Accept b = 1 with odd a.
    #[arg(long)]
    allow_b1: bool,
}

impl CaseArgs {
    fn params(&self) -> Result<IntegralParams, DomainError> {
        IntegralParams::build(self.a, self.b, self.c, self.p, self.q, self.allow_b1)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

fn domain_failure(e: &DomainError) -> ExitCode {
    eprintln!("sincint: domain error: {e}");
    ExitCode::from(EXIT_DOMAIN)
}

fn emit(lines: &[String]) {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for line in lines {
        // a closed pipe is not worth a panic
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
}

fn cmd_eval(case: &CaseArgs, format: Format) -> ExitCode {
    let params = match case.params() {
        Ok(p) => p,
        Err(e) => return domain_failure(&e),
    };
    match evaluate(&params) {
        Ok(value) => {
            let rec = OutputRecord::evaluated(&params, &value);
            let line = match format {
                Format::Json => rec.json(),
                Format::Plain => format!("{value} = {}", rec.decimal.unwrap_or(f64::NAN)),
            };
            emit(&[line]);
            ExitCode::SUCCESS
        }
        Err(e) => domain_failure(&e),
    }
}

fn cmd_verify(case: &CaseArgs, tol: f64, format: Format) -> ExitCode {
    let params = match case.params() {
        Ok(p) => p,
        Err(e) => return domain_failure(&e),
    };
    let report = match verify(&params, tol) {
        Ok(r) => r,
        Err(e) => return domain_failure(&e),
    };
    let line = match format {
        Format::Json => serde_json::to_string(&report).expect("reports always serialize"),
        Format::Plain => {
            let mut rec = OutputRecord::evaluated(&params, &report.exact);
            rec.attach_verify(&report);
            rec.plain()
        }
    };
    emit(&[line]);
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    }
}

fn batch_line(number: usize, text: &str, allow_b1: bool, check: Option<f64>) -> OutputRecord {
    let fields: Vec<&str> = text.split_whitespace().collect();
    let parsed: Option<Vec<i64>> = fields.iter().map(|f| f.parse().ok()).collect();
    let raw: [i64; 5] = match parsed.and_then(|v| v.try_into().ok()) {
        Some(raw) => raw,
        None => {
            return OutputRecord {
                line: Some(number),
                status: Some("parse_error"),
                error: Some(format!("expected five integers `a b c p q`, got {text:?}")),
                ..OutputRecord::default()
            }
        }
    };
    let [a, b, c, p, q] = raw;
    let result = IntegralParams::build(a, b, c, p, q, allow_b1)
        .and_then(|params| evaluate(&params).map(|v| (params, v)));
    let mut rec = match result {
        Ok((params, value)) => {
            let mut rec = OutputRecord::evaluated(&params, &value);
            rec.status = Some("ok");
            if let Some(tol) = check {
                let report = sincint::oracle::verify_value(&params, value, tol);
                rec.attach_verify(&report);
                if !report.pass {
                    rec.status = Some("verify_failed");
                }
            }
            rec
        }
        Err(e) => {
            let mut rec = OutputRecord::with_raw(raw);
            rec.status = Some("domain_error");
            rec.error = Some(e.to_string());
            rec
        }
    };
    rec.line = Some(number);
    rec
}

fn cmd_batch(input: &PathBuf, format: Format, allow_b1: bool, check: Option<f64>) -> ExitCode {
    let text = match fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("sincint: cannot read {}: {e}", input.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cases: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let records: Vec<OutputRecord> = cases
        .par_iter()
        .map(|&(n, l)| batch_line(n, l, allow_b1, check))
        .collect();
    let lines: Vec<String> = records
        .iter()
        .map(|r| match format {
            Format::Json => r.json(),
            Format::Plain => r.plain(),
        })
        .collect();
    emit(&lines);
    if records.iter().all(|r| r.status == Some("ok")) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_PARTIAL_BATCH)
    }
}

fn cmd_selftest(bounds: [Option<u32>; 4], tol: f64, inject_fault: bool) -> ExitCode {
    let mut config = SelftestConfig {
        tol,
        ..SelftestConfig::default()
    };
    let [max_a, max_c, max_p, max_q] = bounds;
    let grid = GridBounds::default();
    config.identity = (
        max_a.unwrap_or(config.identity.0),
        max_c.unwrap_or(config.identity.1),
        max_p.map_or(config.identity.2, u64::from),
        max_q.map_or(config.identity.3, u64::from),
    );
    config.grid = GridBounds {
        max_a: max_a.unwrap_or(grid.max_a),
        max_c: max_c.unwrap_or(grid.max_c),
        max_p: max_p.unwrap_or(grid.max_p),
        max_q: max_q.unwrap_or(grid.max_q),
    };
    let summary = if inject_fault {
        run_selftest(&config, |p: &IntegralParams| evaluate(p).map(|v| -v))
    } else {
        run_selftest(&config, evaluate)
    };
    emit(&[
        format!(
            "identity sweep: {} tuples, {} failures",
            summary.identity_checked, summary.identity_failures
        ),
        format!(
            "oracle grid: {} cases, {} failures",
            summary.grid_checked, summary.grid_failures
        ),
    ]);
    if summary.passed() {
        ExitCode::SUCCESS
    } else {
        if let Some(first) = &summary.first_failure {
            eprintln!("sincint: first failure: {first}");
        }
        ExitCode::from(EXIT_SELFTEST)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Eval { case, format } => cmd_eval(&case, format),
        Command::Verify { case, tol, format } => cmd_verify(&case, tol, format),
        Command::Batch {
            input,
            format,
            allow_b1,
            verify,
            tol,
        } => cmd_batch(&input, format, allow_b1, verify.then_some(tol)),
        Command::Selftest {
            max_a,
            max_c,
            max_p,
            max_q,
            tol,
            inject_fault,
        } => cmd_selftest([max_a, max_c, max_p, max_q], tol, inject_fault),
    }
}
