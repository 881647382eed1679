//! `ar-spectra`: batch front end for the `ar-spectra` library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use ar_spectra::matrix::{self, Limits, Which};
use ar_spectra::oracle::{self, SuiteOptions};
use ar_spectra::permutation::{self, SigmaTable};
use ar_spectra::spectrum::{self, DEFAULT_PRECISION};
use ar_spectra::{Error, ExactMatrix};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const NMAX_ENV: &str = "AR_SPECTRA_NMAX";

#[derive(Debug, Parser)]
#[command(name = "ar-spectra", version, about = "Exact run-weight matrices A_n, B_n: spectra and pairing permutations")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Largest n for dense matrices (overrides AR_SPECTRA_NMAX).
    #[arg(long, global = true)]
    max_n: Option<u32>,
    /// Largest matrix dimension handed to the brute-force oracle.
    #[arg(long, global = true)]
    oracle_cap: Option<usize>,
    /// Significant digits in decimal eigenvalue approximations.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..=1000))]
    precision: Option<u16>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    /// One JSON document per invocation.
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Raw,
    Conjugated,
    Blocked,
    #[value(name = "U")]
    U,
    #[value(name = "U-inverse")]
    UInverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursive,
    Closed,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a matrix in the `dim=` text format.
    Matrix {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "A")]
        which: Which,
        #[arg(long, value_enum, default_value_t = Variant::Raw)]
        variant: Variant,
    },
    /// Eigenvalue report from the composition formula.
    Spectrum {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "A")]
        which: Which,
    },
    /// The pairing permutation sigma_n.
    Sigma {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Method::Recursive)]
        method: Method,
        /// Print sigma as a one-line permutation of 1..2^n.
        #[arg(long)]
        as_permutation: bool,
    },
    /// Thue-Morse prefixes and the membership words of sigma_n.
    #[command(group(ArgGroup::new("mode").required(true).args(["word", "sigma_word"])))]
    ThueMorse {
        /// Print the Thue-Morse prefix of length 2^m.
        #[arg(long, value_name = "M")]
        word: Option<u32>,
        /// Print the membership word of j along sigma_n.
        #[arg(long, requires_all = ["n", "j"])]
        sigma_word: bool,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        j: Option<u32>,
    },
    /// Run the verification suite for n = 0..=n-max.
    Verify {
        #[arg(long)]
        n_max: u32,
        /// Keep only claims whose id starts with this prefix.
        #[arg(long)]
        only: Option<String>,
        /// Corrupt one conjugated entry; the suite must then fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

/// Everything that ends a run without normal output.
enum Failure {
    Usage(String),
    Cap(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::OracleCapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn limits(common: &Common) -> Result<Limits, Failure> {
    let mut limits = Limits::default();
    if let Ok(raw) = std::env::var(NMAX_ENV) {
        limits.max_n = raw
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{NMAX_ENV} must be a non-negative integer, got {raw:?}")))?;
    }
    if let Some(n) = common.max_n {
        limits.max_n = n;
    }
    if let Some(d) = common.oracle_cap {
        limits.oracle_max_dim = d;
    }
    Ok(limits)
}

fn run(cli: Cli) -> Outcome {
    let limits = limits(&cli.common)?;
    let mut out: Box<dyn Write> = match &cli.common.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let structured = cli.common.format == Format::Structured;
    let precision = cli.common.precision.map_or(DEFAULT_PRECISION, usize::from);

    let ok = match cli.command {
        Command::Matrix { n, which, variant } => {
            cmd_matrix(&mut out, structured, n, which, variant, &limits)?;
            true
        }
        Command::Spectrum { n, which } => {
            let report = spectrum::spectrum(which, n, precision, &limits)?;
            if structured {
                let mut doc = report.to_json();
                doc["command"] = json!("spectrum");
                emit_json(&mut out, &doc)?;
            } else {
                write!(out, "{report}")?;
            }
            true
        }
        Command::Sigma { n, method, as_permutation } => {
            cmd_sigma(&mut out, structured, n, method, as_permutation, &limits)?;
            true
        }
        Command::ThueMorse { word, sigma_word: _, n, j } => {
            let (label, w) = match (word, n, j) {
                (Some(m), _, _) => {
                    limits.check_table_n(m)?;
                    (json!({ "word": m }), permutation::thue_morse_word(m))
                }
                (None, Some(n), Some(j)) => {
                    (json!({ "n": n, "j": j }), permutation::sigma_word_thue_morse(n, j, &limits)?)
                }
                _ => return Err(Failure::Usage("expected --word M or --sigma-word --n N --j J".into())),
            };
            if structured {
                let mut doc = json!({ "command": "thue-morse", "value": w.to_string() });
                if let (Value::Object(doc), Value::Object(extra)) = (&mut doc, label) {
                    doc.extend(extra);
                }
                emit_json(&mut out, &doc)?;
            } else {
                writeln!(out, "{w}")?;
            }
            true
        }
        Command::Verify { n_max, only, inject_fault } => {
            let options = SuiteOptions { only, inject_fault };
            cmd_verify(&mut out, structured, n_max, &options, &limits)?
        }
    };
    out.flush()?;
    Ok(ok)
}

fn emit_json(out: &mut dyn Write, doc: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)
}

fn cmd_matrix(
    out: &mut dyn Write,
    structured: bool,
    n: u32,
    which: Which,
    variant: Variant,
    limits: &Limits,
) -> Result<(), Failure> {
    let m: ExactMatrix = match variant {
        Variant::Raw => matrix::build_recursive(which, n, limits)?,
        Variant::Conjugated => matrix::conjugated(which, n, limits)?,
        Variant::Blocked => matrix::blocked(which, n, limits)?,
        Variant::U => matrix::build_u(n, limits)?,
        Variant::UInverse => matrix::build_u_inverse(n, limits)?,
    };
    if structured {
        let rows: Vec<Vec<String>> = m.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let variant = variant.to_possible_value().map(|v| v.get_name().to_owned());
        let doc = json!({
            "command": "matrix",
            "n": n,
            "which": which.to_string(),
            "variant": variant,
            "dim": m.dim(),
            "rows": rows,
        });
        emit_json(out, &doc)?;
    } else {
        write!(out, "{m}")?;
    }
    Ok(())
}

fn cmd_sigma(
    out: &mut dyn Write,
    structured: bool,
    n: u32,
    method: Method,
    as_permutation: bool,
    limits: &Limits,
) -> Result<(), Failure> {
    let table: SigmaTable = match method {
        Method::Recursive => permutation::sigma_recursive(n, limits)?,
        Method::Closed => permutation::sigma_closed_table(n, limits)?,
    };
    let permutation = if as_permutation { Some(table.as_permutation()?) } else { None };
    if structured {
        let method = method.to_possible_value().map(|v| v.get_name().to_owned());
        let mut doc = json!({ "command": "sigma", "n": n, "method": method });
        match permutation {
            Some(p) => doc["permutation"] = json!(p),
            None => {
                let rows: Vec<Value> = table
                    .values()
                    .chunks(2)
                    .enumerate()
                    .map(|(i, pair)| {
                        json!({
                            "index": i + 1,
                            "odd": pair[0].to_string(),
                            "even": pair.get(1).map(ToString::to_string),
                        })
                    })
                    .collect();
                doc["table"] = json!(rows);
            }
        }
        emit_json(out, &doc)?;
    } else if let Some(p) = permutation {
        let line: Vec<String> = p.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", line.join(" "))?;
    } else {
        write!(out, "{table}")?;
    }
    Ok(())
}

fn cmd_verify(
    out: &mut dyn Write,
    structured: bool,
    n_max: u32,
    options: &SuiteOptions,
    limits: &Limits,
) -> Outcome {
    let mut all_pass = true;
    let mut records = Vec::new();
    let mut io_error = None;
    oracle::run_suite_with(n_max, limits, options, |outcome| {
        all_pass &= outcome.passed();
        if structured {
            records.push(outcome.to_json());
        } else if io_error.is_none() {
            // Stream lines so long runs show progress.
            if let Err(e) = writeln!(out, "{outcome}").and_then(|()| out.flush()) {
                io_error = Some(e);
            }
        }
    })?;
    if let Some(e) = io_error {
        return Err(e.into());
    }
    if structured {
        let doc = json!({
            "command": "verify",
            "n_max": n_max,
            "only": options.only,
            "pass": all_pass,
            "outcomes": records,
        });
        emit_json(out, &doc)?;
    }
    Ok(all_pass)
}
