//! Command-line interface.
//!
//! Exit codes: 0 success, 1 validation error, 2 I/O error, 3 table mismatch
//! or partial repair.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::code::LrcCode;
use crate::error::Error;
use crate::io::{format_codeword, format_erased_word, matrix_csv, parse_erased_word, parse_spec_json, parse_symbols};
use crate::metrics::{local_code, metrics};
use crate::simulation::{run_simulation, run_simulation_with_threads, SimConfig};
use crate::tables::{format_rows, REFERENCE_TABLES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "varlrc", version, about = "Locally recoverable codes with variable locality and availability")]
pub struct Cli {
    /// Print extension-field elements as coefficient tuples instead of ranks.
    #[arg(long, global = true)]
    pub coeffs: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Length, dimension, minimum distance and locality profile of a code.
    Params {
        spec: PathBuf,
        /// Aligned text instead of JSON.
        #[arg(long)]
        human: bool,
        /// Also write the generator matrix as CSV of element ranks.
        #[arg(long, value_name = "PATH")]
        generator_csv: Option<PathBuf>,
    },
    /// Recompute the reference tables and compare with the embedded values.
    Tables {
        #[arg(long)]
        human: bool,
    },
    /// Encode a message (κ symbols) into a codeword.
    Encode {
        spec: PathBuf,
        message: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Repair the erasures ("?") of a word.
    Recover {
        spec: PathBuf,
        word: PathBuf,
        /// Repaired word destination; the JSON report then goes to stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Analyse the code restricted to one recovery line.
    Local {
        spec: PathBuf,
        #[arg(long)]
        direction: usize,
        /// Coordinates of the line in the other directions.
        #[arg(long, num_args = 0.., allow_hyphen_values = false)]
        alpha: Vec<String>,
    },
    /// Monte-Carlo erasure/repair experiment.
    Simulate {
        config: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        human: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Validation(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

type CliResult = Result<i32, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_VALIDATION
                }
            };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(CliError::Validation(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_VALIDATION
        }
        Err(CliError::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_IO
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Params {
            spec,
            human,
            generator_csv,
        } => cmd_params(spec, *human, generator_csv.as_deref(), out),
        Command::Tables { human } => cmd_tables(*human, out, err),
        Command::Encode { spec, message, output } => cmd_encode(spec, message, output.as_deref(), cli.coeffs, out),
        Command::Recover { spec, word, output } => cmd_recover(spec, word, output.as_deref(), cli.coeffs, out, err),
        Command::Local { spec, direction, alpha } => cmd_local(spec, *direction, alpha, out),
        Command::Simulate { config, threads, human } => cmd_simulate(config, *threads, *human, out),
    }
}

fn cmd_params(spec: &Path, human: bool, generator_csv: Option<&Path>, out: &mut dyn Write) -> CliResult {
    let spec = parse_spec_json(&read(spec)?)?;
    let m = metrics(&spec);
    if let Some(path) = generator_csv {
        let code = LrcCode::new(spec.clone());
        write_file(path, &matrix_csv(code.generator()))?;
    }
    if human {
        let text = format!(
            "field          GF({})\n\
             sizes          {:?}\n\
             deltas         {:?}\n\
             localities     {:?}\n\
             d              {}\n\
             length m       {}\n\
             dimension κ    {}\n\
             distance v     {}\n\
             availability   {}\n\
             singleton gap  {}\n",
            m.field,
            m.sizes,
            m.deltas,
            m.localities,
            m.degree_bound,
            m.length,
            m.dimension,
            m.min_distance,
            m.availability,
            m.singleton_gap
        );
        emit(out, &text)?;
    } else {
        emit(out, &json(&m))?;
    }
    Ok(EXIT_OK)
}

fn cmd_tables(human: bool, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let checks = REFERENCE_TABLES
        .iter()
        .map(|t| t.check())
        .collect::<Result<Vec<_>, _>>()?;
    if human {
        for c in &checks {
            let deltas: Vec<String> = c.deltas.iter().map(i64::to_string).collect();
            emit(
                out,
                &format!(
                    "{}: GF({})^{}, deltas {{{}}}\n{}\n",
                    c.name,
                    c.field,
                    c.deltas.len(),
                    deltas.join(", "),
                    format_rows(&c.computed)
                ),
            )?;
        }
    } else {
        emit(out, &json(&checks))?;
    }
    let mut ok = true;
    for c in &checks {
        for mm in &c.mismatches {
            ok = false;
            let _ = writeln!(
                err,
                "mismatch {} d={} {}: expected {}, computed {}",
                c.name, mm.d, mm.row, mm.expected, mm.computed
            );
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_INCOMPLETE })
}

fn cmd_encode(spec: &Path, message: &Path, output: Option<&Path>, verbose: bool, out: &mut dyn Write) -> CliResult {
    let spec = parse_spec_json(&read(spec)?)?;
    let text = read(message)?;
    let code = LrcCode::new(spec);
    let message = parse_symbols(code.field(), &text)?;
    let codeword = code.encode(&message)?;
    let rendered = format_codeword(code.field(), &codeword, verbose);
    match output {
        Some(path) => write_file(path, &rendered)?,
        None => emit(out, &rendered)?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RecoverReportJson {
    complete: bool,
    erasures: usize,
    repaired: usize,
    passes: usize,
    repairs_per_direction: Vec<usize>,
    attempts_per_direction: Vec<usize>,
    stuck: Vec<usize>,
}

fn cmd_recover(
    spec: &Path,
    word: &Path,
    output: Option<&Path>,
    verbose: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let spec = parse_spec_json(&read(spec)?)?;
    let text = read(word)?;
    let code = LrcCode::new(spec);
    let word = parse_erased_word(code.field(), &text)?;
    let (outcome, report) = code.recover_all(&word)?;
    let rendered = format_erased_word(code.field(), &outcome.to_erased_word(), verbose);
    let summary = json(&RecoverReportJson {
        complete: outcome.is_complete(),
        erasures: word.erasure_count(),
        repaired: report.repaired,
        passes: report.passes,
        repairs_per_direction: report.repairs_per_direction,
        attempts_per_direction: report.attempts_per_direction,
        stuck: report.stuck,
    });
    match output {
        Some(path) => {
            write_file(path, &rendered)?;
            emit(out, &summary)?;
        }
        None => {
            emit(out, &rendered)?;
            let _ = err.write_all(summary.as_bytes());
        }
    }
    Ok(if outcome.is_complete() { EXIT_OK } else { EXIT_INCOMPLETE })
}

fn cmd_local(spec: &Path, direction: usize, alpha: &[String], out: &mut dyn Write) -> CliResult {
    let spec = parse_spec_json(&read(spec)?)?;
    let code = LrcCode::new(spec);
    let alpha = alpha
        .iter()
        .map(|s| code.field().parse_element(s))
        .collect::<Result<Vec<_>, _>>()?;
    let report = local_code(&code, direction, &alpha)?;
    emit(out, &json(&report))?;
    Ok(EXIT_OK)
}

fn cmd_simulate(config: &Path, threads: Option<usize>, human: bool, out: &mut dyn Write) -> CliResult {
    let config = SimConfig::from_json(&read(config)?)?;
    let report = match threads {
        Some(t) => run_simulation_with_threads(&config, t)?,
        None => run_simulation(&config)?,
    };
    if human {
        emit(out, &report.summary())?;
    } else {
        emit(out, &json(&report))?;
    }
    Ok(EXIT_OK)
}
