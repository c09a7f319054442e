//! The `qrec` command-line tool: finding, summing and checking recurrences,
//! grid verification, and the scripted proof pipeline with transcripts.

pub mod bridge;
pub mod commands;
pub mod docs;
pub mod error;
pub mod paper;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use qrec_oracle::{GridSpec, Identity};

use crate::commands::StructSource;
use crate::docs::{read_doc, to_json, InputHash, RecurrencesDoc, SumRecurrenceDoc, SummandSpec, KIND_RECURRENCES, KIND_SUM_RECURRENCE};
use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "qrec", version, about = "Exact k-free recurrences for q-hypergeometric multi-sums")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find all k-free recurrences of a summand over a structure set.
    FindRec(FindRecArgs),
    /// Sum a k-free recurrence over the summation variables.
    SumRec(SumRecArgs),
    /// Check termwise that a summand satisfies a sum recurrence.
    CheckRec(CheckRecArgs),
    /// Compare both sides of an identity on an integer grid.
    Verify(VerifyArgs),
    /// Run the scripted proof pipeline.
    Paper(PaperArgs),
}

#[derive(Debug, Args)]
pub struct SummandArgs {
    /// Summand document (JSON).
    #[arg(long, value_name = "FILE")]
    pub summand: PathBuf,
    /// Substitute a linear form for a symbol, e.g. 'L2=i + j - 1'. Repeatable;
    /// applied in order.
    #[arg(long, value_name = "NAME=LINFORM")]
    pub substitute: Vec<String>,
    /// Recurrence variables in shift order, e.g. L1,M,i; the remaining
    /// integer symbols become parameters.
    #[arg(long, value_name = "NAMES", value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct StructArgs {
    /// Structure set document (JSON).
    #[arg(long = "struct", value_name = "FILE")]
    pub structure: Option<PathBuf>,
    /// Box structure set: `I,J` bounds every recurrence shift by I and every
    /// summation shift by J; `I1,..,Ir/J1,..,Js` lists the bounds.
    #[arg(long, value_name = "I,J")]
    pub rect: Option<String>,
}

#[derive(Debug, Args)]
pub struct FindRecArgs {
    #[command(flatten)]
    pub summand: SummandArgs,
    #[command(flatten)]
    pub structure: StructArgs,
    /// Complete the box by Verbaeten's rule.
    #[arg(long, requires = "rect")]
    pub complete: bool,
    /// Write the recurrences document here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SumRecArgs {
    /// Recurrences document written by find-rec.
    #[arg(long, value_name = "FILE")]
    pub rec: PathBuf,
    /// Which recurrence of the document to sum.
    #[arg(long, default_value_t = 0)]
    pub index: usize,
    /// Shift so that all offsets are non-negative (default: non-positive).
    #[arg(long, conflicts_with = "backward")]
    pub forward: bool,
    /// Shift so that all offsets are non-positive (the default).
    #[arg(long)]
    pub backward: bool,
    /// Write the sum recurrence document here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckRecArgs {
    #[command(flatten)]
    pub summand: SummandArgs,
    /// Sum recurrence document written by sum-rec.
    #[arg(long, value_name = "FILE")]
    pub rec: PathBuf,
    /// Largest shift of the telescopers searched.
    #[arg(long, default_value_t = 2)]
    pub window: u32,
    /// Write the certificate document here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identity name: eq1.15, eq1.11, eq1.14, boundary_g=p_bound,
    /// boundary_bound2, eq5.1, eq5.2, finiteJac, finiteEuler.
    pub identity: String,
    /// Ranges overriding the defaults, e.g. `i=0..2,M=-1..4`.
    #[arg(long, value_name = "SPEC")]
    pub grid: Option<String>,
    /// Write the report document here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PaperArgs {
    /// Read the fixtures from this directory instead of the built-in copies.
    #[arg(long, value_name = "DIR")]
    pub fixtures: Option<PathBuf>,
    /// Write the transcript here.
    #[arg(long, value_name = "FILE")]
    pub transcript: Option<PathBuf>,
    /// Run only the oracle grid steps.
    #[arg(long)]
    pub grid_only: bool,
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_out<T: serde::Serialize>(out: &Option<PathBuf>, doc: &T) -> CliResult<()> {
    match out {
        Some(p) => write(p, &to_json(doc)),
        None => Ok(()),
    }
}

fn summand_spec(args: &SummandArgs, inputs: &mut Vec<InputHash>) -> CliResult<SummandSpec> {
    let text = read(&args.summand)?;
    inputs.push(InputHash::of(&args.summand.display().to_string(), text.as_bytes()));
    SummandSpec::new(&text, &args.substitute, args.vars.clone()).map_err(|e| e.context(&args.summand.display().to_string()))
}

/// Runs a command; returns what to print on success.
pub fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::FindRec(a) => {
            let mut inputs = Vec::new();
            let spec = summand_spec(&a.summand, &mut inputs)?;
            let source = match (&a.structure.structure, &a.structure.rect) {
                (Some(p), _) => {
                    let text = read(p)?;
                    inputs.push(InputHash::of(&p.display().to_string(), text.as_bytes()));
                    StructSource::parse_set(&text).map_err(|e| e.context(&p.display().to_string()))?
                }
                (None, Some(r)) => StructSource::Rect {
                    spec: r.clone(),
                    complete: a.complete,
                },
                (None, None) => unreachable!("clap requires one structure source"),
            };
            let doc = commands::find_rec(&spec, &source, inputs)?;
            write_out(&a.out, &doc)?;
            let lines: Vec<&str> = doc.recurrences.iter().map(|r| r.rendering.as_str()).collect();
            Ok(lines.join("\n"))
        }
        Command::SumRec(a) => {
            let text = read(&a.rec)?;
            let doc: RecurrencesDoc = read_doc(&text, KIND_RECURRENCES).map_err(|e| e.context(&a.rec.display().to_string()))?;
            let inputs = vec![InputHash::of(&a.rec.display().to_string(), text.as_bytes())];
            let sum = commands::sum_rec(&doc, a.index, a.forward, inputs)?;
            write_out(&a.out, &sum)?;
            Ok(sum.rendering)
        }
        Command::CheckRec(a) => {
            let mut inputs = Vec::new();
            let spec = summand_spec(&a.summand, &mut inputs)?;
            let text = read(&a.rec)?;
            inputs.push(InputHash::of(&a.rec.display().to_string(), text.as_bytes()));
            let rec: SumRecurrenceDoc =
                read_doc(&text, KIND_SUM_RECURRENCE).map_err(|e| e.context(&a.rec.display().to_string()))?;
            let cert = commands::check_rec(&spec, &rec, a.window, inputs)?;
            write_out(&a.out, &cert)?;
            if !cert.holds {
                return Err(CliError::Math(format!(
                    "no termwise certificate within window {}: {}",
                    a.window, rec.rendering
                )));
            }
            if !cert.verified {
                return Err(CliError::Math("the certificate does not verify".into()));
            }
            Ok(format!("True (window {})", cert.window))
        }
        Command::Verify(a) => {
            let identity: Identity = a.identity.parse().map_err(CliError::Input)?;
            let overrides = a
                .grid
                .as_deref()
                .map(|g| g.parse::<GridSpec>().map_err(CliError::Input))
                .transpose()?;
            let report = commands::verify(identity, overrides.as_ref())?;
            write_out(&a.out, &report)?;
            if report.report.passed() {
                Ok(report.report.to_string())
            } else {
                Err(CliError::Math(report.report.to_string()))
            }
        }
        Command::Paper(a) => {
            let fixtures = match &a.fixtures {
                Some(dir) => paper::Fixtures::from_dir(dir)?,
                None => paper::Fixtures::embedded(),
            };
            let mut progress = |s: &paper::Step| {
                let mark = if s.passed() { "ok  " } else { "FAIL" };
                println!("[{mark}] {:<18} {:>7} ms  {}", s.id, s.duration_ms, s.command);
            };
            let run = paper::run_paper(&fixtures, a.grid_only, &mut progress);
            if let Some(p) = &a.transcript {
                write(p, &to_json(&run.transcript))?;
            }
            match run.failure {
                Some(e) => Err(e),
                None => Ok(format!("{} steps passed", run.transcript.steps.len())),
            }
        }
    }
}
