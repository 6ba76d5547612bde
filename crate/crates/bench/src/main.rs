use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use cc_bench::commands::{cmd_generate, cmd_run, cmd_sweep, cmd_verify};
use cc_bench::config::{GraphSource, ReportFormat, RunConfig, WorkerCount};
use cc_bench::error::{BenchError, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED};
use cc_bench::report::{emit_report, Report};
use cc_core::io::Format;
use cc_core::{Algorithm, GeneratorSpec, Segments};
use clap::{Args, Parser, Subcommand};

/// Parallel connected components: runs, sweeps, verification and generation.
#[derive(Parser)]
#[command(name = "cc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one engine and report timings and work counters.
    Run(RunArgs),
    /// Run the adaptive engine over a list of segment counts.
    Sweep(SweepArgs),
    /// Check a label file against the oracle.
    Verify(VerifyArgs),
    /// Write a generated graph.
    Gen(GenArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Graph file to load.
    #[arg(long, conflicts_with = "gen")]
    input: Option<PathBuf>,
    /// Input format: edgelist, dimacs or mtx.
    #[arg(long, default_value = "edgelist")]
    format: Format,
    /// Generator spec, e.g. `grid:100x100`, `er:n=1000,m=500,seed=3`,
    /// `rmat:scale=16,ef=16`.
    #[arg(long)]
    gen: Option<String>,
    /// Edge lists start with an `n m` header line.
    #[arg(long)]
    header: bool,
    /// Seed for generator specs that do not name one.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl InputArgs {
    fn source(&self) -> Result<GraphSource, BenchError> {
        match (&self.input, &self.gen) {
            (Some(path), None) => Ok(GraphSource::File {
                path: path.clone(),
                format: self.format,
                header: self.header,
            }),
            (None, Some(spec)) => GeneratorSpec::parse(spec, self.seed)
                .map(GraphSource::Generated)
                .map_err(|e| BenchError::Usage(e.to_string())),
            _ => Err(BenchError::Usage(
                "exactly one of --input or --gen is required".into(),
            )),
        }
    }
}

#[derive(Args)]
struct EngineArgs {
    #[command(flatten)]
    input: InputArgs,
    /// `max` or a worker count.
    #[arg(long, default_value = "max")]
    workers: WorkerCount,
    /// Repetitions; the fastest is reported, with the median alongside.
    #[arg(long, default_value_t = 1)]
    reps: usize,
    /// Also write the report to this file.
    #[arg(long)]
    metrics_out: Option<PathBuf>,
    /// Report format: json or csv.
    #[arg(long, default_value = "json")]
    report: ReportFormat,
}

impl EngineArgs {
    fn config(&self) -> Result<RunConfig, BenchError> {
        let mut config = RunConfig::new(self.input.source()?);
        config.workers = self.workers;
        config.repetitions = self.reps;
        config.metrics_out = self.metrics_out.clone();
        config.report = self.report;
        Ok(config)
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    engine: EngineArgs,
    /// baseline, baseline-mj, atomic or adaptive.
    #[arg(long, default_value = "adaptive")]
    algo: Algorithm,
    /// `auto` or a segment count (adaptive only).
    #[arg(long, default_value = "auto")]
    segments: Segments,
    /// Write `<vertex> <label>` lines to this file.
    #[arg(long)]
    labels_out: Option<PathBuf>,
    /// Skip the oracle check.
    #[arg(long)]
    no_verify: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    engine: EngineArgs,
    /// Comma-separated segment counts; defaults to powers of two up to twice
    /// the automatic choice.
    #[arg(long, value_delimiter = ',')]
    sweep_segments: Option<Vec<usize>>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Label file with one `<vertex> <label>` line per vertex.
    #[arg(long)]
    labels: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    /// Generator spec.
    #[arg(long)]
    gen: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Output format: edgelist, dimacs or mtx.
    #[arg(long, default_value = "edgelist")]
    format: Format,
    /// Prefix edge lists with an `n m` header.
    #[arg(long)]
    header: bool,
}

fn print(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
}

fn execute(command: Command) -> Result<i32, BenchError> {
    match command {
        Command::Run(args) => {
            let mut config = args.engine.config()?;
            config.algorithm = args.algo;
            config.segments = args.segments;
            config.labels_out = args.labels_out;
            config.verify = !args.no_verify;
            let outcome = cmd_run(&config)?;
            print(&emit_report(Report::Run(&outcome.report), config.report));
            if outcome.verification_failed() {
                eprintln!("error: labels do not match the oracle partition");
                return Ok(EXIT_VERIFICATION_FAILED);
            }
            Ok(EXIT_OK)
        }
        Command::Sweep(args) => {
            let config = args.engine.config()?;
            let table = cmd_sweep(&config, args.sweep_segments.as_deref())?;
            print(&emit_report(Report::Sweep(&table), config.report));
            if !table.all_verified() {
                eprintln!("error: at least one sweep row failed verification");
                return Ok(EXIT_VERIFICATION_FAILED);
            }
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let outcome = cmd_verify(&args.input.source()?, &args.labels)?;
            match outcome.witness {
                None => {
                    println!("ok: {} vertices match the oracle partition", outcome.n);
                    Ok(EXIT_OK)
                }
                Some(w) => {
                    let (given, oracle) = if w.together_in_first {
                        ("the same component", "different components")
                    } else {
                        ("different components", "the same component")
                    };
                    println!(
                        "mismatch: vertices {} and {} are in {given} in the label file but in {oracle} in the graph",
                        w.u, w.v
                    );
                    Ok(EXIT_VERIFICATION_FAILED)
                }
            }
        }
        Command::Gen(args) => {
            let spec = GeneratorSpec::parse(&args.gen, args.seed)
                .map_err(|e| BenchError::Usage(e.to_string()))?;
            match &args.output {
                Some(path) => {
                    let file = File::create(path).map_err(|source| BenchError::Io {
                        path: path.clone(),
                        source,
                    })?;
                    cmd_generate(&spec, file, args.format, args.header)?;
                }
                None => {
                    cmd_generate(&spec, io::stdout().lock(), args.format, args.header)?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() {
                EXIT_USAGE as u8
            } else {
                0
            });
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
