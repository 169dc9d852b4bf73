use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use harness_cli::commands::{self, Outcome, EXIT_USAGE};
use harness_cli::config::{CoeffList, JobConfig, OutputFormat, PartialConfig};
use harness_core::GeneratorTag;

#[derive(Parser)]
#[command(
    name = "harness",
    version,
    about = "Stationary fields with linear two-sided regressions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Existence verdict, correlations r_0..r_K and the conditional variance v.
    Analyze(JobArgs),
    /// One-sided model (beta, w) by three routes and the factorization identity.
    Factor(JobArgs),
    /// Simulate a sample path and compare its correlations with the analytic ones.
    Simulate(JobArgs),
    /// Monte Carlo check of both regressions over independent replications.
    Verify(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Two-sided coefficients b_1,..,b_N (empty string for white noise)
    #[arg(long, allow_hyphen_values = true)]
    b: Option<CoeffList>,
    /// One-sided coefficients beta_1,..,beta_N, mapped to b first
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<CoeffList>,
    /// Correlation depth (automatic when omitted)
    #[arg(long = "K")]
    depth: Option<usize>,
    /// Model order for regressions / Levinson-Durbin
    #[arg(long)]
    order: Option<usize>,
    /// Path length
    #[arg(long = "T")]
    length: Option<usize>,
    /// Number of replications
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Grid size for symbol evaluation (power of two)
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Path generator for `simulate`
    #[arg(long, value_parser = parse_generator)]
    generator: Option<GeneratorTag>,
    /// TOML or JSON config file (a previous JSON report also works)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_generator(s: &str) -> Result<GeneratorTag, String> {
    match s {
        "ar" => Ok(GeneratorTag::Ar),
        "circulant" => Ok(GeneratorTag::Circulant),
        other => Err(format!(
            "unknown generator {other:?} (expected ar or circulant)"
        )),
    }
}

impl JobArgs {
    fn flags(&self) -> PartialConfig {
        PartialConfig {
            b: self.b.clone().map(|c| c.0),
            beta: self.beta.clone().map(|c| c.0),
            depth: self.depth,
            order: self.order,
            length: self.length,
            reps: self.reps,
            seed: self.seed,
            grid: self.grid,
            format: self.format,
            generator: self.generator,
        }
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (run, args): (fn(JobConfig) -> Outcome, JobArgs) = match cli.command {
        Command::Analyze(a) => (commands::analyze, a),
        Command::Factor(a) => (commands::factor, a),
        Command::Simulate(a) => (commands::simulate, a),
        Command::Verify(a) => (commands::verify, a),
    };

    let file = match &args.config {
        Some(path) => match PartialConfig::from_file(path) {
            Ok(c) => c,
            Err(e) => return usage_error(e),
        },
        None => PartialConfig::default(),
    };
    let config = match JobConfig::resolve(file.overlay(args.flags())) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };

    let format = config.format;
    let outcome = run(config);
    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => return usage_error(format!("cannot create {}: {e}", path.display())),
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let written = match format {
        OutputFormat::Json => outcome
            .report
            .write_json(&mut sink)
            .map_err(|e| e.to_string()),
        OutputFormat::Csv => outcome
            .report
            .write_csv(&mut sink)
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written.and_then(|_| sink.flush().map_err(|e| e.to_string())) {
        eprintln!("error: failed to write report: {e}");
        return ExitCode::from(commands::EXIT_DOMAIN);
    }
    for note in &outcome.report.notes {
        eprintln!("{note}");
    }
    ExitCode::from(outcome.exit_code)
}
