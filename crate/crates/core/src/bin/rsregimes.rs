//! Command-line front end. Exit codes: 0 success, 2 configuration or usage
//! error, 3 numerical failure.

use clap::{Parser, Subcommand};
use rsregimes::report::{self, CheckTopic, RunOptions, SuiteConfig};
use rsregimes::sequential::SequentialRule;
use rsregimes::{Error, Result};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rsregimes", version, about = "Sample-size planning and PIS estimation for two-system selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Replications per row (overrides the config).
    #[arg(long)]
    reps: Option<u64>,
    /// Master seed (overrides the config).
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "RSREGIMES_WORKERS")]
    workers: Option<usize>,
    /// Write data here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample sizes for every (pair, regime, policy) in a suite.
    Plan {
        /// Suite file, or `table1` / `table2` for the built-in suites.
        #[arg(long)]
        config: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo PIS estimates for a suite.
    Estimate {
        #[arg(long)]
        config: String,
        /// Run a sequential rule on each pair instead of the fixed plans.
        #[arg(long, value_parser = ["clt", "md"])]
        sequential: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Re-run a published table and print it next to the published values.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Diagnostic grids for the approximations and rate-function identities.
    Check {
        #[arg(value_parser = ["lemma1", "lemma2", "edgeworth", "bahadur", "identities"])]
        topic: String,
    },
}

fn load_config(arg: &str) -> Result<SuiteConfig> {
    let path = Path::new(arg);
    match arg {
        "table1" | "table2" if !path.exists() => SuiteConfig::builtin(if arg == "table1" { 1 } else { 2 }),
        _ => SuiteConfig::load(path),
    }
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn options(config: &SuiteConfig, run: &RunArgs) -> Result<RunOptions> {
    let workers = match run.workers {
        Some(0) => return Err(Error::Config("--workers must be at least 1".into())),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let mut opts = RunOptions::from_config(config, workers);
    if let Some(r) = run.reps {
        if r == 0 {
            return Err(Error::Config("--reps must be at least 1".into()));
        }
        opts.replications = r;
    }
    if let Some(s) = run.seed {
        opts.master_seed = s;
    }
    Ok(opts)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Plan { config, out } => {
            let config = load_config(&config)?;
            let out = out.or_else(|| config.output_path.clone());
            let mut w = sink(out.as_deref())?;
            report::cmd_plan(&config, &mut w)?;
            w.flush()?;
        }
        Command::Estimate { config, sequential, run } => {
            let config = load_config(&config)?;
            let opts = options(&config, &run)?;
            let rule = sequential.map(|s| s.parse::<SequentialRule>()).transpose()?;
            let out = run.out.clone().or_else(|| config.output_path.clone());
            let mut w = sink(out.as_deref())?;
            let rows = report::cmd_estimate(&config, rule, opts, &mut w)?;
            w.flush()?;
            if let (Some(_), Some(path)) = (rule, out) {
                let mut stops = path.into_os_string();
                stops.push(".stops.csv");
                let file = BufWriter::new(File::create(&stops)?);
                report::write_stop_histogram(&rows, file)?;
                eprintln!("stopping-size histogram written to {}", PathBuf::from(stops).display());
            }
        }
        Command::Table { which, run } => {
            let config = SuiteConfig::builtin(which)?;
            let opts = options(&config, &run)?;
            let mut w = sink(run.out.as_deref())?;
            report::cmd_table(which, opts, &mut w)?;
            w.flush()?;
        }
        Command::Check { topic } => {
            let topic: CheckTopic = topic.parse()?;
            let mut w = sink(None)?;
            let passed = report::cmd_check(topic, &mut w)?;
            w.flush()?;
            return Ok(passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
