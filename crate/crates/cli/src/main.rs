use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vnsolve_cli::config::load_config;
use vnsolve_cli::pipeline;

/// Graph corpus, rendering, and image-classifier experiment pipeline.
#[derive(Parser)]
#[command(name = "vnsolve", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Experiment config file.
    #[arg(long)]
    config: PathBuf,
    /// Override a config entry, e.g. --set train.max_epochs=20. Repeatable.
    #[arg(long = "set", value_name = "section.key=value", value_parser = parse_override)]
    set: Vec<(String, String)>,
}

#[derive(Subcommand)]
enum Command {
    /// Build or ingest the corpus manifest.
    Gen(Common),
    /// Label unlabeled manifest records with the exact oracle.
    Label(Common),
    /// Render every split member to PNG files.
    Render(Common),
    /// Train one model per experiment seed.
    Train(Common),
    /// Evaluate checkpoints (and the prior baseline) on the test split.
    Eval {
        #[command(flatten)]
        common: Common,
        /// Run a parameter sweep section instead of a single evaluation.
        #[arg(long, value_name = "name")]
        sweep: Option<String>,
    },
    /// Merge finished runs into one table.
    Report {
        #[command(flatten)]
        common: Common,
        /// Additional run directories (or summary.csv files) to include.
        #[arg(long, value_delimiter = ',', value_name = "dir,dir,...")]
        inputs: Vec<PathBuf>,
    },
}

fn parse_override(s: &str) -> Result<(String, String), String> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(format!("expected section.key=value, got {s:?}")),
    }
}

fn configure_workers() {
    if let Ok(value) = std::env::var("VNSOLVE_WORKERS") {
        match value.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("ignoring invalid VNSOLVE_WORKERS={value:?}"),
        }
    }
}

fn run() -> anyhow::Result<()> {
    let cli = Cli::parse();
    configure_workers();
    match cli.command {
        Command::Gen(c) => pipeline::cmd_gen(&load_config(&c.config, &c.set)?),
        Command::Label(c) => pipeline::cmd_label(&load_config(&c.config, &c.set)?),
        Command::Render(c) => pipeline::cmd_render(&load_config(&c.config, &c.set)?),
        Command::Train(c) => pipeline::cmd_train(&load_config(&c.config, &c.set)?),
        Command::Eval { common, sweep } => match sweep {
            Some(name) => pipeline::cmd_eval_sweep(&common.config, &common.set, &name),
            None => pipeline::cmd_eval(&load_config(&common.config, &common.set)?),
        },
        Command::Report { common, inputs } => {
            pipeline::cmd_report(&load_config(&common.config, &common.set)?, &inputs)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
