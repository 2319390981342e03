//! `sslda`: fit, apply and benchmark sparse discriminant rules.

mod commands;
mod data;
mod failure;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sslda::Flavor;

use commands::{HoldoutArgs, Tuning};
use data::CsvOptions;

#[derive(Parser)]
#[command(
    name = "sslda",
    version,
    about = "Robust sparse linear discriminant analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct CsvArgs {
    /// The CSV has no header row.
    #[arg(long)]
    no_header: bool,
    /// Take class labels from the last column instead of a `label` column.
    #[arg(long)]
    label_last: bool,
}

impl From<CsvArgs> for CsvOptions {
    fn from(a: CsvArgs) -> Self {
        CsvOptions {
            no_header: a.no_header,
            label_last: a.label_last,
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LambdaChoice {
    /// Fixed tuning parameter.
    #[arg(long)]
    lambda: Option<f64>,
    /// Choose lambda by stratified cross-validation.
    #[arg(long)]
    cv: bool,
}

fn parse_flavor(s: &str) -> Result<Flavor, String> {
    s.parse().map_err(|e: sslda::Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo experiment; writes results.csv and results.json.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Overrides the spec's base_seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Fit a rule on a labelled CSV and save it as JSON.
    Fit {
        data: PathBuf,
        #[arg(long, default_value = "sslda", value_parser = parse_flavor)]
        flavor: Flavor,
        #[command(flatten)]
        lambda: LambdaChoice,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, default_value_t = 20)]
        grid_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Ridge added to the scatter estimate; default sqrt(ln p / n).
        #[arg(long)]
        ridge: Option<f64>,
        #[arg(long, default_value = "model.json")]
        out: PathBuf,
        #[command(flatten)]
        csv: CsvArgs,
    },
    /// Classify the rows of a CSV with a saved model.
    Predict {
        model: PathBuf,
        data: PathBuf,
        #[arg(long, default_value = "predictions.csv")]
        out: PathBuf,
        /// Also write a JSON run report with the metrics.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        csv: CsvArgs,
    },
    /// Repeat an experiment over a list of sparsity levels; writes curve.csv.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        /// Comma-separated s0 values, e.g. 5,10,20.
        #[arg(long, allow_hyphen_values = true)]
        s0: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Repeated stratified 50/50 train/test splits of a labelled CSV.
    Holdout {
        data: PathBuf,
        #[arg(long, default_value = "sslda", value_parser = parse_flavor)]
        flavor: Flavor,
        #[arg(long, default_value_t = 100)]
        splits: usize,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, default_value_t = 20)]
        grid_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[command(flatten)]
        csv: CsvArgs,
    },
    /// Print the tool version.
    Version,
}

fn run(command: Command) -> Result<(), failure::Failure> {
    match command {
        Command::Simulate { spec, out, seed } => commands::simulate(&spec, &out, seed),
        Command::Fit {
            data,
            flavor,
            lambda,
            folds,
            grid_size,
            seed,
            ridge,
            out,
            csv,
        } => {
            let tuning = match lambda.lambda {
                Some(l) => Tuning::Fixed(l),
                None => Tuning::CrossValidated {
                    folds,
                    grid_size,
                    seed,
                },
            };
            commands::fit_command(&data, flavor, tuning, ridge, &out, csv.into())
        }
        Command::Predict {
            model,
            data,
            out,
            report,
            csv,
        } => commands::predict_command(&model, &data, &out, report.as_ref(), csv.into()),
        Command::Sweep {
            spec,
            s0,
            out,
            seed,
        } => commands::sweep(&spec, &s0, &out, seed),
        Command::Holdout {
            data,
            flavor,
            splits,
            folds,
            grid_size,
            seed,
            out,
            csv,
        } => {
            let args = HoldoutArgs {
                flavor,
                splits,
                folds,
                grid_size,
                seed,
            };
            commands::holdout(&data, &args, &out, csv.into())
        }
        Command::Version => {
            println!("sslda {}", env!("CARGO_PKG_VERSION"));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("sslda: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
