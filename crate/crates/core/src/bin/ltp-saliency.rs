use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::error;

use ltp_saliency::batch::{self, RunConfig, RunSummary, EXIT_USAGE};
use ltp_saliency::{ColorSpace, NeighborhoodSpec, SaliencyConfig};

#[derive(Parser)]
#[command(version, about = "Color micro-texture salient object detection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect saliency for every image in a folder, optionally scoring it.
    Run(RunArgs),
    /// Score existing 8-bit saliency maps against ground truth.
    Eval(EvalArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    gt: Option<PathBuf>,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, default_value_t = 100)]
    superpixels: usize,
    /// Comma separated subset of rgb,hsl,luv,cmy.
    #[arg(long, default_value = "rgb,hsl,luv,cmy")]
    spaces: String,
    #[arg(long, default_value_t = 5)]
    neighbors: usize,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, default_value_t = 75)]
    bins: usize,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    emit_space_maps: bool,
    #[arg(long)]
    emit_superpixels: bool,
    #[arg(long)]
    emit_features: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Folder of saliency maps.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    gt: PathBuf,
    /// Folder receiving the report CSVs.
    #[arg(long)]
    output: PathBuf,
    #[arg(long)]
    workers: Option<usize>,
}

fn run_config(args: RunArgs) -> ltp_saliency::Result<RunConfig> {
    Ok(RunConfig {
        input_dir: args.input,
        gt_dir: args.gt,
        output_dir: args.output,
        detector: SaliencyConfig {
            superpixels: args.superpixels,
            spaces: ColorSpace::parse_list(&args.spaces)?,
            neighborhood: NeighborhoodSpec::new(args.neighbors, args.radius)?,
            bins: args.bins,
        },
        emit_space_maps: args.emit_space_maps,
        emit_superpixels: args.emit_superpixels,
        emit_features: args.emit_features,
        workers: args.workers.unwrap_or_else(batch::default_workers),
    })
}

fn summarize(summary: &RunSummary) -> ExitCode {
    if let Some(r) = &summary.report {
        println!(
            "images={} mean_mae={:.4} mean_best_f={:.4}",
            r.images.len(),
            r.mean_mae,
            r.mean_best_f
        );
    }
    if !summary.failures.is_empty() {
        eprintln!("{} item(s) skipped:", summary.failures.len());
        for f in &summary.failures {
            eprintln!("  {}: {}", f.item, f.reason);
        }
    }
    ExitCode::from(summary.exit_code())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let result = match cli.command {
        Command::Run(args) => run_config(args).and_then(|cfg| batch::run(&cfg)),
        Command::Eval(args) => batch::eval_only(
            &args.input,
            &args.gt,
            &args.output,
            args.workers.unwrap_or_else(batch::default_workers),
        ),
    };

    match result {
        Ok(summary) => summarize(&summary),
        Err(e) => {
            error!("{e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
