use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use levy_passage::cli::{self, RunOptions};
use levy_passage::theory::classify_regime;

#[derive(Parser)]
#[command(name = "levy-passage", about = "Passage times of stable processes out of |x| <= r t^kappa")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment from a TOML config.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (default: available cores).
        #[arg(long)]
        workers: Option<usize>,
        /// Also write SVG charts of the result table.
        #[arg(long)]
        plots: bool,
    },
    /// Print the regime report for (alpha, kappa).
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        kappa: f64,
    },
    Version,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = match args.command {
        Command::Run { config, out, workers, plots } => cli::load_config(&config).and_then(|cfg| {
            let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let manifest = cli::run_with_workers(&cfg, &out, workers, RunOptions { plots })?;
            for f in &manifest.files {
                println!("{}", f.display());
            }
            Ok(())
        }),
        Command::Classify { alpha, kappa } => classify_regime(alpha, kappa).map(|r| println!("{r}")),
        Command::Version => {
            println!("levy-passage {}", cli::VERSION);
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
