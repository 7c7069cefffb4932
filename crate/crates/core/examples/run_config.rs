//! Runs a config file the way `levy-passage run` does.
//!
//!     cargo run --release --example run_config -- configs/survival.toml out/

use std::path::PathBuf;

use levy_passage::cli::{self, RunOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let config = args.next().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/tail_recovery.toml")
    });
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("levy-passage-example"));
    let result = cli::load_config(&config).and_then(|cfg| cli::run_with_workers(&cfg, &out, 2, RunOptions { plots: true }));
    match result {
        Ok(manifest) => {
            for f in &manifest.files {
                println!("{}", f.display());
            }
            println!("{}", serde_json::to_string_pretty(&manifest.summary).unwrap());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
