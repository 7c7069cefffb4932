//! Batch front end: config parsing, experiment runs and output files.
//!
//! A run writes, under the output directory and with `output_path` as stem:
//! `<stem>_table.csv`, `<stem>_report.jsonl` (one JSON object per table
//! row), `<stem>_exits*.csv`, `<stem>_config.toml` (the canonical config
//! echo), optional `<stem>_*.svg`, and `<stem>_manifest.json`.

mod output;
mod plot;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mc::config::{ExperimentConfig, PartialConfig};
use crate::mc::experiments::{run_experiment, CensoringSummary};

pub use output::{exit_records_csv, format_float, parse_exit_records, table_csv, table_jsonl, ExitRow};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Parses a TOML experiment config, fills defaults and validates it.
/// Unknown keys are rejected.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let partial: PartialConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string().trim_end().to_string()))?;
    partial.resolve()
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}

/// Canonical TOML form of a resolved config. Parsing it gives the same config.
pub fn canonical_config(cfg: &ExperimentConfig) -> String {
    toml::to_string(cfg).expect("config serializes")
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub plots: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub version: String,
    pub experiment: String,
    pub seed: u64,
    pub config: String,
    pub started_unix: f64,
    pub finished_unix: f64,
    pub files: Vec<PathBuf>,
    pub censoring: Vec<CensoringSummary>,
    pub summary: serde_json::Value,
}

fn unix_now() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0.0, |d| d.as_secs_f64())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Runs the experiment and writes its outputs under `out_dir`. Parallelism
/// comes from the caller's rayon pool.
pub fn run(cfg: &ExperimentConfig, out_dir: &Path, opts: RunOptions) -> Result<RunManifest> {
    let started_unix = unix_now();
    cfg.validate()?;
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let output = run_experiment(cfg)?;
    let stem = &cfg.output_path;
    let mut files = Vec::new();
    let mut emit = |name: String, contents: String| -> Result<PathBuf> {
        let path = out_dir.join(name);
        write_file(&path, &contents)?;
        files.push(path.clone());
        Ok(path)
    };

    emit(format!("{stem}_config.toml"), canonical_config(cfg))?;
    let table_path = emit(format!("{stem}_table.csv"), table_csv(&output.table)?)?;
    emit(format!("{stem}_report.jsonl"), table_jsonl(&output.table))?;
    let single = output.exit_sets.len() == 1;
    for set in &output.exit_sets {
        let name = if single { format!("{stem}_exits.csv") } else { format!("{stem}_exits_{}.csv", set.label) };
        emit(name, exit_records_csv(&set.records)?)?;
    }
    if opts.plots {
        let table_text = fs::read_to_string(&table_path).map_err(|e| Error::io(&table_path, e))?;
        if let Some(svg) = plot::plot_table(cfg.experiment, &table_text)? {
            emit(format!("{stem}_plot.svg"), svg)?;
        }
    }

    let manifest_path = out_dir.join(format!("{stem}_manifest.json"));
    files.push(manifest_path.clone());
    let manifest = RunManifest {
        version: VERSION.to_string(),
        experiment: cfg.experiment.to_string(),
        seed: cfg.seed,
        config: canonical_config(cfg),
        started_unix,
        finished_unix: unix_now(),
        files,
        censoring: output.censoring(),
        summary: output.summary,
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_file(&manifest_path, &(json + "\n"))?;
    Ok(manifest)
}

/// Runs on a dedicated pool of `workers` threads.
pub fn run_with_workers(cfg: &ExperimentConfig, out_dir: &Path, workers: usize, opts: RunOptions) -> Result<RunManifest> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start {workers} workers: {e}")))?;
    pool.install(|| run(cfg, out_dir, opts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_echo_round_trips() {
        let cfg = parse_config("experiment = \"limit_law\"\nalpha = 1.5\nkappa = 0.0\nr = 1.0\nn_reps = 100\nseed = 7\n").unwrap();
        let echo = canonical_config(&cfg);
        assert_eq!(parse_config(&echo).unwrap(), cfg);
        assert_eq!(canonical_config(&parse_config(&echo).unwrap()), echo);
    }

    #[test]
    fn malformed_documents_report_the_field() {
        let err = parse_config("experiment = \"survival\"\nseed = 1\nalpah = 1.5\n").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("alpah"), "{err}");
        let err = parse_config("experiment = \"survival\"\nseed = \"x\"\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
