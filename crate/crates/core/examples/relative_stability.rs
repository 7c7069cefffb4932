//! Drift dominates small times: `T_0(r) / (r/b) -> 1` for `b t + S_t`, α < 1.

use levy_passage::mc::config::{ExperimentName, PartialConfig};
use levy_passage::mc::run_relative_stability;

fn main() -> levy_passage::Result<()> {
    let cfg = PartialConfig {
        experiment: Some(ExperimentName::RelativeStability),
        seed: Some(7),
        n_reps: Some(1000),
        ..Default::default()
    }
    .resolve()?;
    for row in run_relative_stability(&cfg)?.rows {
        println!(
            "r={:.0e}: median T/C={:.4} IQR={:.4} IQR/median={:.4} censored={}",
            row.r, row.median, row.iqr, row.iqr_over_median, row.censored
        );
    }
    Ok(())
}
