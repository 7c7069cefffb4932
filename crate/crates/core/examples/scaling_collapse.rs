//! Self-similarity: `λ^{-1/α} X_λ` has the law of `X_1`.

use levy_passage::mc::config::{ExperimentName, PartialConfig, PartialSweep};
use levy_passage::mc::run_scaling_collapse;

fn main() -> levy_passage::Result<()> {
    for alpha in [0.7, 1.2, 1.7] {
        let cfg = PartialConfig {
            experiment: Some(ExperimentName::ScalingCollapse),
            seed: Some(7),
            n_reps: Some(50_000),
            alpha: Some(alpha),
            sweep: Some(PartialSweep { lambda_values: Some(vec![1.0 / 16.0, 1.0, 16.0]), ..Default::default() }),
            ..Default::default()
        }
        .resolve()?;
        for row in run_scaling_collapse(&cfg)?.rows {
            println!("alpha={alpha} lambda={:<7} ks={:.4} (5% critical {:.4})", row.lambda, row.ks, row.critical_5pct);
        }
    }
    Ok(())
}
