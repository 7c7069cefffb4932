//! Empirical survival `P(T > t)`; the passage time is finite almost surely,
//! so the curve falls to zero. A short horizon is flagged instead.

use levy_passage::mc::config::{ExperimentName, PartialConfig, PartialGrid};
use levy_passage::mc::run_survival;

fn main() -> levy_passage::Result<()> {
    for (kappa, horizon) in [(0.0, 50.0), (0.5, 1000.0), (0.5, 1e-4)] {
        let cfg = PartialConfig {
            experiment: Some(ExperimentName::Survival),
            seed: Some(7),
            n_reps: Some(2000),
            kappa: Some(kappa),
            grid: Some(PartialGrid { steps: Some(2048), horizon: Some(horizon), span_log2: Some(20.0) }),
            ..Default::default()
        }
        .resolve()?;
        let rep = run_survival(&cfg)?;
        let every: Vec<String> = rep.curve.iter().step_by(8).map(|p| format!("{:.3}@{:.2e}", p.survival, p.t)).collect();
        println!(
            "kappa={kappa} H={horizon}: terminal={:.4} high_censoring={} [{}]",
            rep.terminal,
            rep.high_censoring,
            every.join(" ")
        );
    }
    Ok(())
}
