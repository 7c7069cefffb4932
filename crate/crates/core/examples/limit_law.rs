//! `T_κ(r) / r^{1/ν}` against `Y^{-1/ν}` with `Y = sup_{0<s<=1} |S_s|/s^κ`
//! and `ν = 1/α - κ`.

use levy_passage::mc::config::{ExperimentName, PartialConfig, PartialGrid};
use levy_passage::mc::run_limit_law;

fn main() -> levy_passage::Result<()> {
    for (kappa, r) in [(0.0, 1.0), (0.3, 1.0)] {
        let cfg = PartialConfig {
            experiment: Some(ExperimentName::LimitLaw),
            seed: Some(7),
            n_reps: Some(4000),
            alpha: Some(1.5),
            kappa: Some(kappa),
            r: Some(r),
            grid: Some(PartialGrid { steps: Some(4096), horizon: Some(1e4), span_log2: Some(14.0) }),
            ..Default::default()
        }
        .resolve()?;
        let rep = run_limit_law(&cfg)?;
        println!(
            "kappa={kappa} r={r} nu={:.4}: ks={:.4} (5% critical {:.4}), censored={}, Y max at grid floor: {:.4}",
            rep.nu, rep.ks_statistic, rep.critical_5pct, rep.censored, rep.y_argmax_at_floor
        );
    }
    Ok(())
}
