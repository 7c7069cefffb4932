//! Early-exit fractions `P(T_κ(1) <= ε)` as ε shrinks, across `κα`.

use levy_passage::mc::config::{ExperimentName, PartialConfig, PartialGrid};
use levy_passage::mc::run_phase_diagram;

fn main() -> levy_passage::Result<()> {
    let cfg = PartialConfig {
        experiment: Some(ExperimentName::PhaseDiagram),
        seed: Some(7),
        n_reps: Some(1000),
        grid: Some(PartialGrid { steps: Some(1024), ..Default::default() }),
        ..Default::default()
    }
    .resolve()?;
    let rep = run_phase_diagram(&cfg)?;
    println!("{:>5} {:>5} {:>6} {}", "alpha", "kappa", "k*a", "fraction by eps = 1, 1/4, ..., 2^-14");
    for &alpha in &cfg.sweep.alpha_grid {
        for &kappa in &cfg.sweep.kappa_grid {
            let fr: Vec<String> = rep.cell(alpha, kappa).iter().map(|r| format!("{:.3}", r.fraction)).collect();
            println!("{alpha:>5} {kappa:>5} {:>6.2} {}", alpha * kappa, fr.join(" "));
        }
    }
    Ok(())
}
