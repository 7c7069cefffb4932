//! Experiment configuration with per-experiment defaults.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::theory;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentName {
    LimitLaw,
    ScalingCollapse,
    PhaseDiagram,
    RelativeStability,
    Survival,
    TailRecovery,
}

impl fmt::Display for ExperimentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentName::LimitLaw => "limit_law",
            ExperimentName::ScalingCollapse => "scaling_collapse",
            ExperimentName::PhaseDiagram => "phase_diagram",
            ExperimentName::RelativeStability => "relative_stability",
            ExperimentName::Survival => "survival",
            ExperimentName::TailRecovery => "tail_recovery",
        })
    }
}

/// Time discretization.
///
/// Geometric grids cover a factor `2^span_log2` below their top time with
/// `steps` points; uniform grids (scaling collapse) use `steps` equal cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub steps: usize,
    pub horizon: f64,
    pub span_log2: f64,
}

/// Parameter sweeps; each experiment reads only the lists it needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub lambda_values: Vec<f64>,
    pub alpha_grid: Vec<f64>,
    pub kappa_grid: Vec<f64>,
    pub epsilon_grid: Vec<f64>,
    pub r_values: Vec<f64>,
    pub survival_points: usize,
}

/// A fully resolved experiment configuration. The seed is mandatory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentName,
    pub seed: u64,
    pub n_reps: usize,
    pub output_path: String,
    pub alpha: f64,
    pub beta: f64,
    pub scale: f64,
    pub kappa: f64,
    pub r: f64,
    pub drift_b: f64,
    pub balance_c: f64,
    pub cutoff: f64,
    pub hill_k: usize,
    pub censor_cap: f64,
    pub grid: GridConfig,
    pub sweep: SweepConfig,
}

/// Input form: everything except `experiment` and `seed` may be omitted.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub experiment: Option<ExperimentName>,
    pub seed: Option<u64>,
    pub n_reps: Option<usize>,
    pub output_path: Option<String>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub scale: Option<f64>,
    pub kappa: Option<f64>,
    pub r: Option<f64>,
    pub drift_b: Option<f64>,
    pub balance_c: Option<f64>,
    pub cutoff: Option<f64>,
    pub hill_k: Option<usize>,
    pub censor_cap: Option<f64>,
    pub grid: Option<PartialGrid>,
    pub sweep: Option<PartialSweep>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialGrid {
    pub steps: Option<usize>,
    pub horizon: Option<f64>,
    pub span_log2: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialSweep {
    pub lambda_values: Option<Vec<f64>>,
    pub alpha_grid: Option<Vec<f64>>,
    pub kappa_grid: Option<Vec<f64>>,
    pub epsilon_grid: Option<Vec<f64>>,
    pub r_values: Option<Vec<f64>>,
    pub survival_points: Option<usize>,
}

fn default_grid(name: ExperimentName) -> GridConfig {
    let (steps, horizon, span_log2) = match name {
        ExperimentName::ScalingCollapse => (16, 1.0, 14.0),
        ExperimentName::LimitLaw => (1 << 14, 100.0, 14.0),
        ExperimentName::PhaseDiagram => (1024, 1.0, 14.0),
        ExperimentName::RelativeStability => (1 << 14, 0.1, 17.0),
        ExperimentName::Survival => (1 << 12, 50.0, 14.0),
        ExperimentName::TailRecovery => (1, 1.0, 0.0),
    };
    GridConfig { steps, horizon, span_log2 }
}

fn default_sweep() -> SweepConfig {
    SweepConfig {
        lambda_values: vec![1.0 / 16.0, 1.0, 16.0],
        alpha_grid: vec![0.6, 1.2, 1.8],
        kappa_grid: vec![0.3, 0.6, 1.2],
        epsilon_grid: (0..8).map(|i| 2f64.powi(-2 * i)).collect(),
        r_values: vec![1e-2, 1e-3, 1e-4],
        survival_points: 32,
    }
}

impl PartialConfig {
    /// Fills defaults and validates.
    pub fn resolve(self) -> Result<ExperimentConfig> {
        let experiment = self.experiment.ok_or_else(|| Error::Config("missing field `experiment`".into()))?;
        let seed = self
            .seed
            .ok_or_else(|| Error::Config("missing field `seed` (runs must be explicitly seeded)".into()))?;
        let grid_default = default_grid(experiment);
        let grid = self.grid.unwrap_or_default();
        let sweep_default = default_sweep();
        let sweep = self.sweep.unwrap_or_default();
        let (alpha_default, drift_default) = match experiment {
            ExperimentName::RelativeStability => (0.6, 1.0),
            _ => (1.5, 0.0),
        };
        let n_reps_default = match experiment {
            ExperimentName::TailRecovery => 100_000,
            _ => 1000,
        };
        let cfg = ExperimentConfig {
            experiment,
            seed,
            n_reps: self.n_reps.unwrap_or(n_reps_default),
            output_path: self.output_path.unwrap_or_else(|| experiment.to_string()),
            alpha: self.alpha.unwrap_or(alpha_default),
            beta: self.beta.unwrap_or(0.0),
            scale: self.scale.unwrap_or(1.0),
            kappa: self.kappa.unwrap_or(0.0),
            r: self.r.unwrap_or(1.0),
            drift_b: self.drift_b.unwrap_or(drift_default),
            balance_c: self.balance_c.unwrap_or(0.5),
            cutoff: self.cutoff.unwrap_or(1.0),
            hill_k: self.hill_k.unwrap_or(1000),
            censor_cap: self.censor_cap.unwrap_or(0.01),
            grid: GridConfig {
                steps: grid.steps.unwrap_or(grid_default.steps),
                horizon: grid.horizon.unwrap_or(grid_default.horizon),
                span_log2: grid.span_log2.unwrap_or(grid_default.span_log2),
            },
            sweep: SweepConfig {
                lambda_values: sweep.lambda_values.unwrap_or(sweep_default.lambda_values),
                alpha_grid: sweep.alpha_grid.unwrap_or(sweep_default.alpha_grid),
                kappa_grid: sweep.kappa_grid.unwrap_or(sweep_default.kappa_grid),
                epsilon_grid: sweep.epsilon_grid.unwrap_or(sweep_default.epsilon_grid),
                r_values: sweep.r_values.unwrap_or(sweep_default.r_values),
                survival_points: sweep.survival_points.unwrap_or(sweep_default.survival_points),
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn field(name: &str, ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(param(format!("field `{name}`: {what}")))
    }
}

fn all_positive(v: &[f64]) -> bool {
    !v.is_empty() && v.iter().all(|x| *x > 0.0 && x.is_finite())
}

impl ExperimentConfig {
    /// A config with every default filled for `experiment`.
    pub fn defaults(experiment: ExperimentName, seed: u64) -> Result<Self> {
        PartialConfig { experiment: Some(experiment), seed: Some(seed), ..Default::default() }.resolve()
    }

    /// Checks the preconditions of the operations this experiment feeds.
    pub fn validate(&self) -> Result<()> {
        use ExperimentName::*;
        field("seed", self.seed <= i64::MAX as u64, "must fit a signed 64-bit integer")?;
        field("n_reps", self.n_reps >= 1, "must be at least 1")?;
        field("output_path", is_safe_stem(&self.output_path), "must be a plain file stem")?;
        field("beta", (-1.0..=1.0).contains(&self.beta), "must lie in [-1, 1]")?;
        field("scale", self.scale >= 0.0 && self.scale.is_finite(), "must be nonnegative")?;
        field("kappa", self.kappa >= 0.0 && self.kappa.is_finite(), "must be nonnegative")?;
        field("r", self.r > 0.0 && self.r.is_finite(), "must be positive")?;
        field("censor_cap", (0.0..=1.0).contains(&self.censor_cap), "must lie in [0, 1]")?;
        field("grid.horizon", self.grid.horizon > 0.0 && self.grid.horizon.is_finite(), "must be positive")?;
        field("grid.span_log2", self.grid.span_log2 >= 0.0 && self.grid.span_log2 <= 60.0, "must lie in [0, 60]")?;
        let alpha_ok = self.alpha > 0.0 && self.alpha < 2.0;
        match self.experiment {
            TailRecovery => {
                field("alpha", alpha_ok, "must lie in (0, 2)")?;
                field("balance_c", (0.0..=1.0).contains(&self.balance_c), "must lie in [0, 1]")?;
                field("cutoff", self.cutoff > 0.0, "must be positive")?;
                field("hill_k", self.hill_k >= 1 && self.hill_k < self.n_reps, "must satisfy 0 < hill_k < n_reps")?;
            }
            ScalingCollapse => {
                field("alpha", self.alpha > 0.0 && self.alpha <= 2.0, "must lie in (0, 2]")?;
                field("scale", self.scale > 0.0, "must be positive")?;
                field("grid.steps", self.grid.steps >= 1, "must be at least 1")?;
                field("sweep.lambda_values", all_positive(&self.sweep.lambda_values), "must be nonempty and positive")?;
            }
            LimitLaw => {
                field("alpha", alpha_ok, "must lie in (0, 2)")?;
                field("scale", self.scale > 0.0, "must be positive")?;
                field("grid.steps", self.grid.steps >= 2, "must be at least 2")?;
                field("grid.span_log2", self.grid.span_log2 > 0.0, "must be positive")?;
                theory::nu_exponent(self.alpha, self.kappa).map_err(|e| match e {
                    Error::Regime(msg) => Error::Regime(format!("limit_law {msg} (theory::nu_exponent gate)")),
                    other => other,
                })?;
            }
            PhaseDiagram => {
                field("grid.steps", self.grid.steps >= 2, "must be at least 2")?;
                field("scale", self.scale > 0.0, "must be positive")?;
                field(
                    "sweep.alpha_grid",
                    !self.sweep.alpha_grid.is_empty() && self.sweep.alpha_grid.iter().all(|a| *a > 0.0 && *a < 2.0),
                    "must be nonempty with entries in (0, 2)",
                )?;
                field(
                    "sweep.kappa_grid",
                    !self.sweep.kappa_grid.is_empty() && self.sweep.kappa_grid.iter().all(|k| *k >= 0.0 && k.is_finite()),
                    "must be nonempty and nonnegative",
                )?;
                field("sweep.epsilon_grid", all_positive(&self.sweep.epsilon_grid), "must be nonempty and positive")?;
            }
            RelativeStability => {
                field("alpha", self.alpha > 0.0 && self.alpha < 1.0, "must lie in (0, 1) (bounded variation)")?;
                field("drift_b", self.drift_b > 0.0 && self.drift_b.is_finite(), "must be positive")?;
                field("grid.steps", self.grid.steps >= 2, "must be at least 2")?;
                field("sweep.r_values", all_positive(&self.sweep.r_values), "must be nonempty and positive")?;
                if self.kappa >= 1.0 {
                    return Err(Error::Regime(format!(
                        "relative_stability requires kappa < 1, got {} (theory::relative_stability_norm gate)",
                        self.kappa
                    )));
                }
            }
            Survival => {
                field("alpha", self.alpha > 0.0 && self.alpha <= 2.0, "must lie in (0, 2]")?;
                field("scale", self.scale > 0.0, "must be positive")?;
                field("grid.steps", self.grid.steps >= 2, "must be at least 2")?;
                field("sweep.survival_points", self.sweep.survival_points >= 2, "must be at least 2")?;
            }
        }
        Ok(())
    }
}

fn is_safe_stem(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
        && !s.starts_with('.')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_for_every_experiment() {
        use ExperimentName::*;
        for name in [LimitLaw, ScalingCollapse, PhaseDiagram, RelativeStability, Survival, TailRecovery] {
            let cfg = ExperimentConfig::defaults(name, 1).unwrap();
            assert_eq!(cfg.output_path, name.to_string());
        }
    }

    #[test]
    fn limit_law_gate_is_a_regime_error() {
        let p = PartialConfig {
            experiment: Some(ExperimentName::LimitLaw),
            seed: Some(7),
            alpha: Some(1.5),
            kappa: Some(1.0),
            ..Default::default()
        };
        match p.resolve() {
            Err(Error::Regime(msg)) => assert!(msg.contains("kappa < 1/alpha"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn seed_is_mandatory() {
        let p = PartialConfig { experiment: Some(ExperimentName::Survival), ..Default::default() };
        assert!(matches!(p.resolve(), Err(Error::Config(_))));
    }

    #[test]
    fn output_stem_is_sanitized() {
        let mut cfg = ExperimentConfig::defaults(ExperimentName::Survival, 1).unwrap();
        cfg.output_path = "../escape".into();
        assert!(cfg.validate().is_err());
    }
}
