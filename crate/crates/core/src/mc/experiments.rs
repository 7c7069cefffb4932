//! The experiments. Replications run in parallel on the current rayon pool;
//! each draws from its own stream and results are collected in replication
//! order, so outputs do not depend on the number of workers.

use rayon::prelude::*;
use serde::Serialize;

use crate::distributions::{PowerLawJumpParams, StableParams};
use crate::error::{param, Error, Result};
use crate::mc::config::{ExperimentConfig, ExperimentName};
use crate::mc::stats::{hill_estimator, ks_critical_value, ks_distance, wilson_interval, EmpiricalDistribution, Z_95};
use crate::passage::{first_exit_points, normalized_abs, survival_curve, ExitRecord, Region, SurvivalPoint};
use crate::paths::{DriftParams, GridSimulator, Path, TimeGrid};
use crate::rng::{open01, replication_stream};
use crate::theory;

/// A table cell. Non-finite floats are kept as such.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

/// Column-ordered result table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<Cell>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// Exit records of one simulated sample.
#[derive(Debug, Clone, PartialEq)]
pub struct ExitSet {
    pub label: String,
    pub records: Vec<ExitRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensoringSummary {
    pub label: String,
    pub censored: usize,
    pub total: usize,
    pub fraction: f64,
}

impl ExitSet {
    pub fn censoring(&self) -> CensoringSummary {
        let censored = self.records.iter().filter(|r| r.censored).count();
        let total = self.records.len();
        CensoringSummary { label: self.label.clone(), censored, total, fraction: censored as f64 / total as f64 }
    }
}

/// Everything an experiment hands to the writers.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub experiment: ExperimentName,
    pub table: Table,
    pub exit_sets: Vec<ExitSet>,
    /// Experiment-level diagnostics that are not table rows.
    pub summary: serde_json::Value,
}

impl ExperimentOutput {
    pub fn censoring(&self) -> Vec<CensoringSummary> {
        self.exit_sets.iter().map(ExitSet::censoring).collect()
    }
}

/// Runs the experiment named in `cfg`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    match cfg.experiment {
        ExperimentName::ScalingCollapse => run_scaling_collapse(cfg).map(ScalingCollapseReport::into_output),
        ExperimentName::LimitLaw => run_limit_law(cfg).map(LimitLawReport::into_output),
        ExperimentName::PhaseDiagram => run_phase_diagram(cfg).map(PhaseDiagramReport::into_output),
        ExperimentName::RelativeStability => run_relative_stability(cfg).map(RelativeStabilityReport::into_output),
        ExperimentName::Survival => run_survival(cfg).map(SurvivalReport::into_output),
        ExperimentName::TailRecovery => run_tail_recovery(cfg).map(TailRecoveryReport::into_output),
    }
}

fn first_error<T>(results: Vec<Result<T>>) -> Result<Vec<T>> {
    results.into_iter().collect()
}

/// `n` grid passage times out of `region`, replication `i` on stream
/// `(seed, family, i)`. Censored at the last grid time.
pub fn passage_time_sample(
    sim: &GridSimulator,
    region: &Region,
    n: usize,
    seed: u64,
    family: u64,
) -> Result<Vec<ExitRecord>> {
    let horizon = *sim.times().last().expect("grid has at least two points");
    let results: Vec<Result<ExitRecord>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = replication_stream(seed, family, i as u64);
            let rec = first_exit_points(sim.skeleton(&mut rng), region, horizon)?;
            if !rec.exit_position.is_finite() {
                return Err(Error::Numerical { replication: i as u64, reason: "non-finite path value".into() });
            }
            Ok(rec)
        })
        .collect();
    first_error(results)
}

/// Supremum of `|X_t| / t^κ` over the positive grid times, with the index
/// (among positive times) where it is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupSample {
    pub sup: f64,
    pub argmax: usize,
}

pub fn sup_sample(sim: &GridSimulator, kappa: f64, n: usize, seed: u64, family: u64) -> Result<Vec<SupSample>> {
    let results: Vec<Result<SupSample>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = replication_stream(seed, family, i as u64);
            let mut best = SupSample { sup: 0.0, argmax: 0 };
            for (j, (t, x)) in sim.skeleton(&mut rng).enumerate() {
                let v = normalized_abs(x, t, kappa);
                if !v.is_finite() {
                    return Err(Error::Numerical { replication: i as u64, reason: "non-finite path value".into() });
                }
                if v > best.sup {
                    best = SupSample { sup: v, argmax: j };
                }
            }
            Ok(best)
        })
        .collect();
    first_error(results)
}

fn endpoint_sample(sim: &GridSimulator, n: usize, seed: u64, family: u64) -> Vec<f64> {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = replication_stream(seed, family, i as u64);
            sim.skeleton(&mut rng).last().map_or(0.0, |(_, x)| x)
        })
        .collect()
}

fn stable_params(cfg: &ExperimentConfig) -> Result<StableParams> {
    StableParams::new(cfg.alpha, cfg.beta, cfg.scale)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingRow {
    pub lambda: f64,
    pub ks: f64,
    pub critical_5pct: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingCollapseReport {
    pub alpha: f64,
    pub rows: Vec<ScalingRow>,
}

impl ScalingCollapseReport {
    fn into_output(self) -> ExperimentOutput {
        let mut table = Table::new(&["lambda", "ks", "critical_5pct", "n"]);
        for r in &self.rows {
            table.push(vec![r.lambda.into(), r.ks.into(), r.critical_5pct.into(), r.n.into()]);
        }
        ExperimentOutput {
            experiment: ExperimentName::ScalingCollapse,
            table,
            exit_sets: Vec::new(),
            summary: serde_json::json!({ "alpha": self.alpha }),
        }
    }
}

/// For each `λ`: `N` draws of `λ^{-1/α} X_λ` against `N` independent draws
/// of `X_1`. Endpoints are sums of `grid.steps` increments.
pub fn run_scaling_collapse(cfg: &ExperimentConfig) -> Result<ScalingCollapseReport> {
    let params = stable_params(cfg)?;
    let n = cfg.n_reps;
    let unit = GridSimulator::stable(&params, &TimeGrid::uniform(1.0, cfg.grid.steps)?)?;
    let mut rows = Vec::new();
    for (k, &lambda) in cfg.sweep.lambda_values.iter().enumerate() {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(param(format!("lambda = {lambda} must be positive")));
        }
        let sim = GridSimulator::stable(&params, &TimeGrid::uniform(lambda, cfg.grid.steps)?)?;
        let norm = lambda.powf(-1.0 / cfg.alpha);
        let scaled: Vec<f64> = endpoint_sample(&sim, n, cfg.seed, 2 * k as u64).into_iter().map(|x| x * norm).collect();
        let base = endpoint_sample(&unit, n, cfg.seed, 2 * k as u64 + 1);
        let ks = ks_distance(&EmpiricalDistribution::new(scaled)?, &EmpiricalDistribution::new(base)?)?;
        rows.push(ScalingRow { lambda, ks, critical_5pct: ks_critical_value(n, n, 0.05), n });
    }
    Ok(ScalingCollapseReport { alpha: cfg.alpha, rows })
}

/// Limit-law comparison of `T_κ(r) / r^{1/ν}` with `Y^{-1/ν}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitLawReport {
    pub alpha: f64,
    pub kappa: f64,
    pub r: f64,
    pub nu: f64,
    /// KS distance after mapping each `Y^{-1/ν}` to the passage-time lattice.
    pub ks_statistic: f64,
    /// KS distance against the raw `Y^{-1/ν}` values.
    pub ks_unsnapped: f64,
    pub critical_5pct: f64,
    /// `n m / (n + m)`.
    pub n_effective: f64,
    pub samples_paths: usize,
    pub censored: usize,
    pub y_truncated: usize,
    /// Fraction of `Y` samples attained at the smallest grid time.
    pub y_argmax_at_floor: f64,
    pub grid_steps: usize,
    pub span_log2: f64,
    #[serde(skip)]
    pub exits: Vec<ExitRecord>,
}

impl LimitLawReport {
    fn into_output(self) -> ExperimentOutput {
        let mut table = Table::new(&[
            "alpha",
            "kappa",
            "r",
            "nu",
            "ks_statistic",
            "ks_unsnapped",
            "critical_5pct",
            "n_effective",
            "samples_paths",
            "censored",
            "y_truncated",
            "y_argmax_at_floor",
            "grid_steps",
            "span_log2",
        ]);
        table.push(vec![
            self.alpha.into(),
            self.kappa.into(),
            self.r.into(),
            self.nu.into(),
            self.ks_statistic.into(),
            self.ks_unsnapped.into(),
            self.critical_5pct.into(),
            self.n_effective.into(),
            self.samples_paths.into(),
            self.censored.into(),
            self.y_truncated.into(),
            self.y_argmax_at_floor.into(),
            self.grid_steps.into(),
            self.span_log2.into(),
        ]);
        let exits = ExitSet { label: "passage".into(), records: self.exits.clone() };
        ExperimentOutput {
            experiment: ExperimentName::LimitLaw,
            table,
            exit_sets: vec![exits],
            summary: serde_json::to_value(&self).unwrap_or_default(),
        }
    }
}

/// Geometric grid with ratio `q` whose lowest positive time is `t_min` and
/// whose top is the first lattice point at or above `t_top`.
fn lattice_grid(t_min: f64, q: f64, t_top: f64, min_points: usize) -> Result<TimeGrid> {
    let octaves = (t_top / t_min).ln() / (1.0 / q).ln();
    let cells = (octaves.ceil().max(0.0) as usize).max(min_points - 1);
    TimeGrid::geometric(t_min * q.powi(-(cells as i32)), q, cells + 1)
}

/// Passage times `T_κ(r)` on a geometric grid anchored at `a = r^{1/ν}`,
/// against independent `Y = sup_{0<s<=1} |S_s|/s^κ` on the unit grid with
/// the same ratio. By scaling `P(T <= a t) = P(Y^{-1/ν} < t)`, so the
/// normalized samples agree in law up to grid truncation.
pub fn run_limit_law(cfg: &ExperimentConfig) -> Result<LimitLawReport> {
    let nu = theory::nu_exponent(cfg.alpha, cfg.kappa)?;
    let params = stable_params(cfg)?;
    let region = Region::new(cfg.r, cfg.kappa)?;
    let steps = cfg.grid.steps;
    let q = 2f64.powf(-cfg.grid.span_log2 / (steps - 1) as f64);
    let a = cfg.r.powf(1.0 / nu);
    let t_min = a * 2f64.powf(-cfg.grid.span_log2);
    let t_grid = lattice_grid(t_min, q, cfg.grid.horizon.max(a), steps)?;
    let y_grid = TimeGrid::geometric(1.0, q, steps)?;

    let n = cfg.n_reps;
    let exits = passage_time_sample(&GridSimulator::stable(&params, &t_grid)?, &region, n, cfg.seed, 1)?;
    let censored = exits.iter().filter(|r| r.censored).count();
    if censored as f64 > cfg.censor_cap * n as f64 {
        return Err(Error::Censoring { censored, total: n, cap: cfg.censor_cap });
    }
    let sups = sup_sample(&GridSimulator::stable(&params, &y_grid)?, cfg.kappa, n, cfg.seed, 2)?;

    let lattice: Vec<f64> = t_grid.times()[1..].iter().map(|t| t / a).collect();
    let top = *lattice.last().expect("nonempty lattice");
    let t_norm: Vec<f64> = exits.iter().map(|r| if r.censored { f64::INFINITY } else { r.exit_time / a }).collect();
    let y_raw: Vec<f64> = sups.iter().map(|s| s.sup.powf(-1.0 / nu)).collect();
    // The grid passage time is the first lattice point t with t^ν Y > 1,
    // i.e. the first lattice point strictly above Y^{-1/ν}.
    let snapped: Vec<f64> = y_raw.iter().map(|&y| lattice.get(lattice.partition_point(|&t| t <= y)).copied().unwrap_or(f64::INFINITY)).collect();
    let truncated: Vec<f64> = y_raw.iter().map(|&y| if y > top { f64::INFINITY } else { y }).collect();
    let y_truncated = snapped.iter().filter(|y| y.is_infinite()).count();

    let t_dist = EmpiricalDistribution::new(t_norm)?;
    let ks_statistic = ks_distance(&t_dist, &EmpiricalDistribution::new(snapped)?)?;
    let ks_unsnapped = ks_distance(&t_dist, &EmpiricalDistribution::new(truncated)?)?;
    let floor = sups.iter().filter(|s| s.argmax == 0).count();
    Ok(LimitLawReport {
        alpha: cfg.alpha,
        kappa: cfg.kappa,
        r: cfg.r,
        nu,
        ks_statistic,
        ks_unsnapped,
        critical_5pct: ks_critical_value(n, n, 0.05),
        n_effective: (n * n) as f64 / (2 * n) as f64,
        samples_paths: 2 * n,
        censored,
        y_truncated,
        y_argmax_at_floor: floor as f64 / n as f64,
        grid_steps: steps,
        span_log2: cfg.grid.span_log2,
        exits,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseRow {
    pub alpha: f64,
    pub kappa: f64,
    pub kappa_alpha: f64,
    pub epsilon: f64,
    pub fraction: f64,
    pub half_width: f64,
    pub lower: f64,
    pub upper: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagramReport {
    pub r: f64,
    pub grid_start: f64,
    pub rows: Vec<PhaseRow>,
    pub exit_sets: Vec<ExitSet>,
}

impl PhaseDiagramReport {
    /// Rows of one `(α, κ)` cell in the order of the epsilon grid.
    pub fn cell(&self, alpha: f64, kappa: f64) -> Vec<PhaseRow> {
        self.rows.iter().filter(|r| r.alpha == alpha && r.kappa == kappa).copied().collect()
    }

    fn into_output(self) -> ExperimentOutput {
        let mut table = Table::new(&[
            "alpha",
            "kappa",
            "kappa_alpha",
            "epsilon",
            "fraction",
            "half_width",
            "lower",
            "upper",
            "n",
        ]);
        for r in &self.rows {
            table.push(vec![
                r.alpha.into(),
                r.kappa.into(),
                r.kappa_alpha.into(),
                r.epsilon.into(),
                r.fraction.into(),
                r.half_width.into(),
                r.lower.into(),
                r.upper.into(),
                r.n.into(),
            ]);
        }
        ExperimentOutput {
            experiment: ExperimentName::PhaseDiagram,
            table,
            exit_sets: self.exit_sets,
            summary: serde_json::json!({ "r": self.r, "grid_start": self.grid_start }),
        }
    }
}

/// Early-exit fractions `P(T_κ(r) <= ε)` over an `(α, κ)` sweep. Each cell
/// uses one geometric grid from `min ε · 2^{-span}` to `max ε`.
pub fn run_phase_diagram(cfg: &ExperimentConfig) -> Result<PhaseDiagramReport> {
    let eps = &cfg.sweep.epsilon_grid;
    let eps_max = eps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let eps_min = eps.iter().copied().fold(f64::INFINITY, f64::min);
    let grid_start = eps_min * 2f64.powf(-cfg.grid.span_log2);
    if !(grid_start < eps_max) {
        return Err(param("phase diagram needs a grid span below the largest epsilon"));
    }
    let grid = TimeGrid::geometric_span(grid_start, eps_max, cfg.grid.steps)?;
    let n = cfg.n_reps;
    let mut rows = Vec::new();
    let mut exit_sets = Vec::new();
    let mut family = 0u64;
    for &alpha in &cfg.sweep.alpha_grid {
        for &kappa in &cfg.sweep.kappa_grid {
            let params = StableParams::new(alpha, cfg.beta, cfg.scale)?;
            let region = Region::new(cfg.r, kappa)?;
            let records = passage_time_sample(&GridSimulator::stable(&params, &grid)?, &region, n, cfg.seed, family)?;
            family += 1;
            for &e in eps {
                let hits = records.iter().filter(|r| !r.censored && r.exit_time <= e).count();
                let w = wilson_interval(hits, n, Z_95);
                rows.push(PhaseRow {
                    alpha,
                    kappa,
                    kappa_alpha: kappa * alpha,
                    epsilon: e,
                    fraction: w.fraction,
                    half_width: w.half_width,
                    lower: w.lower,
                    upper: w.upper,
                    n,
                });
            }
            exit_sets.push(ExitSet { label: format!("a{alpha}_k{kappa}"), records });
        }
    }
    Ok(PhaseDiagramReport { r: cfg.r, grid_start, rows, exit_sets })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityRow {
    pub r: f64,
    pub norm: f64,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub iqr: f64,
    pub iqr_over_median: f64,
    pub censored: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelativeStabilityReport {
    pub rows: Vec<StabilityRow>,
    pub exit_sets: Vec<ExitSet>,
}

impl RelativeStabilityReport {
    fn into_output(self) -> ExperimentOutput {
        let mut table = Table::new(&["r", "norm", "median", "q1", "q3", "iqr", "iqr_over_median", "censored", "n"]);
        for r in &self.rows {
            table.push(vec![
                r.r.into(),
                r.norm.into(),
                r.median.into(),
                r.q1.into(),
                r.q3.into(),
                r.iqr.into(),
                r.iqr_over_median.into(),
                r.censored.into(),
                r.n.into(),
            ]);
        }
        ExperimentOutput {
            experiment: ExperimentName::RelativeStability,
            table,
            exit_sets: self.exit_sets,
            summary: serde_json::Value::Null,
        }
    }
}

/// `T_κ(r) / C(r)` for `b t + S_t`, with `C(r) = r^{1/(1-κ)} / b`.
pub fn run_relative_stability(cfg: &ExperimentConfig) -> Result<RelativeStabilityReport> {
    let drift = DriftParams::from_parts(cfg.drift_b, cfg.alpha, cfg.beta, cfg.scale)?;
    let grid = TimeGrid::geometric_span(cfg.grid.horizon * 2f64.powf(-cfg.grid.span_log2), cfg.grid.horizon, cfg.grid.steps)?;
    let sim = GridSimulator::drifted(&drift, &grid)?;
    let n = cfg.n_reps;
    let mut rows = Vec::new();
    let mut exit_sets = Vec::new();
    for (k, &r) in cfg.sweep.r_values.iter().enumerate() {
        let norm = theory::relative_stability_norm(r, cfg.kappa)? / cfg.drift_b;
        let region = Region::new(r, cfg.kappa)?;
        let records = passage_time_sample(&sim, &region, n, cfg.seed, k as u64)?;
        let ratios: Vec<f64> = records.iter().map(|rec| if rec.censored { f64::INFINITY } else { rec.exit_time / norm }).collect();
        let censored = records.iter().filter(|rec| rec.censored).count();
        let dist = EmpiricalDistribution::new(ratios)?;
        let (q1, median, q3) = (dist.quantile(0.25), dist.quantile(0.5), dist.quantile(0.75));
        rows.push(StabilityRow {
            r,
            norm,
            median,
            q1,
            q3,
            iqr: q3 - q1,
            iqr_over_median: (q3 - q1) / median,
            censored,
            n,
        });
        exit_sets.push(ExitSet { label: format!("r{r:e}"), records });
    }
    Ok(RelativeStabilityReport { rows, exit_sets })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurvivalReport {
    pub curve: Vec<SurvivalPoint>,
    pub terminal: f64,
    pub horizon: f64,
    pub monotone: bool,
    pub censored_fraction: f64,
    /// Set when at least half the replications were censored; the terminal
    /// value then says little about finite exit.
    pub high_censoring: bool,
    #[serde(skip)]
    pub exits: Vec<ExitRecord>,
}

impl SurvivalReport {
    fn into_output(self) -> ExperimentOutput {
        let mut table = Table::new(&["t", "survival", "at_risk", "flagged"]);
        for p in &self.curve {
            table.push(vec![p.t.into(), p.survival.into(), p.at_risk.into(), p.flagged.into()]);
        }
        let summary = serde_json::json!({
            "terminal": self.terminal,
            "horizon": self.horizon,
            "monotone": self.monotone,
            "censored_fraction": self.censored_fraction,
            "high_censoring": self.high_censoring,
        });
        ExperimentOutput {
            experiment: ExperimentName::Survival,
            table,
            exit_sets: vec![ExitSet { label: "passage".into(), records: self.exits }],
            summary,
        }
    }
}

/// `P̂(T_κ(r) > t)` on log-spaced points up to the horizon.
pub fn run_survival(cfg: &ExperimentConfig) -> Result<SurvivalReport> {
    let params = stable_params(cfg)?;
    let h = cfg.grid.horizon;
    let grid = TimeGrid::geometric_span(h * 2f64.powf(-cfg.grid.span_log2), h, cfg.grid.steps)?;
    let region = Region::new(cfg.r, cfg.kappa)?;
    let exits = passage_time_sample(&GridSimulator::stable(&params, &grid)?, &region, cfg.n_reps, cfg.seed, 0)?;
    let t_points = TimeGrid::geometric_span(grid.times()[1], h, cfg.sweep.survival_points)?;
    let curve = survival_curve(&exits, &t_points.times()[1..])?;
    let monotone = curve.windows(2).all(|w| w[1].flagged || w[0].flagged || w[1].survival <= w[0].survival);
    if !monotone {
        return Err(Error::Structural("empirical survival curve increased".into()));
    }
    let censored = exits.iter().filter(|r| r.censored).count();
    let censored_fraction = censored as f64 / exits.len() as f64;
    Ok(SurvivalReport {
        terminal: curve.last().map_or(f64::NAN, |p| p.survival),
        curve,
        horizon: h,
        monotone,
        censored_fraction,
        high_censoring: censored_fraction >= 0.5,
        exits,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailRecoveryReport {
    pub alpha: f64,
    pub n: usize,
    pub k: usize,
    pub estimate: f64,
    /// Asymptotic standard error `α / √k`.
    pub std_error: f64,
    pub abs_error: f64,
}

impl TailRecoveryReport {
    fn into_output(self) -> ExperimentOutput {
        let mut table = Table::new(&["alpha", "n", "k", "estimate", "std_error", "abs_error"]);
        table.push(vec![
            self.alpha.into(),
            self.n.into(),
            self.k.into(),
            self.estimate.into(),
            self.std_error.into(),
            self.abs_error.into(),
        ]);
        ExperimentOutput {
            experiment: ExperimentName::TailRecovery,
            table,
            exit_sets: Vec::new(),
            summary: serde_json::Value::Null,
        }
    }
}

/// Hill estimate of `α` from `|ξ|` over `N` Pareto jumps.
pub fn run_tail_recovery(cfg: &ExperimentConfig) -> Result<TailRecoveryReport> {
    let jumps = PowerLawJumpParams::new(cfg.alpha, cfg.balance_c, cfg.cutoff)?;
    let mags: Vec<f64> = (0..cfg.n_reps)
        .into_par_iter()
        .map(|i| {
            let mut rng = replication_stream(cfg.seed, 0, i as u64);
            let u_mag = open01(&mut rng);
            let u_sign = open01(&mut rng);
            jumps.jump(u_mag, u_sign).abs()
        })
        .collect();
    let estimate = hill_estimator(&EmpiricalDistribution::new(mags)?, cfg.hill_k)?;
    Ok(TailRecoveryReport {
        alpha: cfg.alpha,
        n: cfg.n_reps,
        k: cfg.hill_k,
        estimate,
        std_error: cfg.alpha / (cfg.hill_k as f64).sqrt(),
        abs_error: (estimate - cfg.alpha).abs(),
    })
}

/// Pathwise check of `{T > t} = {sup_{0<s<=t} |X_s|/s^κ <= r}` at every
/// positive grid time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SandwichReport {
    pub paths: usize,
    pub checks: usize,
    /// `T > t` while the running supremum already exceeds `r`.
    pub violations: usize,
    /// Running supremum still within `r` although `T <= t`.
    pub reverse_violations: usize,
}

pub fn sandwich_check(sim: &GridSimulator, region: &Region, n: usize, seed: u64) -> Result<SandwichReport> {
    let results: Vec<Result<(usize, usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = replication_stream(seed, 0, i as u64);
            let path: Path = sim.simulate(&mut rng)?;
            let rec = crate::passage::first_exit_grid(&path, region)?;
            let sups = crate::passage::running_sup(&path, region.kappa())?;
            let times = path.times().iter().filter(|&&t| t > 0.0);
            let (mut checks, mut fwd, mut rev) = (0, 0, 0);
            for (&t, &s) in times.zip(&sups) {
                let survived = rec.censored || rec.exit_time > t;
                checks += 1;
                if survived && s > region.r() {
                    fwd += 1;
                }
                if !survived && s <= region.r() {
                    rev += 1;
                }
            }
            Ok((checks, fwd, rev))
        })
        .collect();
    let counts = first_error(results)?;
    Ok(SandwichReport {
        paths: n,
        checks: counts.iter().map(|c| c.0).sum(),
        violations: counts.iter().map(|c| c.1).sum(),
        reverse_violations: counts.iter().map(|c| c.2).sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::config::PartialConfig;

    fn cfg(name: ExperimentName, f: impl FnOnce(&mut PartialConfig)) -> ExperimentConfig {
        let mut p = PartialConfig { experiment: Some(name), seed: Some(11), ..Default::default() };
        f(&mut p);
        p.resolve().unwrap()
    }

    #[test]
    fn scaling_collapse_identity_lambda() {
        let c = cfg(ExperimentName::ScalingCollapse, |p| {
            p.n_reps = Some(4000);
            p.alpha = Some(1.3);
            p.sweep = Some(crate::mc::config::PartialSweep { lambda_values: Some(vec![1.0]), ..Default::default() });
        });
        let rep = run_scaling_collapse(&c).unwrap();
        assert!(rep.rows[0].ks < 2.0 * rep.rows[0].critical_5pct, "{:?}", rep.rows);
    }

    #[test]
    fn pure_drift_relative_stability_is_exact_to_a_cell() {
        let c = cfg(ExperimentName::RelativeStability, |p| {
            p.n_reps = Some(5);
            p.scale = Some(0.0);
            p.drift_b = Some(2.0);
        });
        let rep = run_relative_stability(&c).unwrap();
        let cell = 2f64.powf(c.grid.span_log2 / (c.grid.steps - 1) as f64);
        for row in &rep.rows {
            assert!(row.median >= 1.0 && row.median <= cell * (1.0 + 1e-12), "{row:?}");
            assert_eq!(row.iqr, 0.0);
        }
    }

    #[test]
    fn phase_rows_cover_the_sweep() {
        let c = cfg(ExperimentName::PhaseDiagram, |p| {
            p.n_reps = Some(50);
            p.grid = Some(crate::mc::config::PartialGrid { steps: Some(64), ..Default::default() });
        });
        let rep = run_phase_diagram(&c).unwrap();
        assert_eq!(rep.rows.len(), 3 * 3 * 8);
        assert_eq!(rep.exit_sets.len(), 9);
    }

    #[test]
    fn short_horizon_survival_is_flagged() {
        let c = cfg(ExperimentName::Survival, |p| {
            p.n_reps = Some(200);
            p.grid = Some(crate::mc::config::PartialGrid { horizon: Some(1e-3), steps: Some(64), ..Default::default() });
        });
        let rep = run_survival(&c).unwrap();
        assert!(rep.high_censoring);
        assert!(rep.monotone);
    }

    #[test]
    fn limit_law_censoring_cap_is_enforced() {
        let c = cfg(ExperimentName::LimitLaw, |p| {
            p.n_reps = Some(200);
            p.r = Some(50.0);
            p.censor_cap = Some(0.0);
            p.grid = Some(crate::mc::config::PartialGrid { steps: Some(64), horizon: Some(1e-6), ..Default::default() });
        });
        // The lattice always reaches r^{1/ν}; some paths are still inside
        // the strip there.
        let err = run_limit_law(&c).unwrap_err();
        assert!(matches!(err, Error::Censoring { .. }), "{err:?}");
    }

    #[test]
    fn sandwich_has_no_violations() {
        let params = StableParams::symmetric(1.2).unwrap();
        let grid = TimeGrid::geometric_span(1e-4, 10.0, 200).unwrap();
        let sim = GridSimulator::stable(&params, &grid).unwrap();
        let rep = sandwich_check(&sim, &Region::new(0.8, 0.4).unwrap(), 300, 5).unwrap();
        assert_eq!(rep.violations + rep.reverse_violations, 0);
        assert_eq!(rep.checks, 300 * 200);
    }

    #[test]
    fn outputs_are_worker_independent() {
        let c = cfg(ExperimentName::Survival, |p| {
            p.n_reps = Some(100);
            p.grid = Some(crate::mc::config::PartialGrid { steps: Some(128), ..Default::default() });
        });
        let run = |k| {
            rayon::ThreadPoolBuilder::new().num_threads(k).build().unwrap().install(|| run_survival(&c).unwrap())
        };
        assert_eq!(run(1), run(3));
    }
}
