//! Monte Carlo experiments and the statistics that check them.

pub mod config;
pub mod experiments;
pub mod stats;

pub use config::{ExperimentConfig, ExperimentName, GridConfig, PartialConfig, SweepConfig};
pub use experiments::{
    passage_time_sample, run_experiment, run_limit_law, run_phase_diagram, run_relative_stability,
    run_scaling_collapse, run_survival, run_tail_recovery, sandwich_check, sup_sample, Cell, ExperimentOutput,
    Table,
};
pub use stats::{
    hill_estimator, ks_critical_value, ks_distance, wilson_interval, BinomialInterval, EmpiricalDistribution, Z_95,
};
