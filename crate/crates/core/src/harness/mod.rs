//! Scenario configuration, Monte Carlo sweeps and CSV output.

pub mod config;
pub mod output;
pub mod sim;

pub use config::{dbm_to_watts, CsiMode, ScenarioConfig};
pub use output::{pattern_sweep, write_aggregate_csv, write_pattern_csv, write_rows_csv, PatternSample, CSV_HEADER};
pub use sim::{
    beta_clusters, draw_users, evaluate_scheme, run_sweep, run_trial, trial_seed, Aggregate, ScenarioResult,
    SchemeOutcome, SweepResult, UserDrop,
};
