//! Experiment front end for the `pq-approx` library: convergence datasets,
//! the identity suite, moment tables and bound-vs-error profiles, emitted as
//! deterministic CSV or JSON.

pub mod config;
pub mod experiments;
pub mod report;

pub use config::{ConfigEcho, ConfigError, ExperimentConfig, GridSpec, OutputFormat, OutputSpec};
pub use experiments::{
    king_default_grid, limit_reference, run_convergence, run_identity_suite, run_limit_comparison,
    run_moments, run_profile, IdentityEntry, IdentityReport, MomentsReport, ProfileGlobal,
    ProfileReport, RunError,
};
pub use report::{parse_csv, ConvergenceReport, ParsedCsv, ReportRow, ReportSummary};
