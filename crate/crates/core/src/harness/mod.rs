//! Reproducible experiments: configuration, spec grammars, artifacts and the
//! acceptance checks.

mod config;
mod experiments;
mod grammar;
mod output;
mod report;
pub mod samples;
pub mod verify;

pub use config::{RunConfig, OUT_DIR_ENV};
pub use grammar::{parse_coefficients, parse_family, parse_function, t_grid, FamilySpec};
pub use output::{atomic_write, ensure_out_dir, gap_csv, profile_csv, to_json_pretty, ProfileSidecar};
pub use report::{Assertion, CriterionResult, ExperimentReport, Relation, Status};
pub use experiments::{
    function_coeffs, profile_assertions, run_factor, run_gap, run_profile, run_verify_all, FactorRun, Norm,
    ProfileRun,
};
