//! Bound formulas, hunts, verification suites and report output.

mod bounds;
mod config;
mod hunt;
mod report;
mod verify;

pub use bounds::{aistleitner_constant, iterated_log, montgomery_constant, theorem_bound, Bound, BoundValue, C_MAX, EULER_GAMMA};
pub use config::parse_config;
pub use hunt::{exhaustive_max, hunt, hunt_with_interrupt, HuntConfig, HuntReport, RangeMode, ResonatorChoice, CANDIDATE_CAP};
pub use report::{emit_report, read_hunt_reports, render_report, Report, ReportFormat, HUNT_CSV_HEADER};
pub use verify::{
    run_verify, verify_gallagher, verify_gcdsum, verify_mean_square, verify_moments, verify_poisson,
    verify_reduction_suite, verify_sigma1, VerifyKind, VerifyRecord,
};
