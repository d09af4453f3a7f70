// SPDX-License-Identifier: MIT OR Apache-2.0

//! Simulation designs, accuracy metrics and the runtime benchmark runner.

mod bench;
mod design;
mod evaluate;

pub use bench::{
    run_benchmark, write_csv, Algorithm, BenchConfig, BenchReport, RepError, RunRecord, Scenario,
    SummaryRow,
};
pub use design::{
    ar_is_stationary, generate, generate_ar_series, generate_variance_series, place_changepoints,
    Growth, SegmentLaw, SimDesign, Simulated, TrueParams, Truth,
};
pub use evaluate::{count_matches, count_matches_reversed, evaluate, EvalReport, ThetaRule};
