// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact penalized multiple-changepoint detection.
//!
//! The crate provides the pruned exact linear time method (PELT) together
//! with optimal partitioning, segment neighbourhood, binary segmentation and
//! an exhaustive oracle, all driven by pluggable segment costs.
//!
//! # Index convention
//!
//! A changepoint `tau` means the change happens *after* observation `tau`
//! (1-based), so the boundary sits between `y[tau]` and `y[tau + 1]`. With
//! implicit boundaries `tau_0 = 0` and `tau_{m+1} = n`, segment `i` holds
//! `y[(tau_{i-1} + 1)..=tau_i]`. In 0-based Rust slices that is exactly
//! `values[tau_{i-1}..tau_i]`, so every `cost(start, end)` call below takes a
//! half-open 0-based range and changepoints are the interior range ends.

#![forbid(unsafe_code)]

pub mod costs;
mod error;
pub mod penalty;
pub mod search;
mod segmentation;
mod series;
pub mod simeval;

pub use costs::{CostKind, CostModel, MeanSpec, PreparedCost, SegmentCost};
pub use error::{Error, Result};
pub use penalty::{ConcaveName, ConcaveShape, PenaltyKind, PenaltyScheme, PenaltySpec};
pub use segmentation::{recompute_cost, SegmentParams, SegmentSummary, Segmentation};
pub use series::TimeSeries;
