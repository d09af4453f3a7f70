// SPDX-License-Identifier: MIT OR Apache-2.0

//! Segmentation search algorithms.
//!
//! All algorithms minimise over the same objects and share one tie-break:
//! among exactly equal candidate values the smallest last-changepoint
//! position wins. Optimal partitioning, PELT and the exhaustive oracle
//! therefore agree changepoint by changepoint, not only in cost.
//!
//! With a minimum segment length `l`, the dynamic programs only consider
//! last changepoints `t` with `s - t >= l`, and position `t` becomes a
//! candidate at step `t + l`. Positions `0 < t < l` are unreachable.

mod binseg;
mod brute;
mod neighbourhood;
mod optimal;
mod pelt;

pub use binseg::binary_segmentation;
pub use brute::{brute_force_oracle, MAX_BRUTE_FORCE_N};
pub use neighbourhood::{segment_neighbourhood, select_penalized};
pub use optimal::optimal_partitioning;
pub use pelt::{check_subadditivity, pelt, pelt_with_options, PeltOptions, SubadditivityReport};

use serde::{Deserialize, Serialize};

use crate::costs::SegmentCost;
use crate::error::{Error, Result};
use crate::segmentation::Segmentation;

/// Dynamic-program arrays of optimal partitioning and PELT.
#[derive(Debug, Clone, PartialEq)]
pub struct DpState {
    /// `f[s]`: optimal penalised cost of `y[..s]`, with `f[0] = -beta`.
    /// Unreachable prefixes hold `+inf`.
    pub f: Vec<f64>,
    /// `last_change[s]`: optimal last changepoint before `s` (`None` at 0
    /// and at unreachable positions).
    pub last_change: Vec<Option<usize>>,
}

impl DpState {
    fn new(n: usize, beta: f64) -> Self {
        let mut f = vec![f64::INFINITY; n + 1];
        f[0] = -beta;
        Self {
            f,
            last_change: vec![None; n + 1],
        }
    }

    /// Follow backpointers from `n` down to 0.
    pub fn changepoints(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut s = self.f.len() - 1;
        while let Some(t) = self.last_change[s] {
            if t == 0 {
                break;
            }
            out.push(t);
            s = t;
        }
        out.reverse();
        out
    }
}

/// Size of the candidate set over the run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PruningStats {
    pub max_candidates: usize,
    pub mean_candidates: f64,
    pub cost_evaluations: u64,
    /// `|R|` at each evaluated step, in step order.
    #[serde(skip)]
    pub candidate_counts: Vec<usize>,
}

impl PruningStats {
    fn record(&mut self, count: usize) {
        self.max_candidates = self.max_candidates.max(count);
        self.cost_evaluations += count as u64;
        self.candidate_counts.push(count);
    }

    fn finish(&mut self) {
        let steps = self.candidate_counts.len();
        self.mean_candidates = if steps == 0 {
            0.0
        } else {
            self.cost_evaluations as f64 / steps as f64
        };
    }
}

/// Result of optimal partitioning or PELT.
#[derive(Debug, Clone)]
pub struct DpSolution {
    pub segmentation: Segmentation,
    pub state: DpState,
    pub stats: PruningStats,
}

pub(crate) fn check_inputs<C: SegmentCost + ?Sized>(cost: &C, beta: f64) -> Result<()> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::invalid_parameter(format!(
            "penalty must be finite and non-negative, got {beta}"
        )));
    }
    check_length(cost)
}

pub(crate) fn check_length<C: SegmentCost + ?Sized>(cost: &C) -> Result<()> {
    let (n, min_len) = (cost.len(), cost.min_segment_length());
    if min_len == 0 {
        return Err(Error::invalid_parameter("minimum segment length must be positive"));
    }
    if n < min_len {
        return Err(Error::SeriesTooShort { n, min_len });
    }
    Ok(())
}

/// Can `t` end a prefix (be a changepoint or the origin)?
#[inline]
pub(crate) fn reachable(t: usize, min_len: usize) -> bool {
    t == 0 || t >= min_len
}

pub(crate) fn finish_dp<C: SegmentCost + ?Sized>(
    cost: &C,
    state: DpState,
    mut stats: PruningStats,
) -> Result<DpSolution> {
    stats.finish();
    let n = cost.len();
    let segmentation = Segmentation::new(n, state.changepoints(), state.f[n])?.with_segments(cost)?;
    Ok(DpSolution {
        segmentation,
        state,
        stats,
    })
}
