// SPDX-License-Identifier: MIT OR Apache-2.0

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_inputs, finish_dp, reachable, DpSolution, DpState, PruningStats};
use crate::costs::SegmentCost;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeltOptions {
    /// Disable to run the same recursion without discarding candidates.
    pub prune: bool,
    /// Sample this many `(t, s, T)` triples to test the model's pruning
    /// constant before running; violations are logged, not fatal.
    pub verify_samples: usize,
    pub verify_seed: u64,
}

impl Default for PeltOptions {
    fn default() -> Self {
        Self {
            prune: true,
            verify_samples: 0,
            verify_seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    pos: usize,
    /// Last step at which the candidate is still needed.
    expires: usize,
}

/// PELT: optimal partitioning with candidates discarded once they can no
/// longer be the optimal last changepoint. Output is identical to
/// [`optimal_partitioning`](super::optimal_partitioning).
pub fn pelt<C: SegmentCost + ?Sized>(cost: &C, beta: f64) -> Result<DpSolution> {
    pelt_with_options(cost, beta, PeltOptions::default())
}

pub fn pelt_with_options<C: SegmentCost + ?Sized>(
    cost: &C,
    beta: f64,
    options: PeltOptions,
) -> Result<DpSolution> {
    check_inputs(cost, beta)?;
    if options.verify_samples > 0 {
        let report = check_subadditivity(cost, options.verify_samples, options.verify_seed);
        if report.violations > 0 {
            log::warn!(
                "pruning constant K = {} violated on {} of {} sampled triples (worst excess {:.3e}); \
                 PELT may not match optimal partitioning",
                cost.pruning_constant(),
                report.violations,
                report.checked,
                report.worst_excess
            );
        }
    }

    let n = cost.len();
    let min_len = cost.min_segment_length();
    let k = cost.pruning_constant();
    let mut state = DpState::new(n, beta);
    let mut stats = PruningStats::default();
    let mut live: Vec<Candidate> = Vec::new();
    let mut partial: Vec<f64> = Vec::new();

    for s in min_len..=n {
        let fresh = s - min_len;
        if reachable(fresh, min_len) {
            live.push(Candidate {
                pos: fresh,
                expires: usize::MAX,
            });
        }
        stats.record(live.len());

        partial.clear();
        let mut best = f64::INFINITY;
        let mut arg = None;
        for c in &live {
            let value = state.f[c.pos] + cost.cost(c.pos, s);
            partial.push(value);
            let total = value + beta;
            if total < best {
                best = total;
                arg = Some(c.pos);
            }
        }
        state.f[s] = best;
        state.last_change[s] = arg;

        if options.prune {
            // A candidate failing the check is dominated by `s` for every
            // end point at least `min_len` past `s`; end points in between
            // cannot use `s` yet, so it stays until then.
            let horizon = s + min_len - 1;
            for (c, &value) in live.iter_mut().zip(&partial) {
                if value + k > best || (value + k).is_nan() {
                    c.expires = c.expires.min(horizon);
                }
            }
            live.retain(|c| c.expires > s);
        }
    }
    finish_dp(cost, state, stats)
}

/// Outcome of sampling the subadditivity condition
/// `C(t..s) + C(s..T) + K <= C(t..T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubadditivityReport {
    pub checked: usize,
    pub violations: usize,
    /// Largest `C(t..s) + C(s..T) + K - C(t..T)` seen.
    pub worst_excess: f64,
}

/// Sample random admissible triples `t < s < T` and test the model's
/// pruning constant. A tolerance of `1e-9 * max(1, |C(t..T)|)` absorbs
/// rounding.
pub fn check_subadditivity<C: SegmentCost + ?Sized>(
    cost: &C,
    samples: usize,
    seed: u64,
) -> SubadditivityReport {
    let n = cost.len();
    let l = cost.min_segment_length();
    let k = cost.pruning_constant();
    let mut report = SubadditivityReport {
        checked: 0,
        violations: 0,
        worst_excess: f64::NEG_INFINITY,
    };
    if n < 2 * l {
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let t = rng.random_range(0..=n - 2 * l);
        let s = rng.random_range(t + l..=n - l);
        let end = rng.random_range(s + l..=n);
        let whole = cost.cost(t, end);
        let excess = cost.cost(t, s) + cost.cost(s, end) + k - whole;
        report.checked += 1;
        report.worst_excess = report.worst_excess.max(excess);
        if excess > 1e-9 * whole.abs().max(1.0) {
            report.violations += 1;
        }
    }
    report
}
