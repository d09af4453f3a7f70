// SPDX-License-Identifier: MIT OR Apache-2.0

use super::{check_inputs, finish_dp, reachable, DpSolution, DpState, PruningStats};
use crate::costs::SegmentCost;
use crate::error::Result;

/// Optimal partitioning: the exact O(n^2) minimiser of
/// `sum of segment costs + beta * m`.
pub fn optimal_partitioning<C: SegmentCost + ?Sized>(cost: &C, beta: f64) -> Result<DpSolution> {
    check_inputs(cost, beta)?;
    let n = cost.len();
    let min_len = cost.min_segment_length();
    let mut state = DpState::new(n, beta);
    let mut stats = PruningStats::default();

    for s in min_len..=n {
        let mut best = f64::INFINITY;
        let mut arg = None;
        let mut evaluated = 0;
        for t in (0..=s - min_len).filter(|&t| reachable(t, min_len)) {
            let value = state.f[t] + cost.cost(t, s) + beta;
            evaluated += 1;
            if value < best {
                best = value;
                arg = Some(t);
            }
        }
        state.f[s] = best;
        state.last_change[s] = arg;
        stats.record(evaluated);
    }
    finish_dp(cost, state, stats)
}
