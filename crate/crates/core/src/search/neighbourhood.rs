// SPDX-License-Identifier: MIT OR Apache-2.0

use super::check_length;
use crate::costs::SegmentCost;
use crate::error::Result;
use crate::penalty::PenaltyScheme;
use crate::segmentation::Segmentation;

/// Segment neighbourhood: for every `m` in `0..=max_changepoints` the exact
/// minimum of the summed segment cost over segmentations with exactly `m`
/// changepoints. Entries are `None` when the series is too short for `m`
/// changepoints. Totals carry no penalty.
///
/// Each segment cost is evaluated once, so the run is O(n^2) cost calls
/// plus O(Q n^2) additions.
pub fn segment_neighbourhood<C: SegmentCost + ?Sized>(
    cost: &C,
    max_changepoints: usize,
) -> Result<Vec<Option<Segmentation>>> {
    check_length(cost)?;
    let n = cost.len();
    let l = cost.min_segment_length();
    let q = max_changepoints;
    // best[m][s]: minimal cost of y[..s] with exactly m changepoints.
    let mut best = vec![vec![f64::INFINITY; n + 1]; q + 1];
    let mut back = vec![vec![usize::MAX; n + 1]; q + 1];

    for s in l..=n {
        best[0][s] = cost.cost(0, s);
        back[0][s] = 0;
        for t in l..=s - l {
            let c = cost.cost(t, s);
            for m in 1..=q {
                let prev = best[m - 1][t];
                if !prev.is_finite() {
                    // More changepoints only need longer prefixes.
                    break;
                }
                let value = prev + c;
                if value < best[m][s] {
                    best[m][s] = value;
                    back[m][s] = t;
                }
            }
        }
    }

    (0..=q)
        .map(|m| {
            if !best[m][n].is_finite() {
                return Ok(None);
            }
            let mut changepoints = Vec::with_capacity(m);
            let mut s = n;
            for level in (1..=m).rev() {
                s = back[level][s];
                changepoints.push(s);
            }
            changepoints.reverse();
            Segmentation::new(n, changepoints, best[m][n])?
                .with_segments(cost)
                .map(Some)
        })
        .collect()
}

/// Choose among segment-neighbourhood results by adding `beta * f(m)`.
/// The smallest `m` wins ties. The returned total includes the penalty.
pub fn select_penalized(
    candidates: &[Option<Segmentation>],
    penalty: &PenaltyScheme,
) -> Option<Segmentation> {
    let mut best: Option<Segmentation> = None;
    for seg in candidates.iter().flatten() {
        let total = seg.total_cost + penalty.value(seg.count());
        if best.as_ref().is_none_or(|b| total < b.total_cost) {
            best = Some(Segmentation {
                total_cost: total,
                ..seg.clone()
            });
        }
    }
    best
}
