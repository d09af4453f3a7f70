// SPDX-License-Identifier: MIT OR Apache-2.0

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::check_inputs;
use crate::costs::SegmentCost;
use crate::error::Result;
use crate::segmentation::Segmentation;

#[derive(Debug, Clone, Copy)]
struct Split {
    start: usize,
    end: usize,
    at: usize,
    whole: f64,
    parts: f64,
}

impl Split {
    fn gain(&self) -> f64 {
        self.whole - self.parts
    }
}

// Max-heap on gain; earlier intervals win ties.
impl Ord for Split {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain()
            .total_cmp(&other.gain())
            .then_with(|| other.start.cmp(&self.start))
    }
}

impl PartialOrd for Split {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Split {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Split {}

/// Best single split of `start..end`, leaving at least `min_len` on each
/// side. The smallest position wins ties.
fn best_split<C: SegmentCost + ?Sized>(cost: &C, start: usize, end: usize) -> Option<Split> {
    let min_len = cost.min_segment_length();
    if end - start < 2 * min_len {
        return None;
    }
    let mut best: Option<(usize, f64)> = None;
    for at in start + min_len..=end - min_len {
        let parts = cost.cost(start, at) + cost.cost(at, end);
        if best.is_none_or(|(_, b)| parts < b) {
            best = Some((at, parts));
        }
    }
    best.map(|(at, parts)| Split {
        start,
        end,
        at,
        whole: cost.cost(start, end),
        parts,
    })
}

/// Binary segmentation.
///
/// Without `max_changepoints`, an interval is split at its best position
/// whenever `C(left) + C(right) + beta < C(interval)`, recursively until no
/// interval qualifies. With `max_changepoints = Some(m)` the test is
/// ignored and the split with the largest cost reduction is taken until
/// `m` changepoints exist or nothing can be split.
///
/// The reported total is `sum of segment costs + beta * m` in both modes.
pub fn binary_segmentation<C: SegmentCost + ?Sized>(
    cost: &C,
    beta: f64,
    max_changepoints: Option<usize>,
) -> Result<Segmentation> {
    check_inputs(cost, beta)?;
    let n = cost.len();
    let mut changepoints = Vec::new();

    match max_changepoints {
        None => {
            let mut pending = vec![(0, n)];
            while let Some((start, end)) = pending.pop() {
                if let Some(split) = best_split(cost, start, end) {
                    if split.parts + beta < split.whole {
                        changepoints.push(split.at);
                        pending.push((split.at, end));
                        pending.push((start, split.at));
                    }
                }
            }
        }
        Some(limit) => {
            let mut heap: BinaryHeap<Split> = best_split(cost, 0, n).into_iter().collect();
            while changepoints.len() < limit {
                let Some(split) = heap.pop() else { break };
                changepoints.push(split.at);
                heap.extend(best_split(cost, split.start, split.at));
                heap.extend(best_split(cost, split.at, split.end));
            }
        }
    }

    changepoints.sort_unstable();
    let m = changepoints.len();
    let seg = Segmentation::new(n, changepoints, 0.0)?;
    let total_cost = seg.segment_cost_sum(cost)? + beta * m as f64;
    Segmentation {
        total_cost,
        ..seg
    }
    .with_segments(cost)
}
