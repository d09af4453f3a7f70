// SPDX-License-Identifier: MIT OR Apache-2.0

use super::check_length;
use crate::costs::SegmentCost;
use crate::error::{Error, Result};
use crate::penalty::PenaltyScheme;
use crate::segmentation::Segmentation;

/// Longest series the exhaustive oracle accepts (2^19 boundary subsets).
pub const MAX_BRUTE_FORCE_N: usize = 20;

/// Exhaustive minimiser of `sum of segment costs + beta * f(m)` over every
/// admissible set of changepoints. Intended as a test oracle.
///
/// With a constant penalty the total is accumulated as
/// `((-beta + C_1) + beta) + C_2 + beta ...`, the same association the
/// dynamic programs use. Exact ties go to the segmentation whose last
/// changepoint is smallest, then the one before it, and so on.
pub fn brute_force_oracle<C: SegmentCost + ?Sized>(
    cost: &C,
    penalty: &PenaltyScheme,
) -> Result<Segmentation> {
    check_length(cost)?;
    let n = cost.len();
    if n > MAX_BRUTE_FORCE_N {
        return Err(Error::TooLargeForBruteForce {
            n,
            max: MAX_BRUTE_FORCE_N,
        });
    }
    let l = cost.min_segment_length();
    let linear_beta = penalty.linear_beta();

    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut changepoints = Vec::with_capacity(n);
    for mask in 0u32..(1u32 << (n - 1)) {
        changepoints.clear();
        changepoints.extend((1..n).filter(|&t| mask & (1 << (t - 1)) != 0));
        let admissible = std::iter::once(0)
            .chain(changepoints.iter().copied())
            .zip(changepoints.iter().copied().chain(std::iter::once(n)))
            .all(|(a, b)| b - a >= l);
        if !admissible {
            continue;
        }
        let bounds = std::iter::once(0)
            .chain(changepoints.iter().copied())
            .zip(changepoints.iter().copied().chain(std::iter::once(n)));
        let total = match linear_beta {
            Some(beta) => bounds.fold(-beta, |acc, (a, b)| acc + cost.cost(a, b) + beta),
            None => {
                bounds.map(|(a, b)| cost.cost(a, b)).sum::<f64>() + penalty.value(changepoints.len())
            }
        };
        let better = match &best {
            None => true,
            Some((b, cps)) => total < *b || (total == *b && tie_key_less(&changepoints, cps)),
        };
        if better {
            best = Some((total, changepoints.clone()));
        }
    }
    let (total, cps) = best.expect("the empty segmentation is always admissible");
    Segmentation::new(n, cps, total)?.with_segments(cost)
}

/// Compare changepoint sets from the last changepoint backwards, treating
/// the origin as a final 0.
fn tie_key_less(a: &[usize], b: &[usize]) -> bool {
    let ka = a.iter().rev().copied().chain(std::iter::once(0));
    let kb = b.iter().rev().copied().chain(std::iter::once(0));
    ka.lt(kb)
}
