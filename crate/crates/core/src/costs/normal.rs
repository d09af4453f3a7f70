// SPDX-License-Identifier: MIT OR Apache-2.0

//! Gaussian likelihood costs (twice the negative maximised log-likelihood).

use std::f64::consts::PI;

use super::stats::SummaryStats;
use super::{variance_floor, SegmentCost};
use crate::segmentation::SegmentParams;
use crate::series::TimeSeries;

/// `len * (log 2pi + log(max(variance, floor)) + 1)`.
#[inline]
fn gaussian_cost(len: f64, variance: f64, floor: f64) -> f64 {
    len * ((2.0 * PI).ln() + variance.max(floor).ln() + 1.0)
}

/// Change in mean, known unit variance.
///
/// Reports the segment residual sum of squares; the `len * log 2pi` terms
/// do not depend on the segmentation and are dropped, so totals are only
/// comparable with other totals from this model.
#[derive(Debug, Clone)]
pub struct NormalMeanCost {
    stats: SummaryStats,
    min_len: usize,
}

impl NormalMeanCost {
    pub fn new(series: &TimeSeries, min_len: usize) -> Self {
        Self {
            stats: SummaryStats::new(series.values()),
            min_len,
        }
    }
}

impl SegmentCost for NormalMeanCost {
    fn len(&self) -> usize {
        self.stats.len()
    }

    #[inline]
    fn cost(&self, start: usize, end: usize) -> f64 {
        self.stats.centered_sum_sq(start, end)
    }

    fn min_segment_length(&self) -> usize {
        self.min_len
    }

    fn pruning_constant(&self) -> f64 {
        0.0
    }

    fn fit(&self, start: usize, end: usize) -> SegmentParams {
        SegmentParams::Mean {
            mean: self.stats.mean(start, end),
        }
    }
}

/// Change in variance around a fixed mean `mu`.
#[derive(Debug, Clone)]
pub struct NormalVarCost {
    mu: f64,
    cum_sq_dev: Vec<f64>,
    floor: f64,
    min_len: usize,
}

impl NormalVarCost {
    pub fn new(series: &TimeSeries, mu: f64, min_len: usize) -> Self {
        let mut cum_sq_dev = Vec::with_capacity(series.len() + 1);
        let mut acc = 0.0;
        cum_sq_dev.push(acc);
        for &v in series.values() {
            acc += (v - mu) * (v - mu);
            cum_sq_dev.push(acc);
        }
        Self {
            mu,
            cum_sq_dev,
            floor: variance_floor(series.variance()),
            min_len,
        }
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// MLE variance of `start..end` given the fixed mean, before flooring.
    #[inline]
    pub fn variance(&self, start: usize, end: usize) -> f64 {
        ((self.cum_sq_dev[end] - self.cum_sq_dev[start]) / (end - start) as f64).max(0.0)
    }
}

impl SegmentCost for NormalVarCost {
    fn len(&self) -> usize {
        self.cum_sq_dev.len() - 1
    }

    #[inline]
    fn cost(&self, start: usize, end: usize) -> f64 {
        gaussian_cost((end - start) as f64, self.variance(start, end), self.floor)
    }

    fn min_segment_length(&self) -> usize {
        self.min_len
    }

    fn pruning_constant(&self) -> f64 {
        0.0
    }

    fn fit(&self, start: usize, end: usize) -> SegmentParams {
        SegmentParams::Variance {
            mean: self.mu,
            variance: self.variance(start, end),
        }
    }
}

/// Change in both mean and variance, each profiled at its segment MLE.
#[derive(Debug, Clone)]
pub struct NormalMeanVarCost {
    stats: SummaryStats,
    floor: f64,
    min_len: usize,
}

impl NormalMeanVarCost {
    pub fn new(series: &TimeSeries, min_len: usize) -> Self {
        Self {
            stats: SummaryStats::new(series.values()),
            floor: variance_floor(series.variance()),
            min_len,
        }
    }

    /// Biased MLE variance of `start..end`, before flooring.
    #[inline]
    pub fn variance(&self, start: usize, end: usize) -> f64 {
        self.stats.centered_sum_sq(start, end) / (end - start) as f64
    }
}

impl SegmentCost for NormalMeanVarCost {
    fn len(&self) -> usize {
        self.stats.len()
    }

    #[inline]
    fn cost(&self, start: usize, end: usize) -> f64 {
        gaussian_cost((end - start) as f64, self.variance(start, end), self.floor)
    }

    fn min_segment_length(&self) -> usize {
        self.min_len
    }

    fn pruning_constant(&self) -> f64 {
        0.0
    }

    fn fit(&self, start: usize, end: usize) -> SegmentParams {
        SegmentParams::MeanVariance {
            mean: self.stats.mean(start, end),
            variance: self.variance(start, end),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOG_2PI: f64 = 1.837_877_066_409_345_5;

    fn series(values: &[f64]) -> TimeSeries {
        TimeSeries::new(values.to_vec()).unwrap()
    }

    #[test]
    fn mean_cost_examples() {
        let c = NormalMeanCost::new(&series(&[3.0, 3.0, 3.0, 3.0]), 1);
        assert_eq!(c.cost(0, 4), 0.0);
        assert_eq!(c.cost(1, 2), 0.0);
        let c = NormalMeanCost::new(&series(&[0.0, 2.0]), 1);
        assert!((c.cost(0, 2) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn var_cost_examples() {
        let c = NormalVarCost::new(&series(&[-1.0, 1.0]), 0.0, 2);
        assert!((c.cost(0, 2) - 2.0 * (LOG_2PI + 1.0)).abs() < 1e-12);
        // Unit sample variance about mu: L * (log 2pi + 1).
        let c = NormalVarCost::new(&series(&[1.0, -1.0, 1.0, -1.0, 1.0]), 0.0, 2);
        assert!((c.cost(0, 5) - 5.0 * (LOG_2PI + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn mean_var_cost_examples() {
        let c = NormalMeanVarCost::new(&series(&[-1.0, 1.0]), 2);
        assert!((c.cost(0, 2) - 2.0 * (LOG_2PI + 1.0)).abs() < 1e-12);
        let c = NormalMeanVarCost::new(&series(&[9.0, 11.0]), 2);
        assert!((c.cost(0, 2) - 2.0 * (LOG_2PI + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn degenerate_segments_are_floored_not_infinite() {
        let s = series(&[0.0, 0.0, 0.0, 5.0, -5.0, 2.0]);
        let var = NormalVarCost::new(&s, 0.0, 2);
        let mv = NormalMeanVarCost::new(&s, 2);
        for c in [var.cost(0, 3), mv.cost(0, 3), mv.cost(0, 2)] {
            assert!(c.is_finite());
            assert!(c < -40.0, "floored cost should be very cheap, got {c}");
        }
        // A constant series floors every segment at the same per-point rate,
        // so splitting never gains anything.
        let flat = series(&[4.2; 10]);
        let mv = NormalMeanVarCost::new(&flat, 2);
        assert!(mv.cost(0, 10).is_finite());
        let split = mv.cost(0, 4) + mv.cost(4, 10);
        assert!((split - mv.cost(0, 10)).abs() <= 1e-9 * split.abs());
    }

    #[test]
    fn fitted_params() {
        let s = series(&[1.0, 3.0, 10.0, 14.0]);
        assert_eq!(
            NormalMeanCost::new(&s, 1).fit(2, 4),
            SegmentParams::Mean { mean: 12.0 }
        );
        assert_eq!(
            NormalMeanVarCost::new(&s, 2).fit(0, 2),
            SegmentParams::MeanVariance {
                mean: 2.0,
                variance: 1.0
            }
        );
        assert_eq!(
            NormalVarCost::new(&s, 0.0, 2).fit(0, 2),
            SegmentParams::Variance {
                mean: 0.0,
                variance: 5.0
            }
        );
    }
}
