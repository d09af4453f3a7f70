// SPDX-License-Identifier: MIT OR Apache-2.0

use serde::{Deserialize, Serialize};

use crate::costs::{CostModel, SegmentCost};
use crate::error::{Error, Result};
use crate::penalty::PenaltyScheme;
use crate::series::TimeSeries;

/// Parameters fitted to one segment by the cost model that scored it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SegmentParams {
    Mean {
        mean: f64,
    },
    Variance {
        mean: f64,
        variance: f64,
    },
    MeanVariance {
        mean: f64,
        variance: f64,
    },
    Autoregressive {
        order: usize,
        coefficients: Vec<f64>,
        innovation_variance: f64,
    },
    Unspecified,
}

/// One segment of a [`Segmentation`], 1-based and inclusive on both ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentSummary {
    pub start: usize,
    pub end: usize,
    pub cost: f64,
    pub params: SegmentParams,
}

/// Changepoints `tau_1 < ... < tau_m` of a series of length `n`.
///
/// `total_cost` is the value of the objective the producing algorithm
/// minimised: segment costs plus the penalty term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segmentation {
    pub n: usize,
    pub changepoints: Vec<usize>,
    pub total_cost: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<Vec<SegmentSummary>>,
}

impl Segmentation {
    pub fn new(n: usize, changepoints: Vec<usize>, total_cost: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid_segmentation("series length must be positive"));
        }
        if let Some(&bad) = changepoints.iter().find(|&&t| t == 0 || t >= n) {
            return Err(Error::invalid_segmentation(format!(
                "changepoint {bad} outside [1, {}]",
                n - 1
            )));
        }
        if changepoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid_segmentation(
                "changepoints must be strictly increasing",
            ));
        }
        Ok(Self {
            n,
            changepoints,
            total_cost,
            segments: None,
        })
    }

    /// Number of changepoints `m`.
    pub fn count(&self) -> usize {
        self.changepoints.len()
    }

    /// Segment ranges as 0-based half-open `(start, end)` pairs.
    pub fn bounds(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        std::iter::once(0)
            .chain(self.changepoints.iter().copied())
            .zip(self.changepoints.iter().copied().chain(std::iter::once(self.n)))
    }

    pub fn check_min_length(&self, min_len: usize) -> Result<()> {
        match self.bounds().find(|(a, b)| b - a < min_len) {
            Some((a, b)) => Err(Error::invalid_segmentation(format!(
                "segment {}..={} has length {} < minimum {min_len}",
                a + 1,
                b,
                b - a
            ))),
            None => Ok(()),
        }
    }

    /// Sum of segment costs, accumulated left to right.
    pub fn segment_cost_sum<C: SegmentCost + ?Sized>(&self, cost: &C) -> Result<f64> {
        self.check_against(cost)?;
        Ok(self.bounds().map(|(a, b)| cost.cost(a, b)).sum())
    }

    /// Fill per-segment costs and fitted parameters.
    pub fn with_segments<C: SegmentCost + ?Sized>(mut self, cost: &C) -> Result<Self> {
        self.check_against(cost)?;
        let segments = self
            .bounds()
            .map(|(a, b)| SegmentSummary {
                start: a + 1,
                end: b,
                cost: cost.cost(a, b),
                params: cost.fit(a, b),
            })
            .collect();
        self.segments = Some(segments);
        Ok(self)
    }

    fn check_against<C: SegmentCost + ?Sized>(&self, cost: &C) -> Result<()> {
        if cost.len() != self.n {
            return Err(Error::invalid_segmentation(format!(
                "segmentation is for n = {} but the series has {} observations",
                self.n,
                cost.len()
            )));
        }
        self.check_min_length(cost.min_segment_length())
    }
}

/// Score `seg` from scratch: the sum of its segment costs under `model`
/// plus `beta * f(m)`. Independent of whichever algorithm produced `seg`.
pub fn recompute_cost(
    series: &TimeSeries,
    seg: &Segmentation,
    model: &CostModel,
    penalty: &PenaltyScheme,
) -> Result<f64> {
    let cost = model.prepare(series)?;
    Ok(seg.segment_cost_sum(&cost)? + penalty.value(seg.count()))
}
