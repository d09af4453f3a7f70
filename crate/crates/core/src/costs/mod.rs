// SPDX-License-Identifier: MIT OR Apache-2.0

//! Segment cost functions.
//!
//! Every cost is evaluated on a 0-based half-open range `start..end`, i.e.
//! `cost(t, s)` scores observations `t + 1 ..= s` in 1-based terms. The
//! Gaussian costs are O(1) per call through cumulative sums; the AR/MDL cost
//! is O(p_max^2) through cumulative lagged products.

mod ar;
mod normal;
mod stats;

pub use ar::{levinson_durbin, ArMdlCost, LevinsonDurbin};
pub use normal::{NormalMeanCost, NormalMeanVarCost, NormalVarCost};
pub use stats::SummaryStats;

use crate::error::{Error, Result};
use crate::segmentation::SegmentParams;
use crate::series::TimeSeries;

/// A segment cost over one fixed series.
pub trait SegmentCost {
    /// Length `n` of the underlying series.
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cost of observations `start..end` (0-based, half-open).
    ///
    /// Callers guarantee `end - start >= self.min_segment_length()`.
    fn cost(&self, start: usize, end: usize) -> f64;

    fn min_segment_length(&self) -> usize;

    /// The constant `K` with `C(t..s) + C(s..T) + K <= C(t..T)` for all
    /// admissible `t < s < T`.
    fn pruning_constant(&self) -> f64;

    fn fit(&self, _start: usize, _end: usize) -> SegmentParams {
        SegmentParams::Unspecified
    }
}

impl<C: SegmentCost + ?Sized> SegmentCost for &C {
    fn len(&self) -> usize {
        (**self).len()
    }
    fn cost(&self, start: usize, end: usize) -> f64 {
        (**self).cost(start, end)
    }
    fn min_segment_length(&self) -> usize {
        (**self).min_segment_length()
    }
    fn pruning_constant(&self) -> f64 {
        (**self).pruning_constant()
    }
    fn fit(&self, start: usize, end: usize) -> SegmentParams {
        (**self).fit(start, end)
    }
}

/// Fixed mean used by the change-in-variance cost.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum MeanSpec {
    /// Plug in the full-series sample mean.
    #[default]
    SeriesMean,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CostKind {
    /// Change in mean with unit variance: segment residual sum of squares.
    Mean,
    /// Change in variance around a known mean.
    Var { mean: MeanSpec },
    /// Change in mean and variance.
    MeanVar,
    /// Piecewise autoregressive model scored by minimum description length.
    ArMdl { p_max: usize },
}

/// A cost model plus the minimum segment length the search must respect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostModel {
    kind: CostKind,
    min_segment_length: usize,
}

impl CostModel {
    pub fn mean() -> Self {
        Self::from_kind(CostKind::Mean)
    }

    pub fn var(mean: MeanSpec) -> Self {
        Self::from_kind(CostKind::Var { mean })
    }

    pub fn mean_var() -> Self {
        Self::from_kind(CostKind::MeanVar)
    }

    pub fn ar_mdl(p_max: usize) -> Result<Self> {
        if p_max == 0 {
            return Err(Error::invalid_parameter("p_max must be at least 1"));
        }
        Ok(Self::from_kind(CostKind::ArMdl { p_max }))
    }

    fn from_kind(kind: CostKind) -> Self {
        Self {
            kind,
            min_segment_length: Self::intrinsic_min_length(kind),
        }
    }

    fn intrinsic_min_length(kind: CostKind) -> usize {
        match kind {
            CostKind::Mean => 1,
            CostKind::Var { .. } | CostKind::MeanVar => 2,
            CostKind::ArMdl { p_max } => p_max + 2,
        }
    }

    /// Raise the minimum segment length. Lowering it below what the model
    /// needs to be well defined is an error.
    pub fn with_min_segment_length(mut self, min_len: usize) -> Result<Self> {
        let floor = Self::intrinsic_min_length(self.kind);
        if min_len < floor {
            return Err(Error::invalid_parameter(format!(
                "minimum segment length {min_len} is below {floor} required by the {} model",
                self.name()
            )));
        }
        self.min_segment_length = min_len;
        Ok(self)
    }

    pub fn kind(&self) -> CostKind {
        self.kind
    }

    pub fn min_segment_length(&self) -> usize {
        self.min_segment_length
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            CostKind::Mean => "mean",
            CostKind::Var { .. } => "var",
            CostKind::MeanVar => "meanvar",
            CostKind::ArMdl { .. } => "ar-mdl",
        }
    }

    /// Free parameters a new segment adds, used for AIC/SIC.
    pub fn params_per_changepoint(&self) -> usize {
        match self.kind {
            CostKind::Mean | CostKind::Var { .. } => 1,
            CostKind::MeanVar => 2,
            CostKind::ArMdl { p_max } => p_max + 1,
        }
    }

    /// `K` for a series of length `n`: zero for the likelihood costs and
    /// `-(2 log p_max + (p_max / 2) log n)` for AR/MDL.
    pub fn pruning_constant(&self, n: usize) -> f64 {
        match self.kind {
            CostKind::Mean | CostKind::Var { .. } | CostKind::MeanVar => 0.0,
            CostKind::ArMdl { p_max } => ar::mdl_pruning_constant(p_max, n),
        }
    }

    pub fn prepare(&self, series: &TimeSeries) -> Result<PreparedCost> {
        let min_len = self.min_segment_length;
        Ok(match self.kind {
            CostKind::Mean => PreparedCost::Mean(NormalMeanCost::new(series, min_len)),
            CostKind::Var { mean } => {
                let mu = match mean {
                    MeanSpec::SeriesMean => series.mean(),
                    MeanSpec::Fixed(mu) if mu.is_finite() => mu,
                    MeanSpec::Fixed(mu) => {
                        return Err(Error::invalid_parameter(format!("fixed mean {mu} is not finite")))
                    }
                };
                PreparedCost::Var(NormalVarCost::new(series, mu, min_len))
            }
            CostKind::MeanVar => PreparedCost::MeanVar(NormalMeanVarCost::new(series, min_len)),
            CostKind::ArMdl { p_max } => PreparedCost::ArMdl(ArMdlCost::new(series, p_max, min_len)),
        })
    }
}

/// A [`CostModel`] bound to a series with its summaries precomputed.
#[derive(Debug, Clone)]
pub enum PreparedCost {
    Mean(NormalMeanCost),
    Var(NormalVarCost),
    MeanVar(NormalMeanVarCost),
    ArMdl(ArMdlCost),
}

macro_rules! dispatch {
    ($self:expr, $inner:ident => $body:expr) => {
        match $self {
            PreparedCost::Mean($inner) => $body,
            PreparedCost::Var($inner) => $body,
            PreparedCost::MeanVar($inner) => $body,
            PreparedCost::ArMdl($inner) => $body,
        }
    };
}

impl SegmentCost for PreparedCost {
    fn len(&self) -> usize {
        dispatch!(self, c => c.len())
    }

    #[inline]
    fn cost(&self, start: usize, end: usize) -> f64 {
        dispatch!(self, c => c.cost(start, end))
    }

    fn min_segment_length(&self) -> usize {
        dispatch!(self, c => c.min_segment_length())
    }

    fn pruning_constant(&self) -> f64 {
        dispatch!(self, c => c.pruning_constant())
    }

    fn fit(&self, start: usize, end: usize) -> SegmentParams {
        dispatch!(self, c => c.fit(start, end))
    }
}

/// Variances below this are clamped so constant segments stay finite.
pub(crate) fn variance_floor(series_variance: f64) -> f64 {
    1e-12 * (series_variance + 1e-300)
}
