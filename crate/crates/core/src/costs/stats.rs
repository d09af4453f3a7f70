// SPDX-License-Identifier: MIT OR Apache-2.0

/// Cumulative sums of a series shifted by its own mean.
///
/// Shifting first keeps the `sum_sq - sum^2 / len` identity well conditioned
/// for series sitting far from zero.
#[derive(Debug, Clone)]
pub struct SummaryStats {
    offset: f64,
    cum: Vec<f64>,
    cum_sq: Vec<f64>,
}

impl SummaryStats {
    pub fn new(values: &[f64]) -> Self {
        let offset = values.iter().sum::<f64>() / values.len().max(1) as f64;
        let mut cum = Vec::with_capacity(values.len() + 1);
        let mut cum_sq = Vec::with_capacity(values.len() + 1);
        let (mut s, mut s2) = (0.0, 0.0);
        cum.push(0.0);
        cum_sq.push(0.0);
        for &v in values {
            let x = v - offset;
            s += x;
            s2 += x * x;
            cum.push(s);
            cum_sq.push(s2);
        }
        Self { offset, cum, cum_sq }
    }

    pub fn len(&self) -> usize {
        self.cum.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Sum of `y - offset` over `start..end`.
    #[inline]
    pub fn shifted_sum(&self, start: usize, end: usize) -> f64 {
        self.cum[end] - self.cum[start]
    }

    #[inline]
    pub fn mean(&self, start: usize, end: usize) -> f64 {
        self.offset + self.shifted_sum(start, end) / (end - start) as f64
    }

    /// Sum of squared deviations from the segment mean over `start..end`.
    ///
    /// Results indistinguishable from cancellation noise are reported as 0.
    #[inline]
    pub fn centered_sum_sq(&self, start: usize, end: usize) -> f64 {
        let len = (end - start) as f64;
        let s = self.shifted_sum(start, end);
        let s2 = self.cum_sq[end] - self.cum_sq[start];
        let raw = s2 - s * s / len;
        if raw <= 64.0 * f64::EPSILON * s2 {
            0.0
        } else {
            raw
        }
    }
}
