// SPDX-License-Identifier: MIT OR Apache-2.0

use crate::error::{Error, Result};

/// An ordered, finite, non-empty sequence of observations.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    timestamps: Option<Vec<f64>>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            values,
            timestamps: None,
        })
    }

    /// Attach display-only labels. They must be strictly increasing.
    pub fn with_timestamps(mut self, timestamps: Vec<f64>) -> Result<Self> {
        if timestamps.len() != self.values.len()
            || timestamps.windows(2).any(|w| w[0] >= w[1] || w[0].is_nan() || w[1].is_nan())
        {
            return Err(Error::InvalidTimestamps);
        }
        self.timestamps = Some(timestamps);
        Ok(self)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn timestamps(&self) -> Option<&[f64]> {
        self.timestamps.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Biased (divide by `n`) sample variance, two-pass.
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / self.len() as f64
    }

    /// Apply first differencing `order` times. Timestamps keep the label of
    /// the later observation of each pair.
    pub fn difference(&self, order: usize) -> Result<Self> {
        if order >= self.len() {
            return Err(Error::invalid_parameter(format!(
                "cannot difference a series of length {} {order} times",
                self.len()
            )));
        }
        let mut values = self.values.clone();
        for _ in 0..order {
            values = values.windows(2).map(|w| w[1] - w[0]).collect();
        }
        let timestamps = self
            .timestamps
            .as_ref()
            .map(|ts| ts[order..].to_vec());
        let mut out = Self::new(values)?;
        out.timestamps = timestamps;
        Ok(out)
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}
