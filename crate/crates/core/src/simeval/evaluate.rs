// SPDX-License-Identifier: MIT OR Apache-2.0

use serde::{Deserialize, Serialize};

use super::design::{TrueParams, Truth};
use crate::error::{Error, Result};
use crate::segmentation::Segmentation;
use crate::series::TimeSeries;

/// How fitted per-point parameters are computed for the MSE.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThetaRule {
    /// Segment variance with the mean held at `mean`.
    Variance { mean: f64 },
    /// Segment mean.
    Mean,
    /// The `(mean, variance)` pair; squared errors of both coordinates add.
    MeanVariance,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    /// `sum_i |theta_hat_i - theta_i|^2 / n`; `None` without a rule.
    pub mse: Option<f64>,
    pub true_detected: usize,
    pub false_detected: usize,
}

/// Maximum number of one-to-one pairs `(true, detected)` with
/// `|true - detected| <= window`, scanning left to right.
///
/// Each true changepoint in increasing order takes the earliest unused
/// detection inside its window. With equal-width windows this greedy scan
/// is optimal, so the count does not depend on scan direction.
pub fn count_matches(truth: &[usize], detected: &[usize], window: usize) -> usize {
    let mut matched = 0;
    let mut j = 0;
    for &t in truth {
        while j < detected.len() && detected[j] + window < t {
            j += 1;
        }
        if j < detected.len() && detected[j] <= t + window {
            matched += 1;
            j += 1;
        }
    }
    matched
}

/// [`count_matches`] scanning right to left.
pub fn count_matches_reversed(truth: &[usize], detected: &[usize], window: usize) -> usize {
    let mut matched = 0;
    let mut j = detected.len();
    for &t in truth.iter().rev() {
        while j > 0 && detected[j - 1] > t + window {
            j -= 1;
        }
        if j > 0 && detected[j - 1] + window >= t {
            matched += 1;
            j -= 1;
        }
    }
    matched
}

fn true_theta(params: &TrueParams, rule: ThetaRule) -> Result<Vec<f64>> {
    match (params, rule) {
        (TrueParams::Gaussian { variance, .. }, ThetaRule::Variance { .. }) => Ok(vec![*variance]),
        (TrueParams::Gaussian { mean, .. }, ThetaRule::Mean) => Ok(vec![*mean]),
        (TrueParams::Gaussian { mean, variance }, ThetaRule::MeanVariance) => {
            Ok(vec![*mean, *variance])
        }
        (TrueParams::Autoregressive { .. }, _) => Err(Error::invalid_parameter(
            "MSE is defined for Gaussian segment parameters only",
        )),
    }
}

fn fitted_theta(values: &[f64], rule: ThetaRule) -> Vec<f64> {
    let len = values.len() as f64;
    let mean = values.iter().sum::<f64>() / len;
    match rule {
        ThetaRule::Variance { mean: mu } => {
            vec![values.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / len]
        }
        ThetaRule::Mean => vec![mean],
        ThetaRule::MeanVariance => vec![
            mean,
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / len,
        ],
    }
}

/// Score `detected` against `truth`: window matching of changepoints and,
/// when `rule` is given, the per-point parameter MSE.
pub fn evaluate(
    series: &TimeSeries,
    truth: &Truth,
    detected: &Segmentation,
    window: usize,
    rule: Option<ThetaRule>,
) -> Result<EvalReport> {
    let n = series.len();
    if truth.n != n || detected.n != n {
        return Err(Error::invalid_parameter(format!(
            "series has {n} points but truth has {} and detection {}",
            truth.n, detected.n
        )));
    }
    if truth.segments.len() != truth.changepoints.len() + 1 {
        return Err(Error::invalid_parameter(
            "truth needs one parameter set per segment",
        ));
    }
    let true_detected = count_matches(&truth.changepoints, &detected.changepoints, window);
    let false_detected = detected.count() - true_detected;

    let mse = match rule {
        None => None,
        Some(rule) => {
            // Expand the true parameters to one entry per point.
            let mut theta = Vec::with_capacity(n);
            let true_bounds = std::iter::once(0)
                .chain(truth.changepoints.iter().copied())
                .zip(truth.changepoints.iter().copied().chain(std::iter::once(n)));
            for ((a, b), params) in true_bounds.zip(&truth.segments) {
                let t = true_theta(params, rule)?;
                theta.extend(std::iter::repeat_n(t, b - a));
            }
            let values = series.values();
            let mut sse = 0.0;
            for (a, b) in detected.bounds() {
                let fitted = fitted_theta(&values[a..b], rule);
                for t in &theta[a..b] {
                    sse += fitted.iter().zip(t).map(|(f, t)| (f - t).powi(2)).sum::<f64>();
                }
            }
            Some(sse / n as f64)
        }
    };

    Ok(EvalReport {
        mse,
        true_detected,
        false_detected,
    })
}
