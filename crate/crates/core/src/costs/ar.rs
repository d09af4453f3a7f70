// SPDX-License-Identifier: MIT OR Apache-2.0

//! Piecewise autoregressive segments scored by minimum description length.
//!
//! For a segment of length `L` the cost is
//!
//! ```text
//! min over p in 1..=p_max of  log p + (p + 2)/2 * log L + L/2 * log(2 pi sigma2(p))
//! ```
//!
//! where `sigma2(p)` is the Yule-Walker innovation variance of order `p`,
//! obtained for every order at once by the Levinson-Durbin recursion on the
//! segment's biased, mean-centred sample autocovariances. Those
//! autocovariances come from cumulative lagged products, so one evaluation
//! is O(p_max^2) regardless of `L`.

use std::f64::consts::PI;

use super::{variance_floor, SegmentCost};
use crate::segmentation::SegmentParams;
use crate::series::TimeSeries;

const STACK_ORDER: usize = 32;

/// Output of [`levinson_durbin`].
#[derive(Debug, Clone, PartialEq)]
pub struct LevinsonDurbin {
    /// AR coefficients `phi_1..phi_p` of the highest order fitted.
    pub coefficients: Vec<f64>,
    /// Innovation variance for orders `0..=p`; entry 0 is `r_0`.
    pub innovation_variances: Vec<f64>,
}

/// Solve the Yule-Walker equations for orders `1..=order` given
/// autocovariances `autocov[0..=order]`.
///
/// A non-positive prediction error stops the recursion; later orders then
/// repeat the last coefficients (zero-padded) and report a zero variance.
pub fn levinson_durbin(autocov: &[f64], order: usize) -> LevinsonDurbin {
    assert!(autocov.len() > order, "need autocovariances up to lag {order}");
    let mut coefficients = vec![0.0; order];
    let mut scratch = vec![0.0; order];
    let mut innovation_variances = vec![0.0; order + 1];
    recurse(autocov, &mut coefficients, &mut scratch, &mut innovation_variances);
    LevinsonDurbin {
        coefficients,
        innovation_variances,
    }
}

/// Core recursion writing into caller-provided buffers of length
/// `order` (`a`, `tmp`) and `order + 1` (`err`).
fn recurse(r: &[f64], a: &mut [f64], tmp: &mut [f64], err: &mut [f64]) {
    let order = a.len();
    a.fill(0.0);
    err[0] = r[0];
    let mut e = r[0];
    for k in 1..=order {
        if !(e.is_finite() && e > 0.0) {
            err[k..].fill(0.0);
            return;
        }
        let mut acc = r[k];
        for j in 1..k {
            acc -= a[j - 1] * r[k - j];
        }
        let kappa = acc / e;
        tmp[..k - 1].copy_from_slice(&a[..k - 1]);
        for j in 1..k {
            a[j - 1] = tmp[j - 1] - kappa * tmp[k - 1 - j];
        }
        a[k - 1] = kappa;
        e *= 1.0 - kappa * kappa;
        err[k] = e.max(0.0);
    }
}

pub(crate) fn mdl_pruning_constant(p_max: usize, n: usize) -> f64 {
    -(2.0 * (p_max as f64).ln() + (p_max as f64 / 2.0) * (n as f64).ln())
}

/// MDL cost of an AR segment with order chosen per segment.
#[derive(Debug, Clone)]
pub struct ArMdlCost {
    p_max: usize,
    min_len: usize,
    floor: f64,
    /// Prefix sums of the series shifted by its mean.
    cum: Vec<f64>,
    /// `lag_cum[k][i]` = sum over `j < i` of `x[j] * x[j + k]`.
    lag_cum: Vec<Vec<f64>>,
}

impl ArMdlCost {
    pub fn new(series: &TimeSeries, p_max: usize, min_len: usize) -> Self {
        let n = series.len();
        let offset = series.mean();
        let x: Vec<f64> = series.values().iter().map(|v| v - offset).collect();
        let mut cum = Vec::with_capacity(n + 1);
        cum.push(0.0);
        let mut acc = 0.0;
        for &v in &x {
            acc += v;
            cum.push(acc);
        }
        let lag_cum = (0..=p_max)
            .map(|k| {
                let mut out = Vec::with_capacity(n.saturating_sub(k) + 1);
                out.push(0.0);
                let mut acc = 0.0;
                for j in 0..n.saturating_sub(k) {
                    acc += x[j] * x[j + k];
                    out.push(acc);
                }
                out
            })
            .collect();
        Self {
            p_max,
            min_len,
            floor: variance_floor(series.variance()),
            cum,
            lag_cum,
        }
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    /// Biased, mean-centred sample autocovariances of `start..end` for lags
    /// `0..out.len()`. Lags at or beyond the segment length are zero.
    pub fn autocovariances(&self, start: usize, end: usize, out: &mut [f64]) {
        let len = end - start;
        let lf = len as f64;
        let mean = (self.cum[end] - self.cum[start]) / lf;
        for (k, slot) in out.iter_mut().enumerate() {
            if k >= len {
                *slot = 0.0;
                continue;
            }
            let prods = &self.lag_cum[k];
            let cross = prods[end - k] - prods[start];
            let head = self.cum[end - k] - self.cum[start];
            let tail = self.cum[end] - self.cum[start + k];
            let num = cross - mean * (head + tail) + (len - k) as f64 * mean * mean;
            *slot = num / lf;
        }
        // Same cancellation guard as the Gaussian costs: a constant segment
        // must give exactly zero variance.
        let sum_sq = self.lag_cum[0][end] - self.lag_cum[0][start];
        if out[0] * lf <= 64.0 * f64::EPSILON * sum_sq {
            out.iter_mut().for_each(|v| *v = 0.0);
        }
    }

    fn with_buffers<R>(&self, f: impl FnOnce(&mut [f64], &mut [f64], &mut [f64], &mut [f64]) -> R) -> R {
        let p = self.p_max;
        if p <= STACK_ORDER {
            let mut r = [0.0; STACK_ORDER + 1];
            let mut a = [0.0; STACK_ORDER];
            let mut tmp = [0.0; STACK_ORDER];
            let mut err = [0.0; STACK_ORDER + 1];
            f(&mut r[..=p], &mut a[..p], &mut tmp[..p], &mut err[..=p])
        } else {
            f(
                &mut vec![0.0; p + 1],
                &mut vec![0.0; p],
                &mut vec![0.0; p],
                &mut vec![0.0; p + 1],
            )
        }
    }

    /// MDL cost of `start..end` together with the minimising order.
    pub fn cost_with_order(&self, start: usize, end: usize) -> (f64, usize) {
        self.with_buffers(|r, a, tmp, err| {
            self.autocovariances(start, end, r);
            recurse(r, a, tmp, err);
            let lf = (end - start) as f64;
            let log_len = lf.ln();
            let mut best = (f64::INFINITY, 1);
            for (p, &sigma2) in err.iter().enumerate().skip(1) {
                let pf = p as f64;
                let c = pf.ln()
                    + (pf + 2.0) / 2.0 * log_len
                    + lf / 2.0 * (2.0 * PI * sigma2.max(self.floor)).ln();
                if c < best.0 {
                    best = (c, p);
                }
            }
            best
        })
    }
}

impl SegmentCost for ArMdlCost {
    fn len(&self) -> usize {
        self.cum.len() - 1
    }

    #[inline]
    fn cost(&self, start: usize, end: usize) -> f64 {
        self.cost_with_order(start, end).0
    }

    fn min_segment_length(&self) -> usize {
        self.min_len
    }

    fn pruning_constant(&self) -> f64 {
        mdl_pruning_constant(self.p_max, self.len())
    }

    fn fit(&self, start: usize, end: usize) -> SegmentParams {
        let (_, order) = self.cost_with_order(start, end);
        let mut r = vec![0.0; order + 1];
        self.autocovariances(start, end, &mut r);
        let ld = levinson_durbin(&r, order);
        SegmentParams::Autoregressive {
            order,
            coefficients: ld.coefficients,
            innovation_variance: ld.innovation_variances[order],
        }
    }
}
