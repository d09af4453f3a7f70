// SPDX-License-Identifier: MIT OR Apache-2.0

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Samples discarded before the first AR segment.
const AR_BURN_IN: usize = 100;
/// Characteristic roots must lie beyond this modulus.
const AR_ROOT_MARGIN: f64 = 1.001;

/// How the number of changepoints scales with `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    /// `m = n / 100`.
    Linear,
    /// `m = floor(sqrt(n) / 4)`.
    Sqrt,
    /// `m = 2`.
    Fixed,
    Count(usize),
}

impl Growth {
    pub fn changepoints(&self, n: usize) -> usize {
        match *self {
            Self::Linear => n / 100,
            Self::Sqrt => ((n as f64).sqrt() / 4.0).floor() as usize,
            Self::Fixed => 2,
            Self::Count(m) => m,
        }
    }
}

/// Distribution of per-segment parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SegmentLaw {
    /// Zero-mean Gaussian segments with variance drawn from
    /// `LogNormal(0, sd_log)`.
    LogNormalVariance { sd_log: f64 },
    /// AR segments of order uniform on `0..=max_order`, standard normal
    /// coefficients redrawn until stationary, unit innovation variance.
    Autoregressive { max_order: usize },
}

impl SegmentLaw {
    /// `sd_log = log(10) / 2`, putting about 95% of variances in [1/10, 10].
    pub fn variance_default() -> Self {
        Self::LogNormalVariance {
            sd_log: 10f64.ln() / 2.0,
        }
    }

    pub fn ar_default() -> Self {
        Self::Autoregressive { max_order: 3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimDesign {
    pub n: usize,
    pub growth: Growth,
    /// Minimum distance between consecutive changepoints.
    pub min_gap: usize,
    pub law: SegmentLaw,
    pub seed: u64,
}

impl SimDesign {
    /// Change-in-variance study: gap 30, log-normal variances.
    pub fn variance(n: usize, growth: Growth, seed: u64) -> Self {
        Self {
            n,
            growth,
            min_gap: 30,
            law: SegmentLaw::variance_default(),
            seed,
        }
    }

    /// Autoregressive study: gap 50, orders 0 to 3.
    pub fn autoregressive(n: usize, growth: Growth, seed: u64) -> Self {
        Self {
            n,
            growth,
            min_gap: 50,
            law: SegmentLaw::ar_default(),
            seed,
        }
    }

    pub fn changepoints(&self) -> usize {
        self.growth.changepoints(self.n)
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

/// True parameters of one generated segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrueParams {
    Gaussian {
        mean: f64,
        variance: f64,
    },
    Autoregressive {
        order: usize,
        coefficients: Vec<f64>,
        innovation_variance: f64,
    },
}

/// Ground truth of a simulated series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Truth {
    pub n: usize,
    pub changepoints: Vec<usize>,
    /// One entry per segment, in order.
    pub segments: Vec<TrueParams>,
}

#[derive(Debug, Clone)]
pub struct Simulated {
    pub series: TimeSeries,
    pub truth: Truth,
}

/// Draw `m` changepoints uniformly from `3..=n-3` with consecutive
/// changepoints at least `min_gap` apart.
///
/// Subtracting `i * (min_gap - 1)` from the `i`-th changepoint maps such
/// configurations one-to-one onto plain `m`-subsets of a shorter range, so
/// sampling a subset there is uniform over valid configurations.
pub fn place_changepoints<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    min_gap: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    if min_gap == 0 {
        return Err(Error::InfeasibleDesign("min_gap must be at least 1".into()));
    }
    let (lo, hi) = (3usize, n.saturating_sub(3));
    let span = (hi + 1).saturating_sub(lo);
    let slack = (m - 1) * (min_gap - 1);
    if n < 6 || span < slack + m {
        return Err(Error::InfeasibleDesign(format!(
            "{m} changepoints with gaps of at least {min_gap} do not fit in n = {n}"
        )));
    }
    let mut picks = index::sample(rng, span - slack, m).into_vec();
    picks.sort_unstable();
    Ok(picks
        .into_iter()
        .enumerate()
        .map(|(i, z)| lo + z + i * (min_gap - 1))
        .collect())
}

/// Stationarity with margin: every root of `1 - sum phi_k z^k` has modulus
/// above 1.001. Checked by stepping the Levinson recursion down on the
/// rescaled polynomial and requiring every reflection coefficient inside
/// the unit interval.
pub fn ar_is_stationary(phi: &[f64]) -> bool {
    let mut a: Vec<f64> = phi
        .iter()
        .enumerate()
        .map(|(k, &c)| c * AR_ROOT_MARGIN.powi(k as i32 + 1))
        .collect();
    while let Some(&kappa) = a.last() {
        if kappa.abs() >= 1.0 || kappa.is_nan() {
            return false;
        }
        let k = a.len();
        let denom = 1.0 - kappa * kappa;
        a = (0..k - 1)
            .map(|j| (a[j] + kappa * a[k - 2 - j]) / denom)
            .collect();
    }
    true
}

fn segment_bounds(n: usize, changepoints: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    std::iter::once(0)
        .chain(changepoints.iter().copied())
        .zip(changepoints.iter().copied().chain(std::iter::once(n)))
}

pub fn generate_variance_series(design: &SimDesign) -> Result<Simulated> {
    let SegmentLaw::LogNormalVariance { sd_log } = design.law else {
        return Err(Error::InfeasibleDesign(
            "variance generator needs a log-normal variance law".into(),
        ));
    };
    let law = LogNormal::new(0.0, sd_log)
        .map_err(|e| Error::InfeasibleDesign(format!("bad log-normal scale: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(design.seed);
    let changepoints = place_changepoints(design.n, design.changepoints(), design.min_gap, &mut rng)?;
    let mut values = Vec::with_capacity(design.n);
    let mut segments = Vec::with_capacity(changepoints.len() + 1);
    for (a, b) in segment_bounds(design.n, &changepoints) {
        let variance: f64 = law.sample(&mut rng);
        let sd = variance.sqrt();
        values.extend((a..b).map(|_| sd * rng.sample::<f64, _>(StandardNormal)));
        segments.push(TrueParams::Gaussian {
            mean: 0.0,
            variance,
        });
    }
    Ok(Simulated {
        series: TimeSeries::new(values)?,
        truth: Truth {
            n: design.n,
            changepoints,
            segments,
        },
    })
}

fn draw_stationary<R: Rng + ?Sized>(order: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let phi: Vec<f64> = (0..order).map(|_| rng.sample(StandardNormal)).collect();
        if ar_is_stationary(&phi) {
            return phi;
        }
    }
}

/// Piecewise AR series. The first segment starts after a burn-in; later
/// segments continue from the last values already generated.
pub fn generate_ar_series(design: &SimDesign) -> Result<Simulated> {
    let SegmentLaw::Autoregressive { max_order } = design.law else {
        return Err(Error::InfeasibleDesign(
            "AR generator needs an autoregressive law".into(),
        ));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(design.seed);
    let changepoints = place_changepoints(design.n, design.changepoints(), design.min_gap, &mut rng)?;
    let mut history: Vec<f64> = Vec::with_capacity(design.n + AR_BURN_IN);
    let mut segments = Vec::with_capacity(changepoints.len() + 1);
    for (i, (a, b)) in segment_bounds(design.n, &changepoints).enumerate() {
        let order = rng.random_range(0..=max_order);
        let phi = draw_stationary(order, &mut rng);
        let steps = (b - a) + if i == 0 { AR_BURN_IN } else { 0 };
        for _ in 0..steps {
            let t = history.len();
            let mut x: f64 = rng.sample(StandardNormal);
            for (j, c) in phi.iter().enumerate() {
                if t > j {
                    x += c * history[t - 1 - j];
                }
            }
            history.push(x);
        }
        segments.push(TrueParams::Autoregressive {
            order,
            coefficients: phi,
            innovation_variance: 1.0,
        });
    }
    let values = history.split_off(AR_BURN_IN);
    Ok(Simulated {
        series: TimeSeries::new(values)?,
        truth: Truth {
            n: design.n,
            changepoints,
            segments,
        },
    })
}

/// Dispatch on the design's segment law.
pub fn generate(design: &SimDesign) -> Result<Simulated> {
    match design.law {
        SegmentLaw::LogNormalVariance { .. } => generate_variance_series(design),
        SegmentLaw::Autoregressive { .. } => generate_ar_series(design),
    }
}
