// SPDX-License-Identifier: MIT OR Apache-2.0

#![allow(dead_code)]

use pelt_core::{CostModel, MeanSpec, TimeSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Piecewise Gaussian noise with a random mean and scale on each of a few
/// random segments.
pub fn piecewise(n: usize, seed: u64) -> TimeSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(n);
    while values.len() < n {
        let len = rng.random_range(2..=n.max(3) / 2 + 2);
        let mu = rng.random_range(-3.0..3.0);
        let sd = rng.random_range(0.3..3.0);
        for _ in 0..len.min(n - values.len()) {
            values.push(mu + sd * rng.sample::<f64, _>(StandardNormal));
        }
    }
    TimeSeries::new(values).unwrap()
}

/// Every cost model, with AR-MDL at the given maximum order.
pub fn all_models(p_max: usize) -> Vec<CostModel> {
    vec![
        CostModel::mean(),
        CostModel::var(MeanSpec::Fixed(0.0)),
        CostModel::mean_var(),
        CostModel::ar_mdl(p_max).unwrap(),
    ]
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
