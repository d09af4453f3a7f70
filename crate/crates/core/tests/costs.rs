// SPDX-License-Identifier: MIT OR Apache-2.0

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use pelt_core::costs::{levinson_durbin, ArMdlCost};
use pelt_core::search::check_subadditivity;
use pelt_core::{CostModel, MeanSpec, SegmentCost, TimeSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn noise(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let scale = if (i / 37) % 2 == 0 { 1.0 } else { 3.0 };
            2.0 + scale * rng.sample::<f64, _>(StandardNormal)
        })
        .collect()
}

fn ar1(n: usize, phi: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = 0.0;
    let mut out = Vec::with_capacity(n);
    for i in 0..n + 200 {
        x = phi * x + rng.sample::<f64, _>(StandardNormal);
        if i >= 200 {
            out.push(x);
        }
    }
    out
}

fn mean(y: &[f64]) -> f64 {
    y.iter().sum::<f64>() / y.len() as f64
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn segments(n: usize, min_len: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..300)
        .map(|_| {
            let a = rng.random_range(0..=n - min_len);
            let b = rng.random_range(a + min_len..=n);
            (a, b)
        })
        .collect()
}

#[test]
fn mean_cost_is_residual_sum_of_squares() {
    let y = noise(400, 1);
    let cost = CostModel::mean().prepare(&TimeSeries::new(y.clone()).unwrap()).unwrap();
    for (a, b) in segments(y.len(), 1, 2) {
        let seg = &y[a..b];
        let m = mean(seg);
        let rss: f64 = seg.iter().map(|v| (v - m).powi(2)).sum();
        assert!(rel_close(cost.cost(a, b), rss, 1e-9), "({a},{b})");
    }
}

#[test]
fn variance_cost_matches_gaussian_likelihood() {
    let y = noise(400, 3);
    for mu in [0.0, 2.0] {
        let cost = CostModel::var(MeanSpec::Fixed(mu))
            .prepare(&TimeSeries::new(y.clone()).unwrap())
            .unwrap();
        for (a, b) in segments(y.len(), 2, 4) {
            let seg = &y[a..b];
            let len = seg.len() as f64;
            let s2 = seg.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / len;
            let expected = len * ((2.0 * PI).ln() + s2.ln() + 1.0);
            assert!(rel_close(cost.cost(a, b), expected, 1e-9));
        }
    }
}

#[test]
fn series_mean_option_uses_the_sample_mean() {
    let y = noise(200, 5);
    let s = TimeSeries::new(y.clone()).unwrap();
    let auto = CostModel::var(MeanSpec::SeriesMean).prepare(&s).unwrap();
    let fixed = CostModel::var(MeanSpec::Fixed(mean(&y))).prepare(&s).unwrap();
    for (a, b) in segments(y.len(), 2, 6) {
        assert!(rel_close(auto.cost(a, b), fixed.cost(a, b), 1e-12));
    }
}

#[test]
fn mean_var_cost_matches_gaussian_likelihood() {
    let y = noise(400, 7);
    let cost = CostModel::mean_var().prepare(&TimeSeries::new(y.clone()).unwrap()).unwrap();
    for (a, b) in segments(y.len(), 2, 8) {
        let seg = &y[a..b];
        let len = seg.len() as f64;
        let m = mean(seg);
        let s2 = seg.iter().map(|v| (v - m).powi(2)).sum::<f64>() / len;
        let expected = len * ((2.0 * PI).ln() + s2.ln() + 1.0);
        assert!(rel_close(cost.cost(a, b), expected, 1e-9));
    }
}

/// Yule-Walker by a dense solve, independent of the Levinson recursion.
fn yule_walker_sigma2(seg: &[f64], p: usize) -> f64 {
    let len = seg.len();
    let m = mean(seg);
    let r: Vec<f64> = (0..=p)
        .map(|k| {
            (0..len.saturating_sub(k))
                .map(|j| (seg[j] - m) * (seg[j + k] - m))
                .sum::<f64>()
                / len as f64
        })
        .collect();
    let toeplitz = DMatrix::from_fn(p, p, |i, j| r[i.abs_diff(j)]);
    let rhs = DVector::from_iterator(p, r[1..=p].iter().copied());
    let phi = toeplitz.lu().solve(&rhs).expect("non-singular");
    r[0] - phi.dot(&rhs)
}

fn ar_mdl_oracle(seg: &[f64], p_max: usize) -> (f64, usize) {
    let len = seg.len() as f64;
    (1..=p_max)
        .map(|p| {
            let pf = p as f64;
            let s2 = yule_walker_sigma2(seg, p);
            let c = pf.ln() + (pf + 2.0) / 2.0 * len.ln() + len / 2.0 * (2.0 * PI * s2).ln();
            (c, p)
        })
        .fold((f64::INFINITY, 0), |best, c| if c.0 < best.0 { c } else { best })
}

#[test]
fn ar_mdl_cost_matches_dense_yule_walker() {
    let mut y = ar1(300, 0.7, 9);
    y.extend(ar1(300, -0.4, 10).iter().map(|v| v + 1.5));
    let p_max = 4;
    let cost = ArMdlCost::new(&TimeSeries::new(y.clone()).unwrap(), p_max, p_max + 2);
    for (a, b) in segments(y.len(), p_max + 2, 11) {
        let (expected, order) = ar_mdl_oracle(&y[a..b], p_max);
        let (got, got_order) = cost.cost_with_order(a, b);
        assert!(rel_close(got, expected, 1e-8), "({a},{b}): {got} vs {expected}");
        if (got - expected).abs() > 1e-6 {
            assert_eq!(got_order, order);
        }
    }
}

#[test]
fn levinson_matches_dense_solve() {
    let y = ar1(500, 0.5, 12);
    let m = mean(&y);
    let r: Vec<f64> = (0..=5)
        .map(|k| (0..y.len() - k).map(|j| (y[j] - m) * (y[j + k] - m)).sum::<f64>() / y.len() as f64)
        .collect();
    let ld = levinson_durbin(&r, 5);
    let toeplitz = DMatrix::from_fn(5, 5, |i, j| r[i.abs_diff(j)]);
    let rhs = DVector::from_iterator(5, r[1..].iter().copied());
    let phi = toeplitz.lu().solve(&rhs).unwrap();
    for k in 0..5 {
        assert!((ld.coefficients[k] - phi[k]).abs() < 1e-10);
    }
    assert!((ld.innovation_variances[5] - (r[0] - phi.dot(&rhs))).abs() < 1e-10);
}

#[test]
fn ar_order_selection_picks_one_for_ar1() {
    let p_max = 3;
    let mut order_one = 0;
    for seed in 0..40 {
        let y = ar1(500, 0.9, 100 + seed);
        let cost = ArMdlCost::new(&TimeSeries::new(y).unwrap(), p_max, p_max + 2);
        if cost.cost_with_order(0, 500).1 == 1 {
            order_one += 1;
        }
    }
    assert!(order_one > 20, "order 1 chosen in only {order_one} of 40 runs");
}

#[test]
fn gaussian_costs_are_subadditive_with_zero_constant() {
    let y = noise(1000, 13);
    let s = TimeSeries::new(y).unwrap();
    for model in [CostModel::mean(), CostModel::var(MeanSpec::Fixed(0.0)), CostModel::mean_var()] {
        let cost = model.prepare(&s).unwrap();
        assert_eq!(cost.pruning_constant(), 0.0);
        let report = check_subadditivity(&cost, 1000, 14);
        assert_eq!(report.checked, 1000);
        assert_eq!(report.violations, 0, "{}: worst {}", model.name(), report.worst_excess);
    }
}

#[test]
fn costs_are_invariant_under_shifting_mean_models() {
    let y = noise(300, 15);
    let shifted: Vec<f64> = y.iter().map(|v| v + 1e4).collect();
    for model in [CostModel::mean(), CostModel::mean_var()] {
        let a = model.prepare(&TimeSeries::new(y.clone()).unwrap()).unwrap();
        let b = model.prepare(&TimeSeries::new(shifted.clone()).unwrap()).unwrap();
        for (s, e) in segments(300, 2, 16) {
            assert!(rel_close(a.cost(s, e), b.cost(s, e), 1e-7));
        }
    }
}
