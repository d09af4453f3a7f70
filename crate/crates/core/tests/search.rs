// SPDX-License-Identifier: MIT OR Apache-2.0

mod common;

use common::{all_models, piecewise, rel_close};
use pelt_core::search::{
    binary_segmentation, brute_force_oracle, optimal_partitioning, pelt, pelt_with_options,
    segment_neighbourhood, select_penalized, PeltOptions,
};
use pelt_core::simeval::{generate, Growth, SimDesign};
use pelt_core::{
    recompute_cost, CostModel, MeanSpec, PenaltyScheme, PenaltySpec, SegmentCost, TimeSeries,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[test]
fn pelt_op_and_brute_force_agree_on_small_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..120 {
        let n = rng.random_range(6..=14);
        let beta = rng.random_range(0.5..20.0);
        let series = piecewise(n, 1000 + i);
        for model in all_models(1) {
            let cost = model.prepare(&series).unwrap();
            let op = optimal_partitioning(&cost, beta).unwrap().segmentation;
            let pl = pelt(&cost, beta).unwrap().segmentation;
            let bf = brute_force_oracle(&cost, &PenaltyScheme::constant(beta).unwrap()).unwrap();
            assert_eq!(op.changepoints, bf.changepoints, "{} n={n} beta={beta}", model.name());
            assert_eq!(pl.changepoints, op.changepoints, "{} n={n} beta={beta}", model.name());
            assert!(rel_close(op.total_cost, bf.total_cost, 1e-9));
            assert!(rel_close(pl.total_cost, op.total_cost, 1e-9));
        }
    }
}

#[test]
fn pruning_leaves_the_recursion_unchanged() {
    for (i, n) in [200, 500, 1000].into_iter().enumerate() {
        let series = piecewise(n, 50 + i as u64);
        for model in all_models(3) {
            let cost = model.prepare(&series).unwrap();
            let beta = PenaltySpec::Sic.resolve(&model, n).unwrap().beta();
            let pruned = pelt(&cost, beta).unwrap();
            let full = pelt_with_options(&cost, beta, PeltOptions { prune: false, ..Default::default() }).unwrap();
            let op = optimal_partitioning(&cost, beta).unwrap();
            for s in 0..=n {
                let (a, b, c) = (pruned.state.f[s], full.state.f[s], op.state.f[s]);
                if c.is_finite() {
                    assert!(rel_close(a, c, 1e-9) && rel_close(b, c, 1e-9), "{} s={s}", model.name());
                } else {
                    assert!(a.is_infinite() && b.is_infinite());
                }
            }
            assert_eq!(pruned.segmentation.changepoints, op.segmentation.changepoints);
            assert!(pruned.stats.cost_evaluations <= full.stats.cost_evaluations);
        }
    }
}

#[test]
fn longer_minimum_segments_are_respected_and_exact() {
    let series = piecewise(300, 7);
    for model in all_models(2) {
        let l = model.min_segment_length() + 5;
        let model = model.with_min_segment_length(l).unwrap();
        let cost = model.prepare(&series).unwrap();
        for beta in [0.0, 1.0, 10.0] {
            let op = optimal_partitioning(&cost, beta).unwrap().segmentation;
            let pl = pelt(&cost, beta).unwrap().segmentation;
            let bs = binary_segmentation(&cost, beta, None).unwrap();
            assert_eq!(pl.changepoints, op.changepoints, "{} beta={beta}", model.name());
            for seg in [&op, &pl, &bs] {
                seg.check_min_length(l).unwrap();
            }
        }
        let sn = segment_neighbourhood(&cost, 5).unwrap();
        for seg in sn.iter().flatten() {
            seg.check_min_length(l).unwrap();
        }
    }
}

#[test]
fn small_series_with_long_minimum_segments_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..60 {
        let n = rng.random_range(8..=14);
        let series = piecewise(n, 400 + i);
        let model = CostModel::mean_var().with_min_segment_length(3).unwrap();
        let cost = model.prepare(&series).unwrap();
        let beta = rng.random_range(0.5..10.0);
        let pl = pelt(&cost, beta).unwrap().segmentation;
        let bf = brute_force_oracle(&cost, &PenaltyScheme::constant(beta).unwrap()).unwrap();
        assert_eq!(pl.changepoints, bf.changepoints);
    }
}

#[test]
fn binary_segmentation_never_beats_pelt() {
    for seed in 0..20 {
        let sim = generate(&SimDesign::variance(1000, Growth::Count(10), seed)).unwrap();
        let model = CostModel::var(MeanSpec::Fixed(0.0));
        let cost = model.prepare(&sim.series).unwrap();
        let beta = PenaltySpec::Sic.resolve(&model, 1000).unwrap().beta();
        let pl = pelt(&cost, beta).unwrap().segmentation;
        let bs = binary_segmentation(&cost, beta, None).unwrap();
        assert!(bs.total_cost - pl.total_cost >= -1e-9 * pl.total_cost.abs().max(1.0));
        let sub = binary_segmentation(&cost, beta, Some(pl.count())).unwrap();
        assert!(sub.count() <= pl.count());
        assert!(sub.total_cost - pl.total_cost >= -1e-9 * pl.total_cost.abs().max(1.0));
    }
}

#[test]
fn binary_segmentation_misses_a_short_bump() {
    let model = CostModel::mean();
    let beta = PenaltySpec::Sic.resolve(&model, 60).unwrap().beta();
    let mut strictly_worse = 0;
    for seed in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y: Vec<f64> = (0..60)
            .map(|i| if (27..33).contains(&i) { 4.0 } else { 0.0 } + rng.sample::<f64, _>(StandardNormal))
            .collect();
        let cost = model.prepare(&TimeSeries::new(y).unwrap()).unwrap();
        let pl = pelt(&cost, beta).unwrap().segmentation;
        let op = optimal_partitioning(&cost, beta).unwrap().segmentation;
        assert_eq!(pl.changepoints, op.changepoints);
        let bs = binary_segmentation(&cost, beta, None).unwrap();
        assert!(bs.total_cost >= pl.total_cost - 1e-9);
        if bs.total_cost > pl.total_cost + 1e-9 {
            strictly_worse += 1;
        }
    }
    assert!(strictly_worse > 50, "BS strictly worse on {strictly_worse} of 100");
}

#[test]
fn neighbourhood_agrees_with_penalised_search() {
    for seed in 0..10 {
        let series = piecewise(200, 60 + seed);
        for model in all_models(2) {
            let cost = model.prepare(&series).unwrap();
            let table = segment_neighbourhood(&cost, 12).unwrap();
            // Each entry is the segment-cost sum of a feasible m-split.
            for (m, seg) in table.iter().enumerate() {
                if let Some(seg) = seg {
                    assert_eq!(seg.count(), m);
                    assert!(rel_close(seg.segment_cost_sum(&cost).unwrap(), seg.total_cost, 1e-9));
                }
            }
            // Costs can only fall with more changepoints.
            let finite: Vec<f64> = table.iter().flatten().map(|s| s.total_cost).collect();
            for w in finite.windows(2) {
                assert!(w[1] <= w[0] + 1e-9 * w[0].abs().max(1.0));
            }
            for beta in [2.0, 5.0, 15.0, 40.0] {
                let op = optimal_partitioning(&cost, beta).unwrap().segmentation;
                if op.count() > 12 {
                    continue;
                }
                let picked = select_penalized(&table, &PenaltyScheme::constant(beta).unwrap()).unwrap();
                assert!(rel_close(picked.total_cost, op.total_cost, 1e-9), "{} beta={beta}", model.name());
                // The optimal m-split segment cost equals OP's segment cost.
                let sn_m = table[op.count()].as_ref().unwrap().total_cost;
                assert!(rel_close(sn_m, op.segment_cost_sum(&cost).unwrap(), 1e-9));
            }
        }
    }
}

#[test]
fn changepoint_count_falls_as_penalty_grows() {
    for seed in 0..5 {
        let series = piecewise(400, 70 + seed);
        for model in all_models(2) {
            let cost = model.prepare(&series).unwrap();
            let mut last = usize::MAX;
            for i in 0..20 {
                let beta = 0.5 * 1.4f64.powi(i);
                let m = pelt(&cost, beta).unwrap().segmentation.count();
                assert!(m <= last, "{} beta={beta}: {m} > {last}", model.name());
                last = m;
            }
        }
    }
}

#[test]
fn reported_totals_match_recomputation() {
    for seed in 0..50 {
        let series = piecewise(150, 200 + seed);
        let model = all_models(2)[seed as usize % 4];
        let cost = model.prepare(&series).unwrap();
        let beta = PenaltySpec::Sic.resolve(&model, 150).unwrap().beta();
        let op = optimal_partitioning(&cost, beta).unwrap().segmentation;
        let again = recompute_cost(&series, &op, &model, &PenaltyScheme::constant(beta).unwrap()).unwrap();
        assert!(rel_close(again, op.total_cost, 1e-9));
    }
}

#[test]
fn candidate_set_stays_small_when_changes_grow_with_n() {
    let model = CostModel::var(MeanSpec::Fixed(0.0));
    let mut means = Vec::new();
    for n in [5000, 20000] {
        let mut total = 0.0;
        for seed in 0..10 {
            let sim = generate(&SimDesign::variance(n, Growth::Linear, seed)).unwrap();
            let cost = model.prepare(&sim.series).unwrap();
            let beta = PenaltySpec::Sic.resolve(&model, n).unwrap().beta();
            total += pelt(&cost, beta).unwrap().stats.mean_candidates;
        }
        means.push(total / 10.0);
    }
    assert!(means[0] < 5000.0 / 20.0, "mean |R| {} at n = 5000", means[0]);
    // Four times the data, far less than four times the candidates.
    assert!(means[1] < 2.0 * means[0], "mean |R| {:?}", means);
}

#[test]
fn degenerate_inputs() {
    let flat = TimeSeries::new(vec![1.0; 50]).unwrap();
    for model in all_models(2) {
        let cost = model.prepare(&flat).unwrap();
        let pl = pelt(&cost, 1.0).unwrap().segmentation;
        assert!(pl.changepoints.is_empty(), "{}", model.name());
        assert_eq!(cost.len(), 50);
    }
    let short = TimeSeries::new(vec![1.0, 2.0, 3.0]).unwrap();
    let cost = CostModel::ar_mdl(3).unwrap().prepare(&short);
    assert!(cost.is_err() || pelt(&cost.unwrap(), 1.0).is_err());
    let cost = CostModel::mean().prepare(&short).unwrap();
    assert!(pelt(&cost, -1.0).is_err());
    assert!(pelt(&cost, f64::NAN).is_err());
}
