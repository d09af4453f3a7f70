// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fmt;
use std::io;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::design::{generate, SimDesign};
use super::evaluate::{evaluate, ThetaRule};
use crate::costs::{CostModel, PreparedCost};
use crate::error::{Error, Result};
use crate::penalty::PenaltySpec;
use crate::search::{binary_segmentation, optimal_partitioning, pelt};
use crate::segmentation::Segmentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Pelt,
    Op,
    /// Binary segmentation stopped by the penalty.
    Bs,
    /// Binary segmentation forced to PELT's changepoint count.
    SubBs,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Pelt => "pelt",
            Self::Op => "op",
            Self::Bs => "bs",
            Self::SubBs => "subbs",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pelt" => Ok(Self::Pelt),
            "op" => Ok(Self::Op),
            "bs" => Ok(Self::Bs),
            "subbs" => Ok(Self::SubBs),
            other => Err(Error::invalid_parameter(format!(
                "unknown algorithm '{other}'; expected pelt, op, bs or subbs"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    /// Repetition `r` uses `design.seed + r`.
    pub design: SimDesign,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub scenarios: Vec<Scenario>,
    pub algorithms: Vec<Algorithm>,
    pub model: CostModel,
    /// Must resolve to a linear penalty.
    pub penalty: PenaltySpec,
    pub reps: usize,
    /// Detection window for counting a changepoint as found.
    pub window: usize,
    pub theta_rule: Option<ThetaRule>,
    /// Run repetitions on the rayon pool. Timings are then noisier.
    pub parallel: bool,
    /// Series up to this length are timed as the median of three runs.
    pub repeat_timing_up_to: usize,
}

impl BenchConfig {
    pub fn new(
        scenarios: Vec<Scenario>,
        algorithms: Vec<Algorithm>,
        model: CostModel,
        penalty: PenaltySpec,
        reps: usize,
    ) -> Self {
        Self {
            scenarios,
            algorithms,
            model,
            penalty,
            reps,
            window: 10,
            theta_rule: None,
            parallel: false,
            repeat_timing_up_to: 2000,
        }
    }
}

/// One algorithm on one repetition; one CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub scenario: String,
    pub n: usize,
    pub m: usize,
    pub algorithm: String,
    pub rep: usize,
    pub runtime_s: f64,
    pub cost: f64,
    pub mse: Option<f64>,
    pub true_det: usize,
    pub false_det: usize,
    /// `cost - cost(PELT)` on the same repetition, when PELT ran.
    #[serde(skip)]
    pub cost_gap: Option<f64>,
    #[serde(skip)]
    pub detected: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepError {
    pub scenario: String,
    pub rep: usize,
    pub algorithm: Option<Algorithm>,
    pub error: Error,
}

/// Means and standard errors per `(scenario, algorithm)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub scenario: String,
    pub n: usize,
    pub algorithm: String,
    pub reps: usize,
    pub runtime_mean: f64,
    pub runtime_se: f64,
    pub cost_mean: f64,
    pub cost_se: f64,
    pub cost_gap_mean: Option<f64>,
    pub mse_mean: Option<f64>,
    pub mse_se: Option<f64>,
    pub true_det_mean: f64,
    pub false_det_mean: f64,
}

#[derive(Debug, Clone, Default)]
pub struct BenchReport {
    pub records: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
    pub errors: Vec<RepError>,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

fn run_algorithm(
    algorithm: Algorithm,
    cost: &PreparedCost,
    beta: f64,
    pelt_count: &mut Option<usize>,
) -> Result<Segmentation> {
    match algorithm {
        Algorithm::Pelt => pelt(cost, beta).map(|s| s.segmentation),
        Algorithm::Op => optimal_partitioning(cost, beta).map(|s| s.segmentation),
        Algorithm::Bs => binary_segmentation(cost, beta, None),
        Algorithm::SubBs => {
            let m = match *pelt_count {
                Some(m) => m,
                None => {
                    let m = pelt(cost, beta)?.segmentation.count();
                    *pelt_count = Some(m);
                    m
                }
            };
            binary_segmentation(cost, beta, Some(m))
        }
    }
}

fn run_rep(config: &BenchConfig, scenario: &Scenario, rep: usize) -> (Vec<RunRecord>, Vec<RepError>) {
    let fail = |algorithm, error| RepError {
        scenario: scenario.name.clone(),
        rep,
        algorithm,
        error,
    };
    let design = scenario.design.with_seed(scenario.design.seed.wrapping_add(rep as u64));
    let prepared = generate(&design).and_then(|sim| {
        let cost = config.model.prepare(&sim.series)?;
        let beta = config
            .penalty
            .resolve(&config.model, design.n)?
            .linear_beta()
            .ok_or_else(|| Error::invalid_parameter("benchmarks need a linear penalty"))?;
        Ok((sim, cost, beta))
    });
    let (sim, cost, beta) = match prepared {
        Ok(p) => p,
        Err(e) => return (Vec::new(), vec![fail(None, e)]),
    };

    let mut records = Vec::with_capacity(config.algorithms.len());
    let mut errors = Vec::new();
    let mut pelt_count = None;
    let mut pelt_cost = None;
    let repeats = if design.n <= config.repeat_timing_up_to { 3 } else { 1 };
    for &algorithm in &config.algorithms {
        let mut timings = Vec::with_capacity(repeats);
        let mut outcome = None;
        for _ in 0..repeats {
            let started = Instant::now();
            let result = run_algorithm(algorithm, &cost, beta, &mut pelt_count);
            timings.push(started.elapsed().as_secs_f64());
            outcome = Some(result);
        }
        let seg = match outcome.expect("at least one timing run") {
            Ok(seg) => seg,
            Err(e) => {
                errors.push(fail(Some(algorithm), e));
                continue;
            }
        };
        if algorithm == Algorithm::Pelt {
            pelt_count = Some(seg.count());
            pelt_cost = Some(seg.total_cost);
        }
        match evaluate(&sim.series, &sim.truth, &seg, config.window, config.theta_rule) {
            Ok(report) => records.push(RunRecord {
                scenario: scenario.name.clone(),
                n: design.n,
                m: sim.truth.changepoints.len(),
                algorithm: algorithm.name().to_string(),
                rep,
                runtime_s: median(timings),
                cost: seg.total_cost,
                mse: report.mse,
                true_det: report.true_detected,
                false_det: report.false_detected,
                cost_gap: None,
                detected: seg.count(),
            }),
            Err(e) => errors.push(fail(Some(algorithm), e)),
        }
    }
    if let Some(base) = pelt_cost {
        for r in &mut records {
            r.cost_gap = Some(r.cost - base);
        }
    }
    (records, errors)
}

/// Generate every scenario `reps` times, run each algorithm and collect
/// per-run records plus per-cell aggregates. Failures are recorded in
/// [`BenchReport::errors`] and do not stop the run.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchReport> {
    if config.reps == 0 {
        return Err(Error::invalid_parameter("reps must be at least 1"));
    }
    if config.algorithms.is_empty() {
        return Err(Error::invalid_parameter("no algorithms selected"));
    }
    if config.penalty.is_concave() {
        return Err(Error::invalid_parameter(
            "benchmarks compare linear-penalty searches; concave penalties are not supported",
        ));
    }
    let jobs: Vec<(&Scenario, usize)> = config
        .scenarios
        .iter()
        .flat_map(|s| (0..config.reps).map(move |r| (s, r)))
        .collect();
    let outcomes: Vec<_> = if config.parallel {
        jobs.par_iter().map(|&(s, r)| run_rep(config, s, r)).collect()
    } else {
        jobs.iter().map(|&(s, r)| run_rep(config, s, r)).collect()
    };

    let mut report = BenchReport::default();
    for (records, errors) in outcomes {
        report.records.extend(records);
        report.errors.extend(errors);
    }
    report.summary = summarize(config, &report.records);
    Ok(report)
}

fn summarize(config: &BenchConfig, records: &[RunRecord]) -> Vec<SummaryRow> {
    let mut rows = Vec::new();
    for scenario in &config.scenarios {
        for algorithm in &config.algorithms {
            let cell: Vec<&RunRecord> = records
                .iter()
                .filter(|r| r.scenario == scenario.name && r.algorithm == algorithm.name())
                .collect();
            if cell.is_empty() {
                continue;
            }
            let pick = |f: fn(&RunRecord) -> f64| cell.iter().map(|r| f(r)).collect::<Vec<_>>();
            let (runtime_mean, runtime_se) = mean_se(&pick(|r| r.runtime_s));
            let (cost_mean, cost_se) = mean_se(&pick(|r| r.cost));
            let gaps: Option<Vec<f64>> = cell.iter().map(|r| r.cost_gap).collect();
            let mses: Option<Vec<f64>> = cell.iter().map(|r| r.mse).collect();
            let mse = mses.map(|m| mean_se(&m));
            rows.push(SummaryRow {
                scenario: scenario.name.clone(),
                n: scenario.design.n,
                algorithm: algorithm.name().to_string(),
                reps: cell.len(),
                runtime_mean,
                runtime_se,
                cost_mean,
                cost_se,
                cost_gap_mean: gaps.map(|g| mean_se(&g).0),
                mse_mean: mse.map(|m| m.0),
                mse_se: mse.map(|m| m.1),
                true_det_mean: mean_se(&pick(|r| r.true_det as f64)).0,
                false_det_mean: mean_se(&pick(|r| r.false_det as f64)).0,
            });
        }
    }
    rows
}

/// Write records as CSV with columns
/// `scenario,n,m,algorithm,rep,runtime_s,cost,mse,true_det,false_det`.
pub fn write_csv<W: io::Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    if records.is_empty() {
        writer
            .write_record([
                "scenario", "n", "m", "algorithm", "rep", "runtime_s", "cost", "mse", "true_det",
                "false_det",
            ])
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    for r in records {
        writer.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    writer.flush().map_err(|e| Error::Io(e.to_string()))
}
