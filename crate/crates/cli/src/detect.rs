// SPDX-License-Identifier: MIT OR Apache-2.0

use pelt_core::penalty::{concave_iteration, ConcaveOptions, IterationRecord};
use pelt_core::search::{
    binary_segmentation, optimal_partitioning, pelt_with_options, segment_neighbourhood,
    select_penalized, PeltOptions, PruningStats,
};
use pelt_core::{PenaltySpec, Segmentation, TimeSeries};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::input::read_series;
use crate::{write_output, AlgorithmName, DetectArgs, CONVENTION};

#[derive(Debug, Serialize)]
struct ConcaveTrace {
    converged: bool,
    cycled: bool,
    iterations: Vec<IterationRecord>,
}

#[derive(Debug, Serialize)]
struct DetectOutput {
    convention: &'static str,
    algorithm: &'static str,
    model: &'static str,
    penalty: String,
    beta: f64,
    differenced: usize,
    #[serde(flatten)]
    segmentation: Segmentation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pruning_stats: Option<PruningStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    concave: Option<ConcaveTrace>,
}

fn algorithm_name(a: AlgorithmName) -> &'static str {
    match a {
        AlgorithmName::Pelt => "pelt",
        AlgorithmName::Op => "op",
        AlgorithmName::Bs => "bs",
        AlgorithmName::Sn => "sn",
    }
}

pub fn run(args: &DetectArgs) -> CliResult<()> {
    let values = read_series(&args.input, args.column.as_ref())?;
    let mut series = TimeSeries::new(values)?;
    if args.diff > 0 {
        series = series.difference(args.diff)?;
    }
    let model = args.model.build()?;
    let spec: PenaltySpec = args.model.penalty.parse()?;
    let n = series.len();
    let scheme = spec.resolve(&model, n)?;
    let cost = model.prepare(&series)?;

    let mut pruning_stats = None;
    let mut concave = None;
    let segmentation = match (args.algorithm, scheme.linear_beta()) {
        (AlgorithmName::Pelt, Some(beta)) => {
            let options = PeltOptions {
                verify_samples: args.verify_pruning,
                verify_seed: args.seed,
                ..PeltOptions::default()
            };
            let solution = pelt_with_options(&cost, beta, options)?;
            pruning_stats = Some(solution.stats);
            solution.segmentation
        }
        (AlgorithmName::Pelt, None) => {
            let result = concave_iteration(&cost, &scheme, ConcaveOptions::default())?;
            if !result.converged {
                log::warn!("concave iteration stopped without converging; returning the best iterate");
            }
            concave = Some(ConcaveTrace {
                converged: result.converged,
                cycled: result.cycled,
                iterations: result.trace,
            });
            result.segmentation
        }
        (AlgorithmName::Op, Some(beta)) => optimal_partitioning(&cost, beta)?.segmentation,
        (AlgorithmName::Bs, Some(beta)) => binary_segmentation(&cost, beta, None)?,
        (AlgorithmName::Sn, _) => {
            let table = segment_neighbourhood(&cost, args.q)?;
            select_penalized(&table, &scheme).ok_or_else(|| {
                CliError::Infeasible(format!("no feasible segmentation with at most {} changepoints", args.q))
            })?
        }
        (AlgorithmName::Op | AlgorithmName::Bs, None) => {
            return Err(CliError::Usage(
                "concave penalties need --algorithm pelt or sn".into(),
            ))
        }
    };
    let segmentation = segmentation.with_segments(&cost)?;

    let output = DetectOutput {
        convention: CONVENTION,
        algorithm: algorithm_name(args.algorithm),
        model: model.name(),
        penalty: spec.to_string(),
        beta: scheme.beta(),
        differenced: args.diff,
        segmentation,
        pruning_stats,
        concave,
    };
    let mut text = serde_json::to_string_pretty(&output).map_err(|e| CliError::Output(e.to_string()))?;
    text.push('\n');
    write_output(args.out.as_deref(), &text)
}
