// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fs::File;
use std::io::BufWriter;

use pelt_core::simeval::{run_benchmark, write_csv, Algorithm, BenchConfig, Scenario, SummaryRow, ThetaRule};
use pelt_core::{MeanSpec, PenaltySpec};

use crate::error::{CliError, CliResult};
use crate::{BenchArgs, LawName, ModelArgs, ModelName, Mu};

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |x| format!("{x:.4}"))
}

fn print_summary(rows: &[SummaryRow]) {
    println!(
        "{:<24} {:<6} {:>5} {:>12} {:>12} {:>10} {:>10} {:>9} {:>9}",
        "scenario", "alg", "reps", "runtime_s", "cost", "cost_gap", "mse", "true_det", "false_det"
    );
    for r in rows {
        println!(
            "{:<24} {:<6} {:>5} {:>12.4e} {:>12.3} {:>10} {:>10} {:>9.2} {:>9.2}",
            r.scenario,
            r.algorithm,
            r.reps,
            r.runtime_mean,
            r.cost_mean,
            fmt_opt(r.cost_gap_mean),
            fmt_opt(r.mse_mean),
            r.true_det_mean,
            r.false_det_mean
        );
    }
}

pub fn run(args: &BenchArgs) -> CliResult<()> {
    let spec: PenaltySpec = args.penalty.parse()?;
    if spec.is_concave() {
        return Err(CliError::Usage("bench takes a linear penalty (sic, aic or manual:<beta>)".into()));
    }
    let model = ModelArgs {
        model: args.model,
        p_max: args.p_max,
        mu: args.mu,
        min_seg: args.min_seg,
        penalty: args.penalty.clone(),
    }
    .build()?;
    let algorithms = args
        .algorithms
        .iter()
        .map(|a| a.parse::<Algorithm>())
        .collect::<Result<Vec<_>, _>>()?;
    // Parameter MSE is defined against Gaussian truths only.
    let theta_rule = match (args.design.law, args.model) {
        (LawName::Ar, _) | (_, ModelName::ArMdl) => None,
        (LawName::Variance, ModelName::Var) => Some(ThetaRule::Variance {
            mean: match model.kind() {
                pelt_core::CostKind::Var { mean: MeanSpec::Fixed(mu) } => mu,
                _ => 0.0,
            },
        }),
        (LawName::Variance, ModelName::Mean) => Some(ThetaRule::Mean),
        (LawName::Variance, ModelName::Meanvar) => Some(ThetaRule::MeanVariance),
    };
    if matches!(args.mu, Mu::Auto) && args.model == ModelName::Var {
        log::info!("var model uses each series' own mean; MSE is scored against mean 0");
    }
    let law = match args.design.law {
        LawName::Variance => "var",
        LawName::Ar => "ar",
    };
    let scenarios = args
        .n
        .iter()
        .map(|&n| {
            let design = args.design.design(n);
            Scenario {
                name: format!("{law}-m{}-n{n}", design.changepoints()),
                design,
            }
        })
        .collect();
    let mut config = BenchConfig::new(scenarios, algorithms, model, spec, args.reps);
    config.window = args.window;
    config.theta_rule = theta_rule;
    config.parallel = args.parallel;

    let report = run_benchmark(&config)?;
    for e in &report.errors {
        let alg = e.algorithm.map_or_else(|| "generation".to_string(), |a| a.to_string());
        log::warn!("{} rep {} ({alg}): {}", e.scenario, e.rep, e.error);
    }
    if report.records.is_empty() {
        return Err(match report.errors.into_iter().next() {
            Some(e) => CliError::from(e.error),
            None => CliError::Usage("nothing to run".into()),
        });
    }
    let file = File::create(&args.out).map_err(|e| CliError::Output(format!("{}: {e}", args.out.display())))?;
    write_csv(&report.records, BufWriter::new(file))?;
    print_summary(&report.summary);
    Ok(())
}
