// SPDX-License-Identifier: MIT OR Apache-2.0

use std::path::{Path, PathBuf};

use pelt_core::simeval::{generate, SimDesign, Truth};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::{SimulateArgs, CONVENTION};

#[derive(Debug, Serialize)]
struct TruthFile<'a> {
    convention: &'static str,
    design: &'a SimDesign,
    #[serde(flatten)]
    truth: &'a Truth,
}

/// `dir/name.csv` → `dir/name.truth.json`.
pub fn truth_path(series_path: &Path) -> PathBuf {
    let stem = series_path.file_stem().unwrap_or_default().to_string_lossy();
    series_path.with_file_name(format!("{stem}.truth.json"))
}

pub fn run(args: &SimulateArgs) -> CliResult<()> {
    let design = args.design.design(args.n);
    let sim = generate(&design)?;

    let out_err = |e: &dyn std::fmt::Display| CliError::Output(format!("{}: {e}", args.out.display()));
    let mut writer = csv::Writer::from_path(&args.out).map_err(|e| out_err(&e))?;
    writer.write_record(["value"]).map_err(|e| out_err(&e))?;
    for v in sim.series.values() {
        writer.write_record([v.to_string()]).map_err(|e| out_err(&e))?;
    }
    writer.flush().map_err(|e| out_err(&e))?;

    let truth = TruthFile {
        convention: CONVENTION,
        design: &design,
        truth: &sim.truth,
    };
    let path = truth_path(&args.out);
    let mut text = serde_json::to_string_pretty(&truth).map_err(|e| CliError::Output(e.to_string()))?;
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
    log::info!(
        "wrote {} values with {} changepoints to {}",
        design.n,
        sim.truth.changepoints.len(),
        args.out.display()
    );
    Ok(())
}
