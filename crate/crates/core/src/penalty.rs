// SPDX-License-Identifier: MIT OR Apache-2.0

//! Penalties on the number of changepoints.
//!
//! Two pathways exist. Linear penalties `beta * m` (AIC, SIC, manual) are
//! minimised exactly by PELT. Concave penalties `beta * f(m)` are handled by
//! [`concave_iteration`], which reruns PELT with the per-changepoint
//! constant `gamma = beta * f'(m)` until the changepoint count settles.
//!
//! For the autoregressive MDL criterion the per-segment order and length
//! terms live inside the segment cost; only the count term
//! `m log n + log(1 + m)` is a penalty here ([`ConcaveShape::Mdl`]).

use std::fmt;
use std::str::FromStr;

use crate::costs::{CostModel, SegmentCost};
use crate::error::{Error, Result};
use crate::search::pelt;
use crate::segmentation::Segmentation;

/// Shape `f` of a penalty `beta * f(m)`. Every shape has `f(0) = 0`.
#[derive(Clone, Copy)]
pub enum ConcaveShape {
    /// `f(m) = m`.
    Linear,
    /// `f(m) = sqrt(m)`; `f'(0)` is undefined, so `f'(1)` stands in.
    Sqrt,
    /// `f(m) = log(1 + m)`.
    Log,
    /// `f(m) = m log n + log(1 + m)`, the changepoint-count part of the
    /// autoregressive MDL criterion for a series of length `n`.
    Mdl { n: usize },
    /// Caller-supplied concave `f` with derivative `df`.
    Custom {
        f: fn(f64) -> f64,
        df: fn(f64) -> f64,
    },
}

impl ConcaveShape {
    pub fn eval(&self, m: f64) -> f64 {
        match *self {
            Self::Linear => m,
            Self::Sqrt => m.sqrt(),
            Self::Log => m.ln_1p(),
            Self::Mdl { n } => m * (n as f64).ln() + m.ln_1p(),
            Self::Custom { f, .. } => f(m),
        }
    }

    pub fn derivative(&self, m: f64) -> f64 {
        match *self {
            Self::Linear => 1.0,
            Self::Sqrt => 0.5 / m.max(1.0).sqrt(),
            Self::Log => 1.0 / (1.0 + m),
            Self::Mdl { n } => (n as f64).ln() + 1.0 / (1.0 + m),
            Self::Custom { df, .. } => df(m),
        }
    }
}

impl fmt::Debug for ConcaveShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Linear => f.write_str("Linear"),
            Self::Sqrt => f.write_str("Sqrt"),
            Self::Log => f.write_str("Log"),
            Self::Mdl { n } => write!(f, "Mdl {{ n: {n} }}"),
            Self::Custom { .. } => f.write_str("Custom"),
        }
    }
}

/// `beta * f(m)`.
#[derive(Debug, Clone, Copy)]
pub enum PenaltyScheme {
    Constant { beta: f64 },
    Concave { beta: f64, shape: ConcaveShape },
}

impl PenaltyScheme {
    pub fn constant(beta: f64) -> Result<Self> {
        check_beta(beta)?;
        Ok(Self::Constant { beta })
    }

    pub fn concave(beta: f64, shape: ConcaveShape) -> Result<Self> {
        check_beta(beta)?;
        Ok(Self::Concave { beta, shape })
    }

    pub fn beta(&self) -> f64 {
        match *self {
            Self::Constant { beta } | Self::Concave { beta, .. } => beta,
        }
    }

    /// `Some(beta)` when the penalty is linear in `m`.
    pub fn linear_beta(&self) -> Option<f64> {
        match *self {
            Self::Constant { beta }
            | Self::Concave {
                beta,
                shape: ConcaveShape::Linear,
            } => Some(beta),
            Self::Concave { .. } => None,
        }
    }

    /// Penalty for `m` changepoints; zero at `m = 0`.
    pub fn value(&self, m: usize) -> f64 {
        match *self {
            Self::Constant { beta } => beta * m as f64,
            Self::Concave { beta, shape } => beta * shape.eval(m as f64),
        }
    }

    /// Marginal penalty `beta * f'(m)`.
    pub fn derivative(&self, m: usize) -> f64 {
        match *self {
            Self::Constant { beta } => beta,
            Self::Concave { beta, shape } => beta * shape.derivative(m as f64),
        }
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid_parameter(format!(
            "penalty scale must be finite and non-negative, got {beta}"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PenaltyKind {
    /// `beta = 2p`.
    Aic,
    /// `beta = p log n`.
    Sic,
    Manual,
}

/// Linear penalty from an information criterion, where `p` is the number
/// of parameters a changepoint adds.
pub fn make_constant_penalty(
    kind: PenaltyKind,
    p: usize,
    n: usize,
    value: Option<f64>,
) -> Result<PenaltyScheme> {
    let beta = match kind {
        PenaltyKind::Aic => {
            check_p(p)?;
            2.0 * p as f64
        }
        PenaltyKind::Sic => {
            check_p(p)?;
            if n < 2 {
                return Err(Error::invalid_parameter("SIC needs n >= 2"));
            }
            p as f64 * (n as f64).ln()
        }
        PenaltyKind::Manual => {
            value.ok_or_else(|| Error::invalid_parameter("manual penalty needs a value"))?
        }
    };
    PenaltyScheme::constant(beta)
}

fn check_p(p: usize) -> Result<()> {
    if p == 0 {
        Err(Error::invalid_parameter("parameters per changepoint must be at least 1"))
    } else {
        Ok(())
    }
}

/// A penalty description resolved against a model and series length.
///
/// Text forms: `sic`, `aic`, `manual:<beta>`, `concave:sqrt[:<beta>]`,
/// `concave:log[:<beta>]`, `concave:mdl[:<beta>]`. Concave shapes without
/// an explicit scale use the SIC value for `beta`, except `mdl` which
/// defaults to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PenaltySpec {
    Aic,
    Sic,
    Manual(f64),
    Concave {
        shape: ConcaveName,
        scale: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConcaveName {
    Sqrt,
    Log,
    Mdl,
}

impl PenaltySpec {
    pub fn resolve(&self, model: &CostModel, n: usize) -> Result<PenaltyScheme> {
        let p = model.params_per_changepoint();
        match *self {
            Self::Aic => make_constant_penalty(PenaltyKind::Aic, p, n, None),
            Self::Sic => make_constant_penalty(PenaltyKind::Sic, p, n, None),
            Self::Manual(v) => make_constant_penalty(PenaltyKind::Manual, p, n, Some(v)),
            Self::Concave { shape, scale } => {
                let (shape, default_scale) = match shape {
                    ConcaveName::Sqrt => (ConcaveShape::Sqrt, None),
                    ConcaveName::Log => (ConcaveShape::Log, None),
                    ConcaveName::Mdl => (ConcaveShape::Mdl { n }, Some(1.0)),
                };
                let beta = match scale.or(default_scale) {
                    Some(beta) => beta,
                    None => make_constant_penalty(PenaltyKind::Sic, p, n, None)?.beta(),
                };
                PenaltyScheme::concave(beta, shape)
            }
        }
    }

    pub fn is_concave(&self) -> bool {
        matches!(self, Self::Concave { .. })
    }
}

impl FromStr for PenaltySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let parts: Vec<&str> = lower.split(':').collect();
        let parse_num = |v: &str| -> Result<f64> {
            let x: f64 = v
                .parse()
                .map_err(|_| Error::invalid_parameter(format!("bad number '{v}' in penalty '{s}'")))?;
            check_beta(x)?;
            Ok(x)
        };
        match parts.as_slice() {
            ["sic"] | ["bic"] => Ok(Self::Sic),
            ["aic"] => Ok(Self::Aic),
            ["manual", v] => Ok(Self::Manual(parse_num(v)?)),
            ["concave", name, rest @ ..] if rest.len() <= 1 => {
                let shape = match *name {
                    "sqrt" => ConcaveName::Sqrt,
                    "log" => ConcaveName::Log,
                    "mdl" => ConcaveName::Mdl,
                    other => {
                        return Err(Error::invalid_parameter(format!(
                            "unknown concave penalty '{other}'; expected sqrt, log or mdl"
                        )))
                    }
                };
                let scale = rest.first().map(|v| parse_num(v)).transpose()?;
                Ok(Self::Concave { shape, scale })
            }
            _ => Err(Error::invalid_parameter(format!(
                "unrecognised penalty '{s}'; expected sic, aic, manual:<beta> or concave:<sqrt|log|mdl>"
            ))),
        }
    }
}

impl fmt::Display for PenaltySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Aic => f.write_str("aic"),
            Self::Sic => f.write_str("sic"),
            Self::Manual(v) => write!(f, "manual:{v}"),
            Self::Concave { shape, scale } => {
                let name = match shape {
                    ConcaveName::Sqrt => "sqrt",
                    ConcaveName::Log => "log",
                    ConcaveName::Mdl => "mdl",
                };
                match scale {
                    Some(v) => write!(f, "concave:{name}:{v}"),
                    None => write!(f, "concave:{name}"),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcaveOptions {
    pub max_iters: usize,
    /// Starting per-changepoint constant; defaults to `beta * f'(1)`.
    pub initial_gamma: Option<f64>,
}

impl Default for ConcaveOptions {
    fn default() -> Self {
        Self {
            max_iters: 20,
            initial_gamma: None,
        }
    }
}

/// One PELT run inside [`concave_iteration`].
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct IterationRecord {
    pub gamma: f64,
    pub changepoints: usize,
    /// `sum of segment costs + beta * f(m)` for this run's segmentation.
    pub score: f64,
    /// Lowest score seen up to and including this run.
    pub best_score: f64,
}

#[derive(Debug, Clone)]
pub struct ConcaveResult {
    /// Lowest-scoring segmentation seen; `total_cost` is its concave score.
    pub segmentation: Segmentation,
    pub trace: Vec<IterationRecord>,
    pub converged: bool,
    /// The count revisited an earlier, non-adjacent value.
    pub cycled: bool,
}

impl ConcaveResult {
    pub fn iterations(&self) -> usize {
        self.trace.len()
    }
}

/// Minimise `sum of segment costs + beta * f(m)` for concave `f` by
/// repeatedly solving the linear problem with `gamma = beta * f'(m)`.
///
/// Stops when two consecutive runs give the same count, when a count
/// recurs after a different one (a cycle), or after `max_iters` runs. The
/// scheme is a heuristic: the result is the best iterate, not a certified
/// optimum.
pub fn concave_iteration<C: SegmentCost + ?Sized>(
    cost: &C,
    penalty: &PenaltyScheme,
    options: ConcaveOptions,
) -> Result<ConcaveResult> {
    if options.max_iters == 0 {
        return Err(Error::invalid_parameter("max_iters must be at least 1"));
    }
    let mut gamma = options.initial_gamma.unwrap_or_else(|| penalty.derivative(1));
    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    let mut best: Option<Segmentation> = None;
    let (mut converged, mut cycled) = (false, false);

    for _ in 0..options.max_iters {
        let seg = pelt(cost, gamma)?.segmentation;
        let m = seg.count();
        let score = seg.segment_cost_sum(cost)? + penalty.value(m);
        if best.as_ref().is_none_or(|b| score < b.total_cost) {
            best = Some(Segmentation {
                total_cost: score,
                ..seg
            });
        }
        let best_score = best.as_ref().map_or(score, |b| b.total_cost);
        trace.push(IterationRecord {
            gamma,
            changepoints: m,
            score,
            best_score,
        });
        if seen.last() == Some(&m) {
            converged = true;
            break;
        }
        if seen.contains(&m) {
            cycled = true;
            break;
        }
        seen.push(m);
        gamma = penalty.derivative(m.max(1));
    }

    Ok(ConcaveResult {
        segmentation: best.expect("at least one iteration ran"),
        trace,
        converged,
        cycled,
    })
}
