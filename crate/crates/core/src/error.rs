// SPDX-License-Identifier: MIT OR Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series must contain at least one observation")]
    EmptySeries,

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("timestamps must be strictly increasing and match the series length")]
    InvalidTimestamps,

    #[error("invalid segmentation: {0}")]
    InvalidSegmentation(String),

    #[error("series of length {n} cannot hold a segment of minimum length {min_len}")]
    SeriesTooShort { n: usize, min_len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exhaustive search refused for n = {n}; the limit is {max}")]
    TooLargeForBruteForce { n: usize, max: usize },

    #[error("infeasible simulation design: {0}")]
    InfeasibleDesign(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid_parameter(msg: impl Into<String>) -> Self {
        Self::InvalidParameter(msg.into())
    }

    pub(crate) fn invalid_segmentation(msg: impl Into<String>) -> Self {
        Self::InvalidSegmentation(msg.into())
    }
}
