use std::io;

use thiserror::Error;

/// Errors raised by the optimizers, problems and harness.
#[derive(Debug, Error)]
pub enum Error {
    /// The evaluation budget is spent. Optimizers catch this and stop.
    #[error("evaluation budget exhausted after {ffe} evaluations")]
    BudgetExhausted { ffe: u64 },

    #[error("genotype has length {found}, problem expects {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("objective vectors have different lengths ({0} vs {1})")]
    DimensionMismatch(usize, usize),

    #[error("invalid objective vector: {0}")]
    InvalidObjectives(String),

    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("invalid genotype: {0}")]
    InvalidGenotype(String),

    #[error("population is empty")]
    EmptyPopulation,

    #[error("front is empty")]
    EmptyFront,

    #[error("linkage tree needs at least two genes, got {0}")]
    TooFewGenes(usize),

    #[error("genotype is already present in the pyramid")]
    DuplicateGenotype,

    #[error("level {index} is out of range for a pyramid with {levels} levels")]
    LevelOutOfRange { index: usize, levels: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
