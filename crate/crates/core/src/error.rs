use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("value domain must have between 2 and 16 values, got {0}")]
    DomainSize(usize),
    #[error("invalid value label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate value label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown value {0:?}")]
    UnknownValue(String),
    #[error("subset {0:#x} is not part of the value domain")]
    InvalidSubset(u32),
    #[error("mass assignments are defined over different value domains")]
    DomainMismatch,

    #[error("negative mass {0}")]
    NegativeMass(f64),
    #[error("non-finite mass")]
    NonFiniteMass,
    #[error("masses sum to {sum}, deviating from 1 by {deviation:e}")]
    SumNotOne { sum: f64, deviation: f64 },
    #[error("total conflict between sources (R = {0:e})")]
    TotalConflict(f64),
    #[error("cannot combine an empty list of mass assignments")]
    EmptyList,
    #[error("operation requires a normalized mass assignment (m(empty) = {0:e})")]
    Unnormalized(f64),

    #[error("value set must not be empty")]
    EmptyValueSet,
    #[error("distance must be nonnegative, got {0}")]
    NegativeDistance(f64),
    #[error("distance must be positive, got {0}")]
    NonPositiveDistance(f64),
    #[error("persistence scale must be a nonnegative number or infinity, got {0}")]
    InvalidLambda(f64),
    #[error("observation covers the whole value domain and carries no evidence")]
    TrivialObservation,

    #[error("interaction scale must be positive and finite, got {0}")]
    InvalidInteractionScale(f64),
    #[error("no nontrivial observations")]
    NoObservations,
    #[error("observation value is not a singleton")]
    NonSingletonObservation,
    #[error("point {0} lies outside the space")]
    PointOutOfSpace(usize),
    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("conflict map requires a field built in unnormalized mode")]
    WrongMode,
    #[error("threshold must lie in [0, 1), got {0}")]
    InvalidThreshold(f64),
    #[error("{0}")]
    InvalidParameter(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: unknown value {value:?}")]
    UnknownObservationValue { line: usize, value: String },
    #[error("belief rendering needs a binary domain, got {0} values")]
    UnsupportedDomainSize(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
