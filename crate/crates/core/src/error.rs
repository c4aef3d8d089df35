use thiserror::Error;

use crate::partitions::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be positive integers in weakly decreasing order")]
    InvalidPartition(String),

    #[error("weight mismatch: |{irrep}| = {} but |{class}| = {}", irrep.weight(), class.weight())]
    WeightMismatch { irrep: Partition, class: Partition },

    #[error("{what} {requested} exceeds the supported limit {limit}")]
    CapacityExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("rising product [N]_{k}^{l} is undefined for k > l + 1")]
    UndefinedRange { k: i64, l: i64 },

    #[error("directional expansion needs two distinct variables, got {0} twice")]
    SameVariable(usize),

    #[error("series variable sets differ ({left} vs {right})")]
    VariableMismatch { left: String, right: String },

    #[error("cannot add values graded by g_s^{left} and g_s^{right}")]
    GradingMismatch { left: i64, right: i64 },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("{0}")]
    Disagreement(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
