use thiserror::Error;

use crate::index_set::MultiIndexSet;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("no generator matrices for dim={dim}, base={base}")]
    NoGeneratorMatrices { dim: usize, base: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point set is already scrambled; refusing to randomize it twice")]
    AlreadyScrambled,

    #[error("invalid parameter for {kind}: {constraint}")]
    InvalidParameter { kind: String, constraint: String },

    #[error("singular input: {0}")]
    SingularInput(String),

    #[error("derivative oracle unavailable for {kind}: component {component}, v = {v}")]
    OracleUnavailable {
        kind: String,
        component: usize,
        v: MultiIndexSet,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("derivative order {needed} exceeds the supported order {supported}")]
    OrderExceeded { needed: usize, supported: usize },

    #[error("unknown {what}: {name}")]
    Unknown { what: &'static str, name: String },

    #[error("weight is not a Jacobian: {0}")]
    NotAJacobian(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
