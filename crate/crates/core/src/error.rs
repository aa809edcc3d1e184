use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generated group exceeds the order cap of {cap} elements")]
    ClosureExceedsCap { cap: usize },

    #[error("subgroup lattice exceeds the cap: {reason}")]
    LatticeExceedsCap { reason: String },

    #[error("subgroup of order {order} is not normal in {group}")]
    NotNormal { group: String, order: usize },

    #[error("acting subgroup does not normalize the target subgroup")]
    NotNormalized,

    #[error("subgroup of order {order} is not maximal in {group}")]
    NotMaximal { group: String, order: usize },

    #[error("formation {0} has no canonical local satellite")]
    NoSatellite(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("semantic error: {0}")]
    Semantic(String),

    #[error("unknown builtin group `{0}`")]
    UnknownBuiltin(String),

    #[error("corpus entry {entry}: {msg}")]
    CorpusParse { entry: String, msg: String },

    #[error("satellite validation failed: {0}")]
    SatelliteValidation(String),

    #[error("lattice cache schema version {found} does not match {expected}")]
    CacheVersionMismatch { found: u32, expected: u32 },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
