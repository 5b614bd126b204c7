use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Precondition(String),

    #[error("configuration does not span the ambient space (rank {rank}, ambient dimension {ambient_dim})")]
    NotSpanning { rank: usize, ambient_dim: usize },

    #[error("subset {0} is dependent; external activity is only defined for independent subsets")]
    DependentSubset(String),

    #[error("invalid root system {label}: {reason}")]
    InvalidRootSystem { label: String, reason: String },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("engines disagree: {0}")]
    EngineDisagreement(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
