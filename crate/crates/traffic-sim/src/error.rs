use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid network spec: {0}")]
    InvalidSpec(String),
    #[error("network validation failed at {entity}: {reason}")]
    Validation { entity: String, reason: String },
    #[error("IDM domain error: non-positive gap {gap} with a leader present")]
    NonPositiveGap { gap: f64 },
    #[error("route error: {0}")]
    Route(String),
    #[error("unsupported roadnet: {0}")]
    Unsupported(String),
    #[error("failed to parse {path}: {reason}")]
    Parse { path: String, reason: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, SimError>;
