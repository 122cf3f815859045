use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CarterError {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("mirror has squared norm {0}, expected 2")]
    NotARoot(i64),
    #[error("not a finite irreducible subsystem: {0}")]
    NotDynkin(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid gamma set: {0}")]
    InvalidGammaSet(String),
    #[error("unknown diagram or class: {0}")]
    Unknown(String),
    #[error("case out of range: {0}")]
    CaseRange(String),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("residual {residual:e} exceeds tolerance {tol:e}")]
    Residual { residual: f64, tol: f64 },
    #[error("image is not a root of the ambient system: {0:?}")]
    ImageNotRoot(Vec<i64>),
    #[error("group too large for exhaustive enumeration (cap {0})")]
    SizeCap(usize),
    #[error("json: {0}")]
    Json(String),
}
