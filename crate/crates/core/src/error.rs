use alloc::string::String;

/// Errors raised when an operation's contract is violated.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid kernel order {0} (supported: 1..={max})", max = crate::kernels::MAX_ORDER)]
    InvalidOrder(u32),
    #[error("invalid level {0} (supported: 0..={max})", max = crate::kernels::MAX_LEVEL)]
    InvalidLevel(u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("sample array has length {got}, level {level} needs {expected}")]
    SampleLength {
        level: u32,
        expected: usize,
        got: usize,
    },
    #[error("levels must differ by exactly one (fine {fine}, coarse {coarse})")]
    LevelMismatch { fine: u32, coarse: u32 },
    #[error("missing sample for node {0}")]
    MissingSample(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("quadrature resolution {resolution} too coarse for frequency {frequency} (need >= {required})")]
    ResolutionGuard {
        resolution: usize,
        frequency: i64,
        required: usize,
    },
    #[error("rate fit needs at least {needed} usable levels, got {got}")]
    InsufficientSweep { needed: usize, got: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
