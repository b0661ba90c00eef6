use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-integrable expression: {0}")]
    NonIntegrable(String),
    #[error("truncation mismatch: ({0}, {1}) vs ({2}, {3})")]
    TruncationMismatch(u32, u32, u32, u32),
    #[error("ring element does not have the form 1 + (augmentation ideal)")]
    NotUnitForm,
    #[error("resolvent parameter must vanish at hbar = 0")]
    ResolventPrecondition,
    #[error("distribution is not compactly supported (not in E')")]
    NotInEPrime,
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("augmentation violation: {0} does not vanish at hbar = 0")]
    AugmentationViolation(String),
    #[error("c4 cannot be normalized: {0}")]
    NotNormalizable(String),
    #[error("invalid parameters: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
