use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiffusionError {
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("molecule has {got} atoms, exceeding n_max {n_max}")]
    MoleculeTooLarge { got: usize, n_max: usize },
    #[error("schedule needs at least one step")]
    EmptySchedule,
    #[error("alpha[{t}] = {value} outside (0, 1]")]
    BadAlpha { t: usize, value: f64 },
    #[error("marginal is not a probability vector: {0}")]
    BadMarginal(String),
    #[error("step index {t} outside 1..={t_max}")]
    StepOutOfRange { t: usize, t_max: usize },
    #[error("predicted distribution not normalized: sum = {0}")]
    UnnormalizedPrediction(f64),
    #[error("state space mismatch: expected {expected} classes, got {got}")]
    ClassCountMismatch { expected: usize, got: usize },
    #[error("node count {0} must be >= 1")]
    BadNodeCount(usize),
}
