use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("fingerprint width {0} must be a power of two >= 64")]
    BadWidth(usize),
    #[error("molecule fails valence check at atoms {0:?}")]
    InvalidMolecule(Vec<usize>),
    #[error("fingerprint mismatch: widths {width_a}/{width_b}, radii {radius_a}/{radius_b}")]
    FingerprintMismatch {
        width_a: usize,
        width_b: usize,
        radius_a: usize,
        radius_b: usize,
    },
    #[error("{0} is empty")]
    EmptySet(&'static str),
    #[error("drug index undefined: DrugLike of the training set is zero")]
    UndefinedDrugIndex,
    #[error("hex string length {got}, expected {expected}")]
    BadHexLength { expected: usize, got: usize },
    #[error("invalid hex digit '{0}'")]
    BadHexDigit(char),
    #[error("bad fingerprint header: {0}")]
    BadHeader(String),
}
