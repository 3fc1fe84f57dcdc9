use thiserror::Error;

/// Errors raised while reading SMILES text.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmilesError {
    #[error("empty SMILES string")]
    Empty,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unsupported element '{symbol}' at position {pos}")]
    UnsupportedElement { pos: usize, symbol: String },
    #[error("unclosed ring index {index}")]
    UnclosedRing { index: u16 },
    #[error("unbalanced parenthesis at position {pos}")]
    UnbalancedParenthesis { pos: usize },
    #[error("charge, isotope or stereo marker at position {pos}: '{token}'")]
    UnsupportedFeature { pos: usize, token: String },
}

/// Errors raised when writing or transforming graphs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph fails valence check at atoms {0:?}")]
    InvalidValence(Vec<usize>),
    #[error("no valid kekulization: aromatic atoms {0:?} cannot be matched")]
    Kekulization(Vec<usize>),
    #[error("aromatic bond ({0},{1}) is not part of an aromatic ring")]
    AromaticBondNotInRing(usize, usize),
    #[error("graph must contain at least one atom")]
    EmptyGraph,
}
