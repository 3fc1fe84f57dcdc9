//! Morgan fingerprints, Tanimoto similarity, and the ligand-based screening
//! metric stack (set similarity, drug-like proportion, drug index).

mod error;
mod fingerprint;
mod serial;
mod similarity;

pub use error::MetricsError;
pub use fingerprint::{
    fingerprint_batch, fnv1a64, morgan_fingerprint, morgan_fingerprint_unchecked, Fingerprint,
    CLUSTERING_RADIUS, DEFAULT_WIDTH, SCREENING_RADIUS,
};
pub use serial::{from_text, header_line, to_text};
pub use similarity::{
    best_similarities, drug_index, drug_like, set_mol_sim, tanimoto, SimilarityScore,
    DRUG_LIKE_THRESHOLD,
};
