//! Molecular graph data model: SMILES parsing and canonical writing,
//! valence checking, kekulization, ring perception, and the cycle/spectral
//! feature stack consumed by the denoiser.

mod canon;
mod element;
mod error;
mod features;
mod graph;
mod kekulize;
mod rings;
mod smiles;
pub mod synthgen;

pub mod eigen;

pub use canon::canonical_ranks;
pub use element::{
    BondClass, Element, ALL_BOND_CLASSES, ALL_ELEMENTS, BOND_CLASS_COUNT, ELEMENT_COUNT,
    HYDROGEN_MASS,
};
pub use error::{GraphError, SmilesError};
pub use features::{
    cycle_counts, cycle_spectral_features, features_from_adjacency, AuxFeatures,
    SPECTRAL_EIGENVALUE_COUNT,
};
pub use graph::{GraphBuilder, MolecularGraph, ValenceVerdict};
pub use kekulize::kekulize;
pub use rings::{perceive_rings, simple_cycles_up_to, Adjacency, RingInfo};
pub use smiles::{parse_smiles, write_smiles, write_smiles_lenient};
