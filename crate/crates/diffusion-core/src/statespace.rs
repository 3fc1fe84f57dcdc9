//! Categorical state spaces for nodes and edges.

use molgraph::{BOND_CLASS_COUNT, ELEMENT_COUNT};

/// Class counts for the node and edge categorical spaces. Edge class 0 is
/// always the absent-edge state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSpace {
    pub atom_classes: usize,
    pub edge_classes: usize,
}

impl StateSpace {
    pub fn new(atom_classes: usize, edge_classes: usize) -> Self {
        assert!(atom_classes >= 1 && edge_classes >= 1);
        StateSpace { atom_classes, edge_classes }
    }

    /// The molecular space: 7 heavy elements, 5 bond classes including none.
    pub fn molecular() -> Self {
        StateSpace { atom_classes: ELEMENT_COUNT, edge_classes: BOND_CLASS_COUNT }
    }

    pub fn is_molecular(&self) -> bool {
        self.atom_classes == ELEMENT_COUNT && self.edge_classes == BOND_CLASS_COUNT
    }
}
