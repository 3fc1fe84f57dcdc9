//! Categorical graph states: per-node and per-edge class indices with a step
//! index, the one-hot view consumed by the denoiser and by guidance.

use crate::error::DiffusionError;
use crate::statespace::StateSpace;
use molgraph::{Adjacency, BondClass, Element, MolecularGraph};

/// Graph state at a diffusion step. Class indices are exact one-hot states;
/// the edge matrix is symmetric with a fixed "none" diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneHotGraph {
    space: StateSpace,
    nodes: Vec<usize>,
    edges: Vec<usize>,
    t: usize,
}

impl OneHotGraph {
    pub fn new(space: StateSpace, nodes: Vec<usize>, t: usize) -> Self {
        let n = nodes.len();
        assert!(nodes.iter().all(|&c| c < space.atom_classes));
        OneHotGraph { space, nodes, edges: vec![0; n * n], t }
    }

    /// Encodes a molecular graph at t = 0.
    pub fn encode(g: &MolecularGraph) -> Self {
        let space = StateSpace::molecular();
        let nodes: Vec<usize> = g.atoms().iter().map(|a| a.index()).collect();
        let mut out = OneHotGraph::new(space, nodes, 0);
        for (i, j, b) in g.bond_list() {
            out.set_edge(i, j, b.index());
        }
        out
    }

    /// Decodes to a molecular graph, dropping "none" edges. Only valid for
    /// the molecular state space; validity of the result is not guaranteed.
    pub fn decode(&self) -> Result<MolecularGraph, DiffusionError> {
        if !self.space.is_molecular() {
            return Err(DiffusionError::ClassCountMismatch {
                expected: StateSpace::molecular().atom_classes,
                got: self.space.atom_classes,
            });
        }
        let atoms: Vec<Element> = self
            .nodes
            .iter()
            .map(|&c| Element::from_index(c).expect("class bounds checked"))
            .collect();
        let mut bonds = Vec::new();
        let n = self.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let c = self.edge(i, j);
                if c != 0 {
                    bonds.push((i, j, BondClass::from_index(c).expect("class bounds checked")));
                }
            }
        }
        MolecularGraph::from_parts(atoms, bonds)
            .map_err(|_| DiffusionError::BadNodeCount(0))
    }

    #[inline]
    pub fn space(&self) -> StateSpace {
        self.space
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    #[inline]
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn set_t(&mut self, t: usize) {
        self.t = t;
    }

    #[inline]
    pub fn node(&self, i: usize) -> usize {
        self.nodes[i]
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    #[inline]
    pub fn edge(&self, i: usize, j: usize) -> usize {
        self.edges[i * self.nodes.len() + j]
    }

    pub fn set_node(&mut self, i: usize, class: usize) {
        assert!(class < self.space.atom_classes);
        self.nodes[i] = class;
    }

    /// Sets both (i,j) and (j,i); the diagonal is immutable.
    pub fn set_edge(&mut self, i: usize, j: usize, class: usize) {
        assert!(class < self.space.edge_classes);
        if i == j {
            return;
        }
        let n = self.nodes.len();
        self.edges[i * n + j] = class;
        self.edges[j * n + i] = class;
    }

    /// Bond-present adjacency (edge class != 0).
    pub fn adjacency(&self) -> Adjacency {
        let n = self.len();
        let mut a = Adjacency::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if self.edge(i, j) != 0 {
                    a.connect(i, j);
                }
            }
        }
        a
    }

    /// Dense one-hot node tensor, row-major n x atom_classes.
    pub fn node_onehot(&self) -> Vec<f64> {
        let k = self.space.atom_classes;
        let mut x = vec![0.0; self.len() * k];
        for (i, &c) in self.nodes.iter().enumerate() {
            x[i * k + c] = 1.0;
        }
        x
    }

    /// Dense one-hot edge tensor, pair-major (n*n) x edge_classes.
    pub fn edge_onehot(&self) -> Vec<f64> {
        let k = self.space.edge_classes;
        let n = self.len();
        let mut x = vec![0.0; n * n * k];
        for p in 0..n * n {
            x[p * k + self.edges[p]] = 1.0;
        }
        x
    }
}
