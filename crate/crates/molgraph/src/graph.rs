//! The molecular graph: heavy atoms plus a symmetric bond-class matrix.

use crate::element::{BondClass, Element, HYDROGEN_MASS};
use crate::error::GraphError;
use crate::kekulize;

/// Heavy-atom molecular graph. Immutable after construction; all derived
/// quantities (implicit hydrogens, ring info, features) are pure functions
/// of the atom list and bond matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MolecularGraph {
    atoms: Vec<Element>,
    /// Dense n*n bond matrix, row-major. Symmetric, diagonal `None`.
    bonds: Vec<BondClass>,
    /// Implicit hydrogen count per atom, derived from the valence model.
    implicit_h: Vec<u8>,
}

/// Mutable construction helper for [`MolecularGraph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    atoms: Vec<Element>,
    bonds: Vec<BondClass>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        GraphBuilder { atoms: Vec::new(), bonds: Vec::new() }
    }

    pub fn with_atoms(atoms: Vec<Element>) -> Self {
        let n = atoms.len();
        GraphBuilder { atoms, bonds: vec![BondClass::None; n * n] }
    }

    pub fn add_atom(&mut self, el: Element) -> usize {
        let old_n = self.atoms.len();
        let n = old_n + 1;
        let mut bonds = vec![BondClass::None; n * n];
        for i in 0..old_n {
            for j in 0..old_n {
                bonds[i * n + j] = self.bonds[i * old_n + j];
            }
        }
        self.atoms.push(el);
        self.bonds = bonds;
        old_n
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Sets both (i,j) and (j,i). Self-bonds are ignored.
    pub fn set_bond(&mut self, i: usize, j: usize, class: BondClass) {
        if i == j {
            return;
        }
        let n = self.atoms.len();
        self.bonds[i * n + j] = class;
        self.bonds[j * n + i] = class;
    }

    pub fn bond(&self, i: usize, j: usize) -> BondClass {
        self.bonds[i * self.atoms.len() + j]
    }

    pub fn finish(self) -> Result<MolecularGraph, GraphError> {
        if self.atoms.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let implicit_h = derive_implicit_h(&self.atoms, &self.bonds);
        Ok(MolecularGraph { atoms: self.atoms, bonds: self.bonds, implicit_h })
    }
}

impl Default for GraphBuilder {
    fn default() -> Self {
        Self::new()
    }
}

/// Outcome of a valence check: a verdict plus the offending atom indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValenceVerdict {
    pub valid: bool,
    pub violations: Vec<usize>,
}

impl MolecularGraph {
    pub fn from_parts(atoms: Vec<Element>, bonds: Vec<(usize, usize, BondClass)>) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::with_atoms(atoms);
        for (i, j, class) in bonds {
            b.set_bond(i, j, class);
        }
        b.finish()
    }

    #[inline]
    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    #[inline]
    pub fn atom(&self, i: usize) -> Element {
        self.atoms[i]
    }

    pub fn atoms(&self) -> &[Element] {
        &self.atoms
    }

    #[inline]
    pub fn bond(&self, i: usize, j: usize) -> BondClass {
        self.bonds[i * self.atoms.len() + j]
    }

    pub fn implicit_h(&self) -> &[u8] {
        &self.implicit_h
    }

    /// Present bonds as (i, j, class) with i < j.
    pub fn bond_list(&self) -> Vec<(usize, usize, BondClass)> {
        let n = self.atoms.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let b = self.bond(i, j);
                if b.is_present() {
                    out.push((i, j, b));
                }
            }
        }
        out
    }

    pub fn bond_count(&self) -> usize {
        self.bond_list().len()
    }

    /// Neighbor indices of atom `i`, ascending.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let n = self.atoms.len();
        (0..n).filter(|&j| self.bond(i, j).is_present()).collect()
    }

    /// Heavy-atom degree.
    pub fn degree(&self, i: usize) -> usize {
        let n = self.atoms.len();
        (0..n).filter(|&j| self.bond(i, j).is_present()).count()
    }

    /// True if atom `i` participates in an aromatic bond.
    pub fn is_aromatic_atom(&self, i: usize) -> bool {
        let n = self.atoms.len();
        (0..n).any(|j| self.bond(i, j) == BondClass::Aromatic)
    }

    /// Bond-order sum at atom `i` with aromatic bonds contributing 1.5.
    pub fn bond_order_sum(&self, i: usize) -> f64 {
        let n = self.atoms.len();
        (0..n).map(|j| self.bond(i, j).order()).sum()
    }

    /// Molecular weight in daltons, implicit hydrogens included.
    pub fn molecular_weight(&self) -> f64 {
        let heavy: f64 = self.atoms.iter().map(|a| a.mass()).sum();
        let h: f64 = self.implicit_h.iter().map(|&h| h as f64).sum::<f64>() * HYDROGEN_MASS;
        heavy + h
    }

    /// Connected components as sorted atom-index lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.atoms.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Valence verdict. Aromatic systems are kekulized first; an atom is valid
    /// when some allowed valence covers its integer bond-order sum. Aromatic
    /// rings of size 3 or 4 are rejected even when a kekulization exists.
    pub fn check_valence(&self) -> ValenceVerdict {
        let mut violations: Vec<usize> = Vec::new();

        let kek = match kekulize::kekulize(self) {
            Ok(g) => g,
            Err(GraphError::Kekulization(atoms)) => {
                return ValenceVerdict { valid: false, violations: atoms };
            }
            Err(GraphError::AromaticBondNotInRing(i, j)) => {
                return ValenceVerdict { valid: false, violations: vec![i.min(j), i.max(j)] };
            }
            Err(_) => unreachable!("kekulize only raises aromatic errors"),
        };

        // Anti-aromatic policy: kekulizable 3- and 4-membered all-aromatic
        // rings are still invalid.
        for ring in crate::rings::perceive_rings(self).rings.iter() {
            if ring.len() <= 4 && ring_is_all_aromatic(self, ring) {
                for &a in ring {
                    if !violations.contains(&a) {
                        violations.push(a);
                    }
                }
            }
        }

        for i in 0..self.atom_count() {
            let sum = kek.integer_order_sum(i);
            let max = self.atoms[i].max_valence() as u32;
            if sum > max {
                if !violations.contains(&i) {
                    violations.push(i);
                }
            }
        }
        violations.sort_unstable();
        ValenceVerdict { valid: violations.is_empty(), violations }
    }

    /// Integer bond-order sum; panics if any incident bond is aromatic.
    pub(crate) fn integer_order_sum(&self, i: usize) -> u32 {
        let n = self.atoms.len();
        (0..n)
            .map(|j| self.bond(i, j).integer_order().expect("kekulized graph") as u32)
            .sum()
    }

    /// Renumbers atoms by `perm`, where `perm[old] = new`. Test and
    /// canonicalization helper; preserves bonds and derived hydrogens.
    pub fn permuted(&self, perm: &[usize]) -> MolecularGraph {
        let n = self.atoms.len();
        assert_eq!(perm.len(), n);
        let mut atoms = vec![Element::C; n];
        for (old, &new) in perm.iter().enumerate() {
            atoms[new] = self.atoms[old];
        }
        let mut b = GraphBuilder::with_atoms(atoms);
        for i in 0..n {
            for j in (i + 1)..n {
                let bond = self.bond(i, j);
                if bond.is_present() {
                    b.set_bond(perm[i], perm[j], bond);
                }
            }
        }
        b.finish().expect("permutation preserves atom count")
    }
}

fn ring_is_all_aromatic(g: &MolecularGraph, ring: &[usize]) -> bool {
    let k = ring.len();
    (0..k).all(|idx| g.bond(ring[idx], ring[(idx + 1) % k]) == BondClass::Aromatic)
}

/// Implicit hydrogen counts from the smallest feasible valence. Aromatic
/// systems are kekulized first; atoms in systems with no kekulization, or
/// whose bond-order sum exceeds every allowed valence, get zero.
fn derive_implicit_h(atoms: &[Element], bonds: &[BondClass]) -> Vec<u8> {
    let n = atoms.len();
    let order_sums: Vec<u32> = match kekulize::kekulize_parts(atoms, bonds) {
        Ok(kek_bonds) => (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| kek_bonds[i * n + j].integer_order().unwrap_or(0) as u32)
                    .sum()
            })
            .collect(),
        Err(_) => (0..n)
            .map(|i| {
                let s: f64 = (0..n).map(|j| bonds[i * n + j].order()).sum();
                s.ceil() as u32
            })
            .collect(),
    };
    atoms
        .iter()
        .zip(order_sums)
        .map(|(el, sum)| {
            el.allowed_valences()
                .iter()
                .find(|&&v| v as u32 >= sum)
                .map(|&v| (v as u32 - sum) as u8)
                .unwrap_or(0)
        })
        .collect()
}
