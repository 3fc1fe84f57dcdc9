//! Morgan (ECFP-style) fingerprints over the molecular graph.
//!
//! Round 0 hashes an atom invariant (element, heavy degree, implicit H
//! count, in-ring flag); each later round re-hashes the atom's own code with
//! the sorted list of (bond class, neighbor code) pairs. Every code from
//! every round folds into the bit vector modulo its width. Bit-compatibility
//! with other toolkits is a non-goal; determinism is the contract.

use crate::error::MetricsError;
use molgraph::{perceive_rings, MolecularGraph};

/// Fixed-width fingerprint bit vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    width: usize,
    radius: usize,
    blocks: Vec<u64>,
    popcount: usize,
}

pub const DEFAULT_WIDTH: usize = 2048;
pub const SCREENING_RADIUS: usize = 2;
pub const CLUSTERING_RADIUS: usize = 10;

impl Fingerprint {
    pub fn empty(radius: usize, width: usize) -> Result<Self, MetricsError> {
        if width < 64 || !width.is_power_of_two() {
            return Err(MetricsError::BadWidth(width));
        }
        Ok(Fingerprint { width, radius, blocks: vec![0; width / 64], popcount: 0 })
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn radius(&self) -> usize {
        self.radius
    }

    #[inline]
    pub fn popcount(&self) -> usize {
        self.popcount
    }

    #[inline]
    pub fn get(&self, bit: usize) -> bool {
        self.blocks[bit / 64] & (1u64 << (bit % 64)) != 0
    }

    pub fn set(&mut self, bit: usize) {
        let mask = 1u64 << (bit % 64);
        if self.blocks[bit / 64] & mask == 0 {
            self.blocks[bit / 64] |= mask;
            self.popcount += 1;
        }
    }

    pub fn on_bits(&self) -> Vec<usize> {
        (0..self.width).filter(|&b| self.get(b)).collect()
    }

    pub(crate) fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    /// Hex encoding, width/4 chars, most significant bit first: bit 0 is the
    /// leading bit of the first hex digit.
    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(self.width / 4);
        for nibble_idx in 0..self.width / 4 {
            let mut v = 0u8;
            for k in 0..4 {
                let bit = nibble_idx * 4 + k;
                if self.get(bit) {
                    v |= 1 << (3 - k);
                }
            }
            s.push(char::from_digit(v as u32, 16).unwrap());
        }
        s
    }

    pub fn from_hex(hex: &str, radius: usize, width: usize) -> Result<Self, MetricsError> {
        let mut fp = Fingerprint::empty(radius, width)?;
        if hex.len() != width / 4 {
            return Err(MetricsError::BadHexLength { expected: width / 4, got: hex.len() });
        }
        for (nibble_idx, c) in hex.chars().enumerate() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| MetricsError::BadHexDigit(c))? as u8;
            for k in 0..4 {
                if v & (1 << (3 - k)) != 0 {
                    fp.set(nibble_idx * 4 + k);
                }
            }
        }
        Ok(fp)
    }
}

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

/// FNV-1a over a canonical little-endian byte stream.
pub fn fnv1a64(parts: &[u64]) -> u64 {
    let mut h = FNV_OFFSET;
    for &p in parts {
        for byte in p.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(FNV_PRIME);
        }
    }
    h
}

/// Morgan fingerprint of a molecule.
pub fn morgan_fingerprint(
    g: &MolecularGraph,
    radius: usize,
    width: usize,
) -> Result<Fingerprint, MetricsError> {
    let verdict = g.check_valence();
    if !verdict.valid {
        return Err(MetricsError::InvalidMolecule(verdict.violations));
    }
    Ok(morgan_fingerprint_unchecked(g, radius, width)?)
}

/// Morgan fingerprint without the validity gate (noisy/sampled graphs).
pub fn morgan_fingerprint_unchecked(
    g: &MolecularGraph,
    radius: usize,
    width: usize,
) -> Result<Fingerprint, MetricsError> {
    let mut fp = Fingerprint::empty(radius, width)?;
    let n = g.atom_count();
    let rings = perceive_rings(g);

    let mut codes: Vec<u64> = (0..n)
        .map(|i| {
            fnv1a64(&[
                g.atom(i).index() as u64,
                g.degree(i) as u64,
                g.implicit_h()[i] as u64,
                rings.atom_in_ring[i] as u64,
            ])
        })
        .collect();
    for &c in &codes {
        fp.set((c % width as u64) as usize);
    }

    for _round in 0..radius {
        let next: Vec<u64> = (0..n)
            .map(|i| {
                let mut env: Vec<(u64, u64)> = g
                    .neighbors(i)
                    .into_iter()
                    .map(|j| (g.bond(i, j).index() as u64, codes[j]))
                    .collect();
                env.sort_unstable();
                let mut parts = Vec::with_capacity(1 + env.len() * 2);
                parts.push(codes[i]);
                for (b, c) in env {
                    parts.push(b);
                    parts.push(c);
                }
                fnv1a64(&parts)
            })
            .collect();
        codes = next;
        for &c in &codes {
            fp.set((c % width as u64) as usize);
        }
    }
    Ok(fp)
}

/// Parallel batch fingerprinting; output order follows input order, so the
/// result is independent of worker count.
pub fn fingerprint_batch(
    mols: &[MolecularGraph],
    radius: usize,
    width: usize,
) -> Result<Vec<Fingerprint>, MetricsError> {
    use rayon::prelude::*;
    mols.par_iter()
        .map(|g| morgan_fingerprint(g, radius, width))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use molgraph::parse_smiles;

    #[test]
    fn radius_zero_ethanol_has_three_distinct_codes() {
        // terminal CH3, middle CH2, hydroxyl O: three distinct invariants
        let g = parse_smiles("CCO").unwrap();
        let fp = morgan_fingerprint(&g, 0, 2048).unwrap();
        assert_eq!(fp.popcount(), 3);
    }

    #[test]
    fn identical_graphs_identical_fingerprints() {
        let a = parse_smiles("c1ccccc1CC(=O)N").unwrap();
        let b = parse_smiles("c1ccccc1CC(=O)N").unwrap();
        for radius in [0, 1, 2, 5] {
            assert_eq!(
                morgan_fingerprint(&a, radius, 1024).unwrap(),
                morgan_fingerprint(&b, radius, 1024).unwrap()
            );
        }
    }

    #[test]
    fn invalid_molecule_rejected() {
        let mut b = molgraph::GraphBuilder::with_atoms(vec![molgraph::Element::C; 6]);
        for j in 1..6 {
            b.set_bond(0, j, molgraph::BondClass::Single);
        }
        let g = b.finish().unwrap();
        assert!(matches!(
            morgan_fingerprint(&g, 2, 2048),
            Err(MetricsError::InvalidMolecule(_))
        ));
    }

    #[test]
    fn width_must_be_power_of_two() {
        let g = parse_smiles("CC").unwrap();
        assert!(morgan_fingerprint(&g, 2, 100).is_err());
        assert!(morgan_fingerprint(&g, 2, 32).is_err());
        assert!(morgan_fingerprint(&g, 2, 64).is_ok());
    }

    #[test]
    fn hex_round_trip() {
        let g = parse_smiles("CC(=O)Oc1ccccc1").unwrap();
        let fp = morgan_fingerprint(&g, 2, 256).unwrap();
        let hex = fp.to_hex();
        assert_eq!(hex.len(), 64);
        let back = Fingerprint::from_hex(&hex, 2, 256).unwrap();
        assert_eq!(fp, back);
    }

    #[test]
    fn popcount_tracks_set_bits() {
        let mut fp = Fingerprint::empty(0, 64).unwrap();
        fp.set(0);
        fp.set(0);
        fp.set(63);
        assert_eq!(fp.popcount(), 2);
        assert_eq!(fp.on_bits(), vec![0, 63]);
    }
}
