//! Empirical class marginals and the node-count histogram used for prior
//! sampling.

use crate::error::DiffusionError;
use crate::statespace::StateSpace;
use molgraph::MolecularGraph;
use rand::Rng;

/// Node and edge class marginals for a state space.
#[derive(Debug, Clone, PartialEq)]
pub struct Marginals {
    pub space: StateSpace,
    pub node: Vec<f64>,
    pub edge: Vec<f64>,
}

/// Empirical marginals of a molecule collection. Node frequencies are taken
/// over all atoms; edge frequencies over all unordered pairs of the padded
/// n_max-node representation, with absent pairs counted as class 0 ("none").
pub fn estimate_marginals(
    dataset: &[MolecularGraph],
    n_max: usize,
) -> Result<Marginals, DiffusionError> {
    if dataset.is_empty() {
        return Err(DiffusionError::EmptyDataset);
    }
    let space = StateSpace::molecular();
    let mut node_counts = vec![0u64; space.atom_classes];
    let mut edge_counts = vec![0u64; space.edge_classes];
    let pairs_per_mol = n_max * (n_max - 1) / 2;

    for g in dataset {
        let n = g.atom_count();
        if n > n_max {
            return Err(DiffusionError::MoleculeTooLarge { got: n, n_max });
        }
        for a in g.atoms() {
            node_counts[a.index()] += 1;
        }
        let bonds = g.bond_list();
        for (_, _, b) in &bonds {
            edge_counts[b.index()] += 1;
        }
        edge_counts[0] += (pairs_per_mol - bonds.len()) as u64;
    }

    let node_total: u64 = node_counts.iter().sum();
    let edge_total: u64 = edge_counts.iter().sum();
    Ok(Marginals {
        space,
        node: node_counts.iter().map(|&c| c as f64 / node_total as f64).collect(),
        edge: edge_counts.iter().map(|&c| c as f64 / edge_total as f64).collect(),
    })
}

/// Empirical node-count distribution of a dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeCountDistribution {
    /// counts[k] = number of molecules with k atoms.
    pub counts: Vec<u64>,
}

impl NodeCountDistribution {
    pub fn from_dataset(dataset: &[MolecularGraph]) -> Result<Self, DiffusionError> {
        if dataset.is_empty() {
            return Err(DiffusionError::EmptyDataset);
        }
        let max_n = dataset.iter().map(|g| g.atom_count()).max().unwrap();
        let mut counts = vec![0u64; max_n + 1];
        for g in dataset {
            counts[g.atom_count()] += 1;
        }
        Ok(NodeCountDistribution { counts })
    }

    pub fn max_nodes(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        let total: u64 = self.counts.iter().sum();
        let mut x = rng.random_range(0..total);
        for (n, &c) in self.counts.iter().enumerate() {
            if x < c {
                return n;
            }
            x -= c;
        }
        self.counts.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use molgraph::parse_smiles;
    use rand::SeedableRng;

    #[test]
    fn single_ethane_marginals() {
        let ds = vec![parse_smiles("CC").unwrap()];
        let m = estimate_marginals(&ds, 2).unwrap();
        assert_eq!(m.node[0], 1.0);
        assert_eq!(m.edge, vec![0.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn ethanol_marginals_padded() {
        let ds = vec![parse_smiles("CCO").unwrap()];
        let m = estimate_marginals(&ds, 3).unwrap();
        assert!((m.node[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((m.node[2] - 1.0 / 3.0).abs() < 1e-15);
        assert!((m.edge[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((m.edge[1] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn marginals_normalized_on_corpus() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        let ds = molgraph::synthgen::corpus(&mut rng, 200, 2, 16);
        let m = estimate_marginals(&ds, 16).unwrap();
        assert!((m.node.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((m.edge.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oversize_molecule_rejected() {
        let ds = vec![parse_smiles("CCCC").unwrap()];
        assert!(matches!(
            estimate_marginals(&ds, 3),
            Err(DiffusionError::MoleculeTooLarge { got: 4, n_max: 3 })
        ));
    }

    #[test]
    fn node_count_histogram_sampling() {
        let ds = vec![
            parse_smiles("C").unwrap(),
            parse_smiles("CC").unwrap(),
            parse_smiles("CC").unwrap(),
        ];
        let d = NodeCountDistribution::from_dataset(&ds).unwrap();
        assert_eq!(d.counts, vec![0, 1, 2]);
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(1);
        let mut ones = 0;
        for _ in 0..3000 {
            let n = d.sample(&mut rng);
            assert!(n == 1 || n == 2);
            if n == 1 {
                ones += 1;
            }
        }
        let frac = ones as f64 / 3000.0;
        assert!((frac - 1.0 / 3.0).abs() < 0.05);
    }
}
