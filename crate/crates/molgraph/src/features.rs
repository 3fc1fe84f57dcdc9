//! Auxiliary cycle and spectral features fed to the denoiser alongside the
//! noisy graph. Computable on any symmetric adjacency, valid molecule or not.

use crate::eigen::symmetric_eigen;
use crate::graph::MolecularGraph;
use crate::rings::{simple_cycles_up_to, Adjacency};

/// Width of the eigenvalue feature block (zero-padded for small graphs).
pub const SPECTRAL_EIGENVALUE_COUNT: usize = 5;

/// Per-graph auxiliary features.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxFeatures {
    /// Per node: counts of simple cycles of length 3,4,5,6 through the node.
    pub node_cycle_counts: Vec<[f64; 4]>,
    /// Graph totals of simple cycles of length 3..=6.
    pub graph_cycle_totals: [f64; 4],
    /// Connected component count (>= 1 for nonempty graphs).
    pub component_count: usize,
    /// The 5 smallest nonzero Laplacian eigenvalues, ascending, zero-padded.
    pub eigenvalues: [f64; SPECTRAL_EIGENVALUE_COUNT],
    /// Per-node entries of the Fiedler eigenvector (zero when no nonzero
    /// eigenvalue exists).
    pub fiedler: Vec<f64>,
    /// Normalized diffusion time t/T.
    pub time_embedding: f64,
}

impl AuxFeatures {
    /// Global feature vector: time, components, eigenvalues, cycle totals.
    pub fn global_vector(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(2 + SPECTRAL_EIGENVALUE_COUNT + 4);
        v.push(self.time_embedding);
        v.push(self.component_count as f64);
        v.extend_from_slice(&self.eigenvalues);
        v.extend_from_slice(&self.graph_cycle_totals);
        v
    }

    /// Per-node feature vector: 4 cycle counts plus the Fiedler entry.
    pub fn node_vector(&self, i: usize) -> Vec<f64> {
        let mut v = Vec::with_capacity(5);
        v.extend_from_slice(&self.node_cycle_counts[i]);
        v.push(self.fiedler[i]);
        v
    }

    pub const GLOBAL_WIDTH: usize = 2 + SPECTRAL_EIGENVALUE_COUNT + 4;
    pub const NODE_WIDTH: usize = 5;
}

/// Features for a molecular graph at diffusion step `t` of `t_max`.
pub fn cycle_spectral_features(g: &MolecularGraph, t: usize, t_max: usize) -> AuxFeatures {
    features_from_adjacency(&Adjacency::from_graph(g), t, t_max)
}

/// Features from a bare adjacency; the entry point for noisy graphs.
pub fn features_from_adjacency(adj: &Adjacency, t: usize, t_max: usize) -> AuxFeatures {
    let n = adj.len();
    let (node_cycle_counts, graph_cycle_totals) = cycle_counts(adj);

    // Laplacian over the bond-present indicator.
    let mut lap = vec![0.0f64; n * n];
    for i in 0..n {
        let mut d = 0.0;
        for j in 0..n {
            if adj.has(i, j) {
                lap[i * n + j] = -1.0;
                d += 1.0;
            }
        }
        lap[i * n + i] = d;
    }
    let eig = symmetric_eigen(n, &lap);

    let component_count = adj.component_count();
    let mut eigenvalues = [0.0f64; SPECTRAL_EIGENVALUE_COUNT];
    let mut fiedler = vec![0.0f64; n];
    // eigenvalues below this are the zero modes (one per component)
    let nonzero: Vec<usize> = (0..n).filter(|&k| eig.values[k] > 1e-8).collect();
    for (slot, &k) in nonzero.iter().take(SPECTRAL_EIGENVALUE_COUNT).enumerate() {
        eigenvalues[slot] = eig.values[k];
    }
    if let Some(&k) = nonzero.first() {
        fiedler.copy_from_slice(&eig.vectors[k]);
    }

    AuxFeatures {
        node_cycle_counts,
        graph_cycle_totals,
        component_count,
        eigenvalues,
        fiedler,
        time_embedding: if t_max == 0 { 0.0 } else { t as f64 / t_max as f64 },
    }
}

/// Per-node and total simple-cycle counts for lengths 3..=6. Lengths 3 and 4
/// use adjacency-power closed forms; 5 and 6 use explicit enumeration.
pub fn cycle_counts(adj: &Adjacency) -> (Vec<[f64; 4]>, [f64; 4]) {
    let n = adj.len();
    let a: Vec<f64> = (0..n * n)
        .map(|k| if adj.has(k / n, k % n) { 1.0 } else { 0.0 })
        .collect();
    let a2 = matmul(n, &a, &a);
    let a3 = matmul(n, &a2, &a);
    let a4 = matmul(n, &a3, &a);

    let deg: Vec<f64> = (0..n).map(|i| adj.degree(i) as f64).collect();

    let mut per_node = vec![[0.0f64; 4]; n];
    for i in 0..n {
        per_node[i][0] = a3[i * n + i] / 2.0;
        let neighbor_walks: f64 = adj.neighbors(i).map(|j| deg[j] - 1.0).sum();
        per_node[i][1] = (a4[i * n + i] - deg[i] * deg[i] - neighbor_walks) / 2.0;
    }
    let mut totals = [0.0f64; 4];
    totals[0] = per_node.iter().map(|c| c[0]).sum::<f64>() / 3.0;
    totals[1] = per_node.iter().map(|c| c[1]).sum::<f64>() / 4.0;

    for cyc in simple_cycles_up_to(adj, 6) {
        let slot = match cyc.len() {
            5 => 2,
            6 => 3,
            _ => continue,
        };
        totals[slot] += 1.0;
        for &v in &cyc {
            per_node[v][slot] += 1.0;
        }
    }
    (per_node, totals)
}

fn matmul(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}
