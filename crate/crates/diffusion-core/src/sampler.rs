//! Forward noising and the reverse sampler. The reverse loop is shared by
//! unconditional and guided sampling through the `StepGuide` hook.

use crate::error::DiffusionError;
use crate::onehot::OneHotGraph;
use crate::posterior::denoising_distribution;
use crate::transition::{Family, TransitionModel};
use molgraph::{features_from_adjacency, AuxFeatures, MolecularGraph};
use rand::Rng;

/// Samples one class from a categorical distribution by inverse CDF.
pub fn sample_categorical<R: Rng>(rng: &mut R, probs: &[f64]) -> usize {
    let x: f64 = rng.random();
    let mut cum = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        cum += p;
        if x < cum {
            return i;
        }
    }
    probs.len() - 1
}

/// Applies t steps of forward noise to a clean graph: every node and every
/// upper-triangular edge is resampled independently from its Q-bar^t row,
/// then the edge matrix is mirrored.
pub fn noise_graph<R: Rng>(
    model: &TransitionModel,
    g0: &OneHotGraph,
    t: usize,
    rng: &mut R,
) -> Result<OneHotGraph, DiffusionError> {
    if t < 1 || t > model.t_max() {
        return Err(DiffusionError::StepOutOfRange { t, t_max: model.t_max() });
    }
    let n = g0.len();
    let mut out = g0.clone();
    out.set_t(t);
    let node_bar = model.q_bar(Family::Node, t);
    for i in 0..n {
        let row = node_bar.row(g0.node(i));
        out.set_node(i, sample_categorical(rng, row));
    }
    let edge_bar = model.q_bar(Family::Edge, t);
    for i in 0..n {
        for j in (i + 1)..n {
            let row = edge_bar.row(g0.edge(i, j));
            out.set_edge(i, j, sample_categorical(rng, row));
        }
    }
    Ok(out)
}

/// Draws the t = T prior: iid node states from the node marginal,
/// upper-triangular edges from the edge marginal, mirrored.
pub fn sample_prior<R: Rng>(
    model: &TransitionModel,
    n: usize,
    rng: &mut R,
) -> Result<OneHotGraph, DiffusionError> {
    if n == 0 {
        return Err(DiffusionError::BadNodeCount(n));
    }
    let m_node = model.marginal(Family::Node);
    let nodes: Vec<usize> = (0..n).map(|_| sample_categorical(rng, m_node)).collect();
    let mut g = OneHotGraph::new(model.space(), nodes, model.t_max());
    let m_edge = model.marginal(Family::Edge);
    for i in 0..n {
        for j in (i + 1)..n {
            g.set_edge(i, j, sample_categorical(rng, m_edge));
        }
    }
    Ok(g)
}

/// Per-element predicted clean-state distributions p(x^0 | G^t). Edge entries
/// follow the upper triangle in (i, j) lexicographic order.
#[derive(Debug, Clone)]
pub struct Predictions {
    pub node: Vec<Vec<f64>>,
    pub edge: Vec<Vec<f64>>,
}

/// The denoiser contract consumed by the reverse sampler.
pub trait DenoisePredictor {
    fn predict(&self, g: &OneHotGraph, feats: &AuxFeatures) -> Predictions;
}

/// Per-element categorical distributions over the next (t-1) state.
#[derive(Debug, Clone)]
pub struct StepDistributions {
    pub node: Vec<Vec<f64>>,
    /// Upper-triangular pairs in lexicographic order.
    pub pairs: Vec<(usize, usize)>,
    pub edge: Vec<Vec<f64>>,
}

/// Hook applied to the reverse-step distributions before sampling; classifier
/// guidance implements this.
pub trait StepGuide {
    fn adjust(&self, step: &mut StepDistributions, g: &OneHotGraph, t: usize);
}

/// Runs the reverse chain t = T..1 and returns the t = 0 graph state.
///
/// RNG consumption order is fixed: prior nodes, prior edges, then per step
/// nodes 0..n followed by upper-triangular edges in lexicographic order; a
/// guide that leaves distributions unchanged reproduces the unguided stream
/// bit for bit.
pub fn sample_chain<R: Rng>(
    model: &TransitionModel,
    denoiser: &dyn DenoisePredictor,
    n: usize,
    rng: &mut R,
    guide: Option<&dyn StepGuide>,
) -> Result<OneHotGraph, DiffusionError> {
    let t_max = model.t_max();
    let mut g = sample_prior(model, n, rng)?;

    for t in (1..=t_max).rev() {
        let feats = features_from_adjacency(&g.adjacency(), t, t_max);
        let pred = denoiser.predict(&g, &feats);
        debug_assert_eq!(pred.node.len(), n);

        let mut step = build_step_distributions(model, &pred, &g, t)?;
        if let Some(guide) = guide {
            guide.adjust(&mut step, &g, t);
        }

        let mut next = g.clone();
        next.set_t(t - 1);
        for i in 0..n {
            next.set_node(i, sample_categorical(rng, &step.node[i]));
        }
        for (k, &(i, j)) in step.pairs.iter().enumerate() {
            next.set_edge(i, j, sample_categorical(rng, &step.edge[k]));
        }
        g = next;
    }
    Ok(g)
}

/// Forms the per-element reverse-step distributions: the denoising mixture
/// for t > 1, the predicted clean distribution itself at t = 1.
pub fn build_step_distributions(
    model: &TransitionModel,
    pred: &Predictions,
    g: &OneHotGraph,
    t: usize,
) -> Result<StepDistributions, DiffusionError> {
    let n = g.len();
    let mut node = Vec::with_capacity(n);
    for i in 0..n {
        let d = if t > 1 {
            denoising_distribution(model, Family::Node, &pred.node[i], g.node(i), t)?
        } else {
            normalize_checked(&pred.node[i])?
        };
        node.push(d);
    }
    let mut pairs = Vec::new();
    let mut edge = Vec::new();
    let mut k = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = if t > 1 {
                denoising_distribution(model, Family::Edge, &pred.edge[k], g.edge(i, j), t)?
            } else {
                normalize_checked(&pred.edge[k])?
            };
            pairs.push((i, j));
            edge.push(d);
            k += 1;
        }
    }
    Ok(StepDistributions { node, pairs, edge })
}

fn normalize_checked(p: &[f64]) -> Result<Vec<f64>, DiffusionError> {
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > 1e-6 || p.iter().any(|&x| x < 0.0) {
        return Err(DiffusionError::UnnormalizedPrediction(sum));
    }
    Ok(p.iter().map(|&x| x / sum).collect())
}

/// Unconditional molecular sampling: reverse chain plus one-hot decoding.
/// Validity is not guaranteed; callers apply the valence check.
pub fn sample_unconditional<R: Rng>(
    model: &TransitionModel,
    denoiser: &dyn DenoisePredictor,
    n: usize,
    rng: &mut R,
) -> Result<MolecularGraph, DiffusionError> {
    sample_chain(model, denoiser, n, rng, None)?.decode()
}
