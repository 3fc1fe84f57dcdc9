//! Marginal transition matrices Q^t = alpha^t I + (1 - alpha^t) 1 m^T and
//! their cumulative products, per class family.

use crate::error::DiffusionError;
use crate::marginals::Marginals;
use crate::schedule::NoiseSchedule;
use crate::statespace::StateSpace;

/// Small dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMat {
    k: usize,
    a: Vec<f64>,
}

impl SquareMat {
    pub fn identity(k: usize) -> Self {
        let mut a = vec![0.0; k * k];
        for i in 0..k {
            a[i * k + i] = 1.0;
        }
        SquareMat { k, a }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.k + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.a[i * self.k..(i + 1) * self.k]
    }

    pub fn matmul(&self, rhs: &SquareMat) -> SquareMat {
        let k = self.k;
        let mut out = vec![0.0; k * k];
        for i in 0..k {
            for l in 0..k {
                let ail = self.a[i * k + l];
                if ail == 0.0 {
                    continue;
                }
                for j in 0..k {
                    out[i * k + j] += ail * rhs.a[l * k + j];
                }
            }
        }
        SquareMat { k, a: out }
    }
}

/// Which class family a matrix or distribution refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Node,
    Edge,
}

/// Per-step and cumulative transition matrices for nodes and edges.
#[derive(Debug, Clone)]
pub struct TransitionModel {
    space: StateSpace,
    schedule: NoiseSchedule,
    node_marginal: Vec<f64>,
    edge_marginal: Vec<f64>,
    node_q: Vec<SquareMat>,
    node_q_bar: Vec<SquareMat>,
    edge_q: Vec<SquareMat>,
    edge_q_bar: Vec<SquareMat>,
}

/// Builds the transition stack for a schedule and marginal pair.
pub fn build_transitions(
    schedule: &NoiseSchedule,
    marginals: &Marginals,
) -> Result<TransitionModel, DiffusionError> {
    let space = marginals.space;
    validate_marginal(&marginals.node, space.atom_classes)?;
    validate_marginal(&marginals.edge, space.edge_classes)?;

    let (node_q, node_q_bar) = family_stack(schedule, &marginals.node);
    let (edge_q, edge_q_bar) = family_stack(schedule, &marginals.edge);

    Ok(TransitionModel {
        space,
        schedule: schedule.clone(),
        node_marginal: marginals.node.clone(),
        edge_marginal: marginals.edge.clone(),
        node_q,
        node_q_bar,
        edge_q,
        edge_q_bar,
    })
}

fn family_stack(schedule: &NoiseSchedule, m: &[f64]) -> (Vec<SquareMat>, Vec<SquareMat>) {
    let k = m.len();
    let t_max = schedule.t_max();
    let mut q = Vec::with_capacity(t_max + 1);
    let mut q_bar = Vec::with_capacity(t_max + 1);
    q.push(SquareMat::identity(k));
    q_bar.push(SquareMat::identity(k));
    for t in 1..=t_max {
        let alpha = schedule.alpha(t);
        let mut a = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                a[i * k + j] = (1.0 - alpha) * m[j] + if i == j { alpha } else { 0.0 };
            }
        }
        let qt = SquareMat { k, a };
        let bar = q_bar[t - 1].matmul(&qt);
        q.push(qt);
        q_bar.push(bar);
    }
    (q, q_bar)
}

fn validate_marginal(m: &[f64], expected: usize) -> Result<(), DiffusionError> {
    if m.len() != expected {
        return Err(DiffusionError::ClassCountMismatch { expected, got: m.len() });
    }
    if m.iter().any(|&x| x < 0.0 || !x.is_finite()) {
        return Err(DiffusionError::BadMarginal("negative or non-finite entry".into()));
    }
    let sum: f64 = m.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(DiffusionError::BadMarginal(format!("sums to {sum}")));
    }
    Ok(())
}

impl TransitionModel {
    #[inline]
    pub fn space(&self) -> StateSpace {
        self.space
    }

    pub fn schedule(&self) -> &NoiseSchedule {
        &self.schedule
    }

    #[inline]
    pub fn t_max(&self) -> usize {
        self.schedule.t_max()
    }

    pub fn marginal(&self, family: Family) -> &[f64] {
        match family {
            Family::Node => &self.node_marginal,
            Family::Edge => &self.edge_marginal,
        }
    }

    /// Q^t; index 0 is the identity.
    pub fn q(&self, family: Family, t: usize) -> &SquareMat {
        match family {
            Family::Node => &self.node_q[t],
            Family::Edge => &self.edge_q[t],
        }
    }

    /// Cumulative Q-bar^t; index 0 is the identity.
    pub fn q_bar(&self, family: Family, t: usize) -> &SquareMat {
        match family {
            Family::Node => &self.node_q_bar[t],
            Family::Edge => &self.edge_q_bar[t],
        }
    }

    /// Largest total-variation distance between any row of Q-bar^T and the
    /// family marginal; small for convergent schedules.
    pub fn max_tv_to_marginal(&self, family: Family) -> f64 {
        let m = self.marginal(family);
        let q = self.q_bar(family, self.t_max());
        let mut worst = 0.0f64;
        for i in 0..q.dim() {
            let tv: f64 = q
                .row(i)
                .iter()
                .zip(m)
                .map(|(a, b)| (a - b).abs())
                .sum::<f64>()
                / 2.0;
            worst = worst.max(tv);
        }
        worst
    }
}
