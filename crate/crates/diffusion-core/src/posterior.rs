//! Exact single-element posterior q(x^{t-1} | x^t, x^0) and the denoising
//! mixture over hypothetical clean states.

use crate::error::DiffusionError;
use crate::transition::{Family, TransitionModel};

/// Posterior over x^{t-1} classes: normalize x^t (Q^t)^T ⊙ x^0 Q-bar^{t-1}.
/// At t = 1 this degenerates to a point mass at x0.
pub fn posterior_term(
    model: &TransitionModel,
    family: Family,
    x_t: usize,
    x0: usize,
    t: usize,
) -> Result<Vec<f64>, DiffusionError> {
    if t < 1 || t > model.t_max() {
        return Err(DiffusionError::StepOutOfRange { t, t_max: model.t_max() });
    }
    let q_t = model.q(family, t);
    let q_bar_prev = model.q_bar(family, t - 1);
    let k = q_t.dim();
    let mut out = vec![0.0; k];
    let mut norm = 0.0;
    for j in 0..k {
        // x^t (Q^t)^T picks column x_t of Q^t; x^0 Q-bar^{t-1} picks row x0
        let v = q_t.get(j, x_t) * q_bar_prev.get(x0, j);
        out[j] = v;
        norm += v;
    }
    assert!(
        norm > 0.0,
        "zero posterior normalizer at t={t}, x_t={x_t}, x0={x0}; \
         impossible for alpha in (0,1) with full-support marginals"
    );
    for v in out.iter_mut() {
        *v /= norm;
    }
    Ok(out)
}

/// Denoising distribution q(x^{t-1} | G^t): the mixture of posterior terms
/// over all hypothetical clean classes, weighted by the predicted p(x^0|G^t).
pub fn denoising_distribution(
    model: &TransitionModel,
    family: Family,
    pred: &[f64],
    x_t: usize,
    t: usize,
) -> Result<Vec<f64>, DiffusionError> {
    let k = model.q(family, 1).dim();
    if pred.len() != k {
        return Err(DiffusionError::ClassCountMismatch { expected: k, got: pred.len() });
    }
    let sum: f64 = pred.iter().sum();
    if (sum - 1.0).abs() > 1e-6 || pred.iter().any(|&p| p < 0.0) {
        return Err(DiffusionError::UnnormalizedPrediction(sum));
    }
    let mut out = vec![0.0; k];
    for x0 in 0..k {
        if pred[x0] == 0.0 {
            continue;
        }
        let post = posterior_term(model, family, x_t, x0, t)?;
        for j in 0..k {
            out[j] += pred[x0] * post[j];
        }
    }
    // mixture of normalized terms; renormalize only against fp drift
    let norm: f64 = out.iter().sum();
    for v in out.iter_mut() {
        *v /= norm;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marginals::Marginals;
    use crate::schedule::NoiseSchedule;
    use crate::statespace::StateSpace;
    use crate::transition::build_transitions;

    fn toy_model(alphas: Vec<f64>, node_m: Vec<f64>) -> TransitionModel {
        let k = node_m.len();
        let schedule = NoiseSchedule::from_alphas(alphas).unwrap();
        let m = Marginals {
            space: StateSpace::new(k, k),
            node: node_m.clone(),
            edge: node_m,
        };
        build_transitions(&schedule, &m).unwrap()
    }

    #[test]
    fn frozen_chain_posterior_is_point_mass() {
        // alpha = 1 everywhere: the chain never moves, so x^t = x^0 and the
        // posterior concentrates there
        let model = toy_model(vec![1.0, 1.0], vec![0.5, 0.5]);
        let p = posterior_term(&model, Family::Node, 0, 0, 2).unwrap();
        assert_eq!(p, vec![1.0, 0.0]);
    }

    #[test]
    fn two_class_matches_explicit_bayes() {
        // alpha^1 yields alpha_bar^{t-1}=0.7, alpha^2 = 0.5
        let model = toy_model(vec![0.7, 0.5], vec![0.5, 0.5]);
        for x_t in 0..2 {
            for x0 in 0..2 {
                let got = posterior_term(&model, Family::Node, x_t, x0, 2).unwrap();
                // brute-force Bayes over the two states
                let q_t = model.q(Family::Node, 2);
                let q_prev = model.q_bar(Family::Node, 1);
                let mut want = vec![0.0; 2];
                let mut norm = 0.0;
                for j in 0..2 {
                    let v = q_prev.get(x0, j) * q_t.get(j, x_t);
                    want[j] = v;
                    norm += v;
                }
                for j in 0..2 {
                    want[j] /= norm;
                    assert!((got[j] - want[j]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn posterior_sums_to_one() {
        let model = toy_model(vec![0.9, 0.6, 0.3], vec![0.2, 0.3, 0.5]);
        for t in 1..=3 {
            for x_t in 0..3 {
                for x0 in 0..3 {
                    let p = posterior_term(&model, Family::Node, x_t, x0, t).unwrap();
                    assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn point_mass_prediction_equals_posterior() {
        let model = toy_model(vec![0.8, 0.5], vec![0.3, 0.7]);
        let pred = vec![0.0, 1.0];
        let got = denoising_distribution(&model, Family::Node, &pred, 0, 2).unwrap();
        let want = posterior_term(&model, Family::Node, 0, 1, 2).unwrap();
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn uniform_prediction_averages_posteriors() {
        let model = toy_model(vec![0.8, 0.5], vec![0.3, 0.7]);
        let got = denoising_distribution(&model, Family::Node, &[0.5, 0.5], 1, 2).unwrap();
        let p0 = posterior_term(&model, Family::Node, 1, 0, 2).unwrap();
        let p1 = posterior_term(&model, Family::Node, 1, 1, 2).unwrap();
        for j in 0..2 {
            assert!((got[j] - 0.5 * (p0[j] + p1[j])).abs() < 1e-12);
        }
    }

    #[test]
    fn three_class_brute_force_marginalization() {
        let model = toy_model(vec![0.9, 0.4, 0.7], vec![0.2, 0.5, 0.3]);
        let pred = vec![0.1, 0.6, 0.3];
        for t in [2usize, 3] {
            for x_t in 0..3 {
                let got = denoising_distribution(&model, Family::Node, &pred, x_t, t).unwrap();
                let mut want = vec![0.0; 3];
                for x0 in 0..3 {
                    let post = posterior_term(&model, Family::Node, x_t, x0, t).unwrap();
                    for j in 0..3 {
                        want[j] += pred[x0] * post[j];
                    }
                }
                for j in 0..3 {
                    assert!((got[j] - want[j]).abs() < 1e-12);
                }
                assert!((got.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unnormalized_prediction_rejected() {
        let model = toy_model(vec![0.8], vec![0.5, 0.5]);
        assert!(matches!(
            denoising_distribution(&model, Family::Node, &[0.6, 0.6], 0, 1),
            Err(DiffusionError::UnnormalizedPrediction(_))
        ));
    }
}
