//! Noise schedule: per-step retention coefficients and their cumulative
//! products.

use crate::error::DiffusionError;

/// Retention schedule alpha^t for t in 1..=T with cumulative products
/// alpha_bar^t (alpha_bar^0 = 1).
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSchedule {
    alpha: Vec<f64>,
    alpha_bar: Vec<f64>,
}

pub const DEFAULT_T: usize = 500;
const ALPHA_FLOOR: f64 = 1e-5;

impl NoiseSchedule {
    /// Cosine cumulative schedule, normalized so alpha_bar^0 = 1, with the
    /// per-step retention floored at 1e-5 to keep alpha in (0, 1].
    pub fn cosine(t_max: usize) -> Result<Self, DiffusionError> {
        if t_max == 0 {
            return Err(DiffusionError::EmptySchedule);
        }
        let s = 0.008;
        let f = |t: f64| {
            let x = (t / t_max as f64 + s) / (1.0 + s) * std::f64::consts::FRAC_PI_2;
            x.cos().powi(2)
        };
        let f0 = f(0.0);
        let mut alpha = Vec::with_capacity(t_max);
        let mut prev_bar = 1.0f64;
        for t in 1..=t_max {
            let bar_t = f(t as f64) / f0;
            let a = (bar_t / prev_bar).clamp(ALPHA_FLOOR, 1.0);
            alpha.push(a);
            prev_bar *= a;
        }
        Self::from_alphas(alpha)
    }

    /// Builds a schedule from explicit per-step retentions in (0, 1].
    pub fn from_alphas(alpha: Vec<f64>) -> Result<Self, DiffusionError> {
        if alpha.is_empty() {
            return Err(DiffusionError::EmptySchedule);
        }
        for (i, &a) in alpha.iter().enumerate() {
            if !(a > 0.0 && a <= 1.0) || !a.is_finite() {
                return Err(DiffusionError::BadAlpha { t: i + 1, value: a });
            }
        }
        let mut alpha_bar = Vec::with_capacity(alpha.len() + 1);
        alpha_bar.push(1.0);
        for &a in &alpha {
            alpha_bar.push(alpha_bar.last().unwrap() * a);
        }
        Ok(NoiseSchedule { alpha, alpha_bar })
    }

    #[inline]
    pub fn t_max(&self) -> usize {
        self.alpha.len()
    }

    /// alpha^t for t in 1..=T.
    #[inline]
    pub fn alpha(&self, t: usize) -> f64 {
        self.alpha[t - 1]
    }

    /// alpha_bar^t for t in 0..=T.
    #[inline]
    pub fn alpha_bar(&self, t: usize) -> f64 {
        self.alpha_bar[t]
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alpha
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_schedule_shape() {
        let s = NoiseSchedule::cosine(500).unwrap();
        assert_eq!(s.t_max(), 500);
        assert_eq!(s.alpha_bar(0), 1.0);
        assert!(s.alpha_bar(500) < 1e-4, "terminal alpha_bar {}", s.alpha_bar(500));
        for t in 1..=500 {
            assert!(s.alpha(t) > 0.0 && s.alpha(t) <= 1.0);
            assert!(
                s.alpha_bar(t) < s.alpha_bar(t - 1),
                "alpha_bar must strictly decrease"
            );
            let ratio = s.alpha_bar(t) / s.alpha_bar(t - 1);
            assert!((ratio - s.alpha(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn short_cosine_schedules_also_valid() {
        for t_max in [1usize, 2, 5, 10, 50] {
            let s = NoiseSchedule::cosine(t_max).unwrap();
            assert_eq!(s.t_max(), t_max);
            assert!(s.alpha_bar(t_max) < 1e-3);
        }
    }

    #[test]
    fn custom_alphas_validated() {
        assert!(NoiseSchedule::from_alphas(vec![]).is_err());
        assert!(NoiseSchedule::from_alphas(vec![0.0]).is_err());
        assert!(NoiseSchedule::from_alphas(vec![1.1]).is_err());
        let s = NoiseSchedule::from_alphas(vec![0.5, 0.7]).unwrap();
        assert!((s.alpha_bar(2) - 0.35).abs() < 1e-15);
    }
}
