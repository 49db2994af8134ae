//! Sensing configuration and the limiting-eigenvalue scaling constants.

use crate::error::{Error, Result};

/// `K` cooperating receivers, `N` samples per receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SensingConfig {
    receivers: usize,
    samples: usize,
}

impl SensingConfig {
    /// Requires `2 <= K < N`.
    pub fn new(receivers: usize, samples: usize) -> Result<Self> {
        if receivers < 2 || samples <= receivers {
            return Err(Error::InvalidConfig { receivers, samples });
        }
        Ok(SensingConfig { receivers, samples })
    }

    pub fn receivers(&self) -> usize {
        self.receivers
    }

    pub fn samples(&self) -> usize {
        self.samples
    }
}

/// Centring and scaling of the extreme eigenvalues of `Y Yᴴ`:
/// `l_max ≈ b + ν·TW2`, `l_min ≈ a + μ·TW2`, with `μ < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingConstants {
    pub a: f64,
    pub b: f64,
    pub nu: f64,
    pub mu: f64,
}

impl ScalingConstants {
    pub fn from_config(config: &SensingConfig) -> Self {
        Self::closed_form(config.receivers as f64, config.samples as f64)
    }

    /// The closed forms only need `1 <= K < N`; this entry point accepts the
    /// single-receiver case that [`SensingConfig`] excludes.
    pub fn from_counts(receivers: usize, samples: usize) -> Result<Self> {
        if receivers < 1 || samples <= receivers {
            return Err(Error::InvalidConfig { receivers, samples });
        }
        Ok(Self::closed_form(receivers as f64, samples as f64))
    }

    fn closed_form(k: f64, n: f64) -> Self {
        let (rk, rn) = (libm::sqrt(k), libm::sqrt(n));
        ScalingConstants {
            a: (rn - rk) * (rn - rk),
            b: (rn + rk) * (rn + rk),
            nu: (rn + rk) * libm::cbrt(1.0 / rn + 1.0 / rk),
            mu: (rk - rn) * libm::cbrt(1.0 / rk - 1.0 / rn),
        }
    }

    /// `b / a`.
    pub fn limit_ratio(&self) -> f64 {
        self.b / self.a
    }
}

pub fn scaling_constants(config: &SensingConfig) -> ScalingConstants {
    ScalingConstants::from_config(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_regimes() {
        assert!(SensingConfig::new(50, 50).is_err());
        assert!(SensingConfig::new(60, 50).is_err());
        assert!(SensingConfig::new(1, 50).is_err());
        assert!(ScalingConstants::from_counts(4, 4).is_err());
        assert!(ScalingConstants::from_counts(0, 4).is_err());
    }

    #[test]
    fn single_receiver_closed_form() {
        let c = ScalingConstants::from_counts(1, 4).unwrap();
        assert_eq!(c.a, 1.0);
        assert_eq!(c.b, 9.0);
        assert_eq!(c.limit_ratio(), 9.0);
    }

    #[test]
    fn signs_and_order() {
        for (k, n) in [(2, 3), (2, 100), (50, 1000), (200, 201)] {
            let c = scaling_constants(&SensingConfig::new(k, n).unwrap());
            assert!(0.0 < c.a && c.a < c.b && c.nu > 0.0 && c.mu < 0.0, "{k} {n}");
        }
    }
}
