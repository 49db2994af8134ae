//! Standard normal quantile.
//!
//! A rational starting guess (absolute error below 4.5e-4) is polished by
//! Halley iterations on `Φ(x) = erfc(-x/√2)/2`, which converge cubically.

use crate::error::{check_probability, Result};

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

fn lower_tail_guess(p: f64) -> f64 {
    let t = libm::sqrt(-2.0 * libm::log(p));
    let num = 2.515_517 + t * (0.802_853 + t * 0.010_328);
    let den = 1.0 + t * (1.432_788 + t * (0.189_269 + t * 0.001_308));
    num / den - t
}

/// `Φ⁻¹(p)` for `p ∈ (0, 0.5]`.
fn lower_quantile(p: f64) -> f64 {
    let mut x = lower_tail_guess(p);
    for _ in 0..8 {
        let e = 0.5 * libm::erfc(-x / core::f64::consts::SQRT_2) - p;
        let u = e * SQRT_2PI * libm::exp(0.5 * x * x);
        let step = u / (1.0 + 0.5 * x * u);
        x -= step;
        if libm::fabs(step) <= 1e-16 * libm::fabs(x).max(1.0) {
            break;
        }
    }
    x
}

/// `Φ⁻¹(p)` for `p ∈ (0, 1)`.
pub fn normal_quantile(p: f64) -> Result<f64> {
    check_probability("normal quantile level must lie in (0, 1)", p)?;
    if p == 0.5 {
        return Ok(0.0);
    }
    Ok(if p < 0.5 { lower_quantile(p) } else { -lower_quantile(1.0 - p) })
}

/// Upper-tail quantile `Q⁻¹(p) = Φ⁻¹(1 - p)`.
pub fn normal_upper_quantile(p: f64) -> Result<f64> {
    Ok(-normal_quantile(p)?)
}
