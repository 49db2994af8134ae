//! Limiting distribution of `T = l_max / l_min` under H0.
//!
//! `l_max` and `l_min` are treated as independent with densities
//! `f_max(z) = f_TW2((z - b)/ν)/ν` and `f_min(z) = f_TW2((a - z)/|μ|)/|μ|`,
//! so for `t > 1`
//!
//! ```text
//! f_T(t) = ∫_0^∞ x f_max(t x) f_min(x) dx
//!        = ∫ f_TW2(y) x(y) f_max(t x(y)) dy,    x(y) = a - |μ| y,
//! ```
//!
//! the second form integrating over the Tracy–Widom support of `l_min`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_probability, Error, Result};
use crate::interp::{bisect_increasing, cubic_lagrange, hermite, limit_slopes, trapezoid};
use crate::scaling::{ScalingConstants, SensingConfig};
use crate::tracy_widom::TracyWidomTable;

/// Number of uniform abscissae in a tabulated ratio distribution.
pub const RATIO_GRID_POINTS: usize = 2001;
/// Relative density level that delimits the quadrature support.
pub const SUPPORT_LEVEL: f64 = 1e-12;
/// Tail mass left outside the tabulated `t` range on each side.
pub const TAIL_MASS: f64 = 1e-7;
const INNER_STEP: f64 = 0.01;

pub fn lmax_limit_pdf(consts: &ScalingConstants, table: &TracyWidomTable, z: f64) -> f64 {
    table.pdf((z - consts.b) / consts.nu) / consts.nu
}

pub fn lmin_limit_pdf(consts: &ScalingConstants, table: &TracyWidomTable, z: f64) -> f64 {
    let m = libm::fabs(consts.mu);
    table.pdf((consts.a - z) / m) / m
}

/// Quadrature nodes `y` and weights `w·f_TW2(y)` over the support of `l_min`.
struct InnerRule {
    x: Vec<f64>,
    weight: Vec<f64>,
}

impl InnerRule {
    fn new(consts: &ScalingConstants, table: &TracyWidomTable) -> Self {
        let m = libm::fabs(consts.mu);
        let (lo, hi) = table.effective_support(SUPPORT_LEVEL);
        // x = a - |μ| y >= 0
        let hi = hi.min(consts.a / m);
        let mut intervals = libm::ceil((hi - lo) / INNER_STEP) as usize;
        if intervals % 2 == 1 {
            intervals += 1;
        }
        let h = (hi - lo) / intervals as f64;
        let mut x = Vec::with_capacity(intervals + 1);
        let mut weight = Vec::with_capacity(intervals + 1);
        for i in 0..=intervals {
            let y = lo + i as f64 * h;
            let w = if i == 0 || i == intervals {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            x.push(consts.a - m * y);
            weight.push(w * h / 3.0 * table.pdf(y));
        }
        InnerRule { x, weight }
    }

    fn density(&self, consts: &ScalingConstants, table: &TracyWidomTable, t: f64) -> f64 {
        if !(t > 1.0) {
            return 0.0;
        }
        self.x
            .iter()
            .zip(&self.weight)
            .map(|(&x, &w)| w * x * lmax_limit_pdf(consts, table, t * x))
            .sum()
    }
}

/// `f_T(t)`; zero for `t <= 1`.
pub fn ratio_pdf(consts: &ScalingConstants, table: &TracyWidomTable, t: f64) -> f64 {
    InnerRule::new(consts, table).density(consts, table, t)
}

/// Tabulated `f_T` and `F_T` for one `(K, N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioDistribution {
    config: SensingConfig,
    consts: ScalingConstants,
    t_grid: Vec<f64>,
    pdf: Vec<f64>,
    cdf: Vec<f64>,
    slopes: Vec<f64>,
}

impl RatioDistribution {
    /// Assembles a distribution from stored arrays, checking every invariant.
    pub fn from_parts(config: SensingConfig, t_grid: Vec<f64>, pdf: Vec<f64>, cdf: Vec<f64>) -> Result<Self> {
        let n = t_grid.len();
        if pdf.len() != n {
            return Err(Error::Shape { expected: n, found: pdf.len() });
        }
        if cdf.len() != n {
            return Err(Error::Shape { expected: n, found: cdf.len() });
        }
        if n < 4 {
            return Err(Error::Invariant("ratio distribution needs at least four points"));
        }
        if t_grid.iter().chain(&pdf).chain(&cdf).any(|v| !v.is_finite()) {
            return Err(Error::Invariant("ratio distribution holds non-finite values"));
        }
        if !(t_grid[0] > 1.0) || t_grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Invariant("ratio grid must be strictly increasing and above 1"));
        }
        if pdf.iter().any(|&v| v < 0.0) {
            return Err(Error::Invariant("ratio density is negative"));
        }
        if cdf.windows(2).any(|w| w[1] < w[0]) || cdf[0] < 0.0 {
            return Err(Error::Invariant("ratio CDF is not monotone"));
        }
        if cdf[n - 1] < 1.0 - 1e-3 || cdf[n - 1] > 1.0 + 1e-3 {
            return Err(Error::Invariant("ratio CDF does not reach 1"));
        }
        let mass = trapezoid(&t_grid, &pdf);
        if libm::fabs(mass - 1.0) > 1e-3 {
            return Err(Error::Invariant("ratio density does not integrate to one"));
        }
        let slopes = limit_slopes(&t_grid, &cdf, &pdf);
        let consts = ScalingConstants::from_config(&config);
        Ok(RatioDistribution { config, consts, t_grid, pdf, cdf, slopes })
    }

    pub fn config(&self) -> SensingConfig {
        self.config
    }

    pub fn consts(&self) -> ScalingConstants {
        self.consts
    }

    pub fn t_grid(&self) -> &[f64] {
        &self.t_grid
    }

    pub fn pdf_values(&self) -> &[f64] {
        &self.pdf
    }

    pub fn cdf_values(&self) -> &[f64] {
        &self.cdf
    }

    /// Interpolated density; zero outside the tabulated range.
    pub fn pdf(&self, t: f64) -> f64 {
        let n = self.t_grid.len();
        if !(t >= self.t_grid[0] && t <= self.t_grid[n - 1]) {
            return 0.0;
        }
        cubic_lagrange(&self.t_grid, &self.pdf, t).max(0.0)
    }

    /// Monotone interpolation, clamped to 0 and 1 outside the grid.
    pub fn cdf(&self, t: f64) -> f64 {
        let n = self.t_grid.len();
        if t.is_nan() {
            return f64::NAN;
        }
        if t <= self.t_grid[0] {
            return 0.0;
        }
        if t >= self.t_grid[n - 1] {
            return 1.0;
        }
        hermite(&self.t_grid, &self.cdf, &self.slopes, t).clamp(0.0, 1.0)
    }

    pub fn inverse_cdf(&self, p: f64) -> Result<f64> {
        check_probability("ratio quantile level must lie in (0, 1)", p)?;
        let n = self.t_grid.len();
        Ok(bisect_increasing(|t| self.cdf(t), self.t_grid[0], self.t_grid[n - 1], p, 1e-13))
    }

    pub fn mean(&self) -> f64 {
        let f: Vec<f64> = self.t_grid.iter().zip(&self.pdf).map(|(t, p)| t * p).collect();
        trapezoid(&self.t_grid, &f)
    }
}

/// `(t_min, t_bulk, t_max)`: each tail outside `[t_min, t_max]` carries less
/// than [`TAIL_MASS`]. `t_bulk < t_max` only when the support of `l_min`
/// reaches zero; the stretch beyond `t_bulk` is then covered geometrically.
fn t_range(consts: &ScalingConstants, table: &TracyWidomTable) -> Result<(f64, f64, f64)> {
    let lo = table.inverse_cdf(TAIL_MASS)?;
    let hi = table.inverse_cdf(1.0 - TAIL_MASS)?;
    let m = libm::fabs(consts.mu);
    let top = consts.b + consts.nu * hi;
    let t_min = ((consts.b + consts.nu * lo) / (consts.a + m * hi.max(-lo))).max(1.0 + 1e-9);
    let y_zero = consts.a / m;
    if y_zero > hi {
        let t = top / (consts.a - m * hi);
        return Ok((t_min, t, t));
    }
    let y_floor = table.inverse_cdf((table.cdf(y_zero) - TAIL_MASS).max(TAIL_MASS))?;
    let x_floor = consts.a - m * y_floor;
    if !(x_floor > 0.0) {
        return Err(Error::Invariant("smallest-eigenvalue support collapses onto zero"));
    }
    let t_bulk = (top / (consts.a - m * table.inverse_cdf(0.999)?.min(y_floor))).max(t_min * (1.0 + 1e-6));
    Ok((t_min, t_bulk, (top / x_floor).max(t_bulk)))
}

/// Tabulates `f_T` on [`RATIO_GRID_POINTS`] uniform abscissae (plus a
/// geometric tail when `l_min` can approach zero) and integrates it
/// cumulatively with a fourth-order rule on the uniform part.
pub fn build_ratio_distribution(config: &SensingConfig, table: &TracyWidomTable) -> Result<RatioDistribution> {
    let consts = ScalingConstants::from_config(config);
    let (t_min, t_bulk, t_max) = t_range(&consts, table)?;
    let rule = InnerRule::new(&consts, table);
    let n = RATIO_GRID_POINTS;
    let h = (t_bulk - t_min) / (n - 1) as f64;
    let mut t_grid: Vec<f64> = (0..n).map(|i| t_min + i as f64 * h).collect();
    if t_max > t_bulk {
        let ratio = 1.0 + h / t_bulk;
        let mut t = t_bulk * ratio;
        let growth = 1.002;
        let mut step_ratio = ratio;
        while t < t_max {
            t_grid.push(t);
            step_ratio = 1.0 + (step_ratio - 1.0) * growth;
            t *= step_ratio;
        }
        t_grid.push(t_max.max(t));
    }
    let total_points = t_grid.len();
    let pdf: Vec<f64> = t_grid.iter().map(|&t| rule.density(&consts, table, t).max(0.0)).collect();

    let mut cdf = vec![0.0; total_points];
    for i in 0..n - 1 {
        let piece = if i == 0 {
            h / 24.0 * (9.0 * pdf[0] + 19.0 * pdf[1] - 5.0 * pdf[2] + pdf[3])
        } else if i == n - 2 {
            h / 24.0 * (9.0 * pdf[n - 1] + 19.0 * pdf[n - 2] - 5.0 * pdf[n - 3] + pdf[n - 4])
        } else {
            h / 24.0 * (-pdf[i - 1] + 13.0 * pdf[i] + 13.0 * pdf[i + 1] - pdf[i + 2])
        };
        cdf[i + 1] = cdf[i] + piece.max(0.0);
    }
    for i in n..total_points {
        cdf[i] = cdf[i - 1] + 0.5 * (t_grid[i] - t_grid[i - 1]) * (pdf[i] + pdf[i - 1]);
    }
    let total = cdf[total_points - 1];
    if libm::fabs(total - 1.0) > 1e-2 {
        return Err(Error::Invariant("ratio density normalisation failed (support or grid too narrow)"));
    }
    RatioDistribution::from_parts(*config, t_grid, pdf, cdf)
}

pub fn ratio_cdf(dist: &RatioDistribution, t: f64) -> f64 {
    dist.cdf(t)
}

pub fn ratio_inverse_cdf(dist: &RatioDistribution, p: f64) -> Result<f64> {
    dist.inverse_cdf(p)
}
