//! Order-2 Tracy–Widom distribution tabulated from a Painlevé II solution.
//!
//! `F(s) = exp(-u(s))` with `u(s) = ∫_s^∞ (x - s) q(x)^2 dx` and density
//! `f(s) = F(s) ∫_s^∞ q(x)^2 dx`. Both inner integrals are accumulated from
//! the right with the end-corrected trapezoidal rule (fourth order, using the
//! exact derivatives `2 q q'` and `-q^2`); the part beyond `s_right` uses the
//! closed forms for `q = -Ai`.

use alloc::vec;
use alloc::vec::Vec;

use crate::airy::{airy_ai, airy_ai_prime};
use crate::error::{check_probability, Error, Result};
use crate::interp::{bisect_increasing, cubic_lagrange, hermite, limit_slopes, simpson, trapezoid};
use crate::painleve::{solve_painleve_ii, PainleveSolution};

pub const DEFAULT_S_LEFT: f64 = -12.0;
pub const DEFAULT_S_RIGHT: f64 = 10.0;
pub const DEFAULT_TOL: f64 = 1e-10;

/// Parameters a table was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableMeta {
    pub s_left: f64,
    pub s_right: f64,
    pub tol: f64,
}

/// Tabulated `F_TW2` and `f_TW2` on an ascending grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TracyWidomTable {
    grid: Vec<f64>,
    cdf: Vec<f64>,
    pdf: Vec<f64>,
    slopes: Vec<f64>,
    meta: TableMeta,
}

impl TracyWidomTable {
    /// Assembles a table from stored arrays, checking every invariant.
    pub fn from_parts(grid: Vec<f64>, cdf: Vec<f64>, pdf: Vec<f64>, meta: TableMeta) -> Result<Self> {
        let n = grid.len();
        if cdf.len() != n {
            return Err(Error::Shape { expected: n, found: cdf.len() });
        }
        if pdf.len() != n {
            return Err(Error::Shape { expected: n, found: pdf.len() });
        }
        if n < 4 {
            return Err(Error::Invariant("Tracy-Widom table needs at least four points"));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Invariant("Tracy-Widom grid is not strictly increasing"));
        }
        if cdf.iter().chain(pdf.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Invariant("Tracy-Widom table holds non-finite values"));
        }
        if cdf.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Invariant("Tracy-Widom CDF is not monotone (grid too coarse)"));
        }
        if cdf[0] > 1e-8 || cdf[n - 1] < 1.0 - 1e-8 || cdf[n - 1] > 1.0 + 1e-12 {
            return Err(Error::Invariant("Tracy-Widom CDF does not reach its limits 0 and 1"));
        }
        if pdf.iter().any(|&v| v < 0.0) {
            return Err(Error::Invariant("Tracy-Widom density is negative"));
        }
        let mass = trapezoid(&grid, &pdf);
        if libm::fabs(mass - 1.0) > 1e-3 {
            return Err(Error::Invariant("Tracy-Widom density does not integrate to one"));
        }
        let mut running = cdf[0];
        for i in 1..n {
            running += 0.5 * (grid[i] - grid[i - 1]) * (pdf[i] + pdf[i - 1]);
            if libm::fabs(running - cdf[i]) > 1e-4 {
                return Err(Error::Invariant("Tracy-Widom density inconsistent with CDF"));
            }
        }
        let slopes = limit_slopes(&grid, &cdf, &pdf);
        Ok(TracyWidomTable { grid, cdf, pdf, slopes, meta })
    }

    /// Builds the table on the default domain `[-12, 10]`.
    pub fn standard() -> Result<Self> {
        build_tw2_table(&solve_painleve_ii(DEFAULT_S_LEFT, DEFAULT_S_RIGHT, DEFAULT_TOL)?)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn cdf_values(&self) -> &[f64] {
        &self.cdf
    }

    pub fn pdf_values(&self) -> &[f64] {
        &self.pdf
    }

    pub fn meta(&self) -> TableMeta {
        self.meta
    }

    /// `F` is clamped to 0 at and below this abscissa.
    pub fn left_cut(&self) -> f64 {
        self.grid[0]
    }

    /// `F` is clamped to 1 at and above this abscissa.
    pub fn right_cut(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }

    pub fn cdf(&self, s: f64) -> f64 {
        if s.is_nan() {
            return f64::NAN;
        }
        if s <= self.left_cut() {
            return 0.0;
        }
        if s >= self.right_cut() {
            return 1.0;
        }
        hermite(&self.grid, &self.cdf, &self.slopes, s).clamp(0.0, 1.0)
    }

    pub fn pdf(&self, s: f64) -> f64 {
        if !(s > self.left_cut() && s < self.right_cut()) {
            return 0.0;
        }
        cubic_lagrange(&self.grid, &self.pdf, s).max(0.0)
    }

    /// Quantile by bisection on the monotone interpolant.
    pub fn inverse_cdf(&self, p: f64) -> Result<f64> {
        check_probability("Tracy-Widom quantile level must lie in (0, 1)", p)?;
        Ok(bisect_increasing(|s| self.cdf(s), self.left_cut(), self.right_cut(), p, 1e-13))
    }

    pub fn mean(&self) -> f64 {
        let f: Vec<f64> = self.grid.iter().zip(&self.pdf).map(|(s, p)| s * p).collect();
        simpson(&self.grid, &f)
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        let f: Vec<f64> = self.grid.iter().zip(&self.pdf).map(|(s, p)| (s - m) * (s - m) * p).collect();
        simpson(&self.grid, &f)
    }

    /// Grid abscissa of the largest tabulated density.
    pub fn mode(&self) -> f64 {
        let (i, _) = self
            .pdf
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |best, (i, &v)| if v > best.1 { (i, v) } else { best });
        self.grid[i]
    }

    /// Abscissae bounding the region where the density exceeds
    /// `rel * max(pdf)`.
    pub fn effective_support(&self, rel: f64) -> (f64, f64) {
        let peak = self.pdf.iter().cloned().fold(0.0, f64::max);
        let cut = rel * peak;
        let lo = self.pdf.iter().position(|&v| v > cut).unwrap_or(0);
        let hi = self.pdf.iter().rposition(|&v| v > cut).unwrap_or(self.pdf.len() - 1);
        (self.grid[lo.saturating_sub(1)], self.grid[(hi + 1).min(self.grid.len() - 1)])
    }
}

/// Tabulates `F_TW2` and `f_TW2` over the grid of a Painlevé solution.
pub fn build_tw2_table(sol: &PainleveSolution) -> Result<TracyWidomTable> {
    let grid = sol.grid();
    let q = sol.q();
    let qp = sol.q_prime();
    let n = grid.len();
    let s_r = sol.s_right();
    let ai = airy_ai(s_r)?;
    let aip = airy_ai_prime(s_r)?;

    // Tails for q = -Ai beyond s_right.
    let mut inner = vec![0.0; n];
    let mut outer = vec![0.0; n];
    inner[n - 1] = aip * aip - s_r * ai * ai;
    outer[n - 1] = (2.0 * s_r * s_r * ai * ai - 2.0 * s_r * aip * aip - ai * aip) / 3.0;

    for i in (0..n - 1).rev() {
        let h = grid[i + 1] - grid[i];
        let f0 = q[i] * q[i];
        let f1 = q[i + 1] * q[i + 1];
        let d0 = 2.0 * q[i] * qp[i];
        let d1 = 2.0 * q[i + 1] * qp[i + 1];
        inner[i] = inner[i + 1] + 0.5 * h * (f0 + f1) + h * h / 12.0 * (d0 - d1);
        // d(inner)/ds = -q^2
        outer[i] = outer[i + 1] + 0.5 * h * (inner[i] + inner[i + 1]) + h * h / 12.0 * (f1 - f0);
    }

    let cdf: Vec<f64> = outer.iter().map(|&u| libm::exp(-u)).collect();
    let pdf: Vec<f64> = cdf.iter().zip(&inner).map(|(f, i)| f * i).collect();
    let meta = TableMeta { s_left: sol.s_left(), s_right: s_r, tol: sol.tol() };
    TracyWidomTable::from_parts(grid.to_vec(), cdf, pdf, meta)
}

pub fn tw2_cdf(table: &TracyWidomTable, s: f64) -> f64 {
    table.cdf(s)
}

pub fn tw2_inverse_cdf(table: &TracyWidomTable, p: f64) -> Result<f64> {
    table.inverse_cdf(p)
}
