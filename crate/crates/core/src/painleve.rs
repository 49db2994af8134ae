//! Hastings–McLeod solution of Painlevé II, `q'' = s q + 2 q^3`, with
//! `q(s) ~ -Ai(s)` as `s -> +inf`.
//!
//! The solution is integrated from `s_right` towards the left with an
//! adaptive Dormand–Prince 5(4) scheme seeded with `q = -Ai`, `q' = -Ai'`.
//! Perturbations of the Hastings–McLeod branch grow like
//! `exp((2 sqrt 2 / 3) |s|^{3/2})` on that path, so in double precision the
//! initial-value solution cannot reach `s = -12` (it leaves the branch near
//! `s = -9.5`). Whenever the requested interval extends below `s = -4` the
//! sweep is therefore used as the initial guess of a two-point
//! boundary-value problem (Numerov discretisation, Newton iteration) with
//! `q(s_right) = -Ai(s_right)` on the right and the left asymptotic
//! expansion `q(s) ~ -sqrt(-s/2) (1 + 1/(8 s^3) - 73/(128 s^6) + ...)` on
//! the left. The Jacobian of that problem is a diagonally dominant
//! tridiagonal M-matrix (`s + 6 q^2 > 0` along the branch).

use alloc::vec;
use alloc::vec::Vec;

use crate::airy::{airy_ai, airy_ai_prime};
use crate::error::{Error, Result};

/// Maximum spacing of the output grid.
pub const OUTPUT_SPACING: f64 = 0.005;
/// Smallest admissible `s_right`.
pub const MIN_S_RIGHT: f64 = 6.0;
/// Bound on the five-point ODE residual at interior grid points.
pub const RESIDUAL_TOL: f64 = 1e-6;

const OVERFLOW_GUARD: f64 = 1e3;
/// Intervals reaching below this abscissa are polished as a boundary-value problem.
const JOIN_ABSCISSA: f64 = -4.0;
/// The left asymptotic expansion is used as boundary data only below this.
const ASYMPTOTIC_ABSCISSA: f64 = -7.0;
/// The initial-value solution must not leave the branch above this abscissa.
const TRUST_ABSCISSA: f64 = -7.0;

/// Coefficients of `w(x) = 1 + sum b_n x^{-3n}`, `q = -sqrt(x/2) w(x)`, `x = -s`.
const LEFT_EXPANSION: [f64; 6] = [
    -1.0 / 8.0,
    -73.0 / 128.0,
    -10657.0 / 1024.0,
    -13912277.0 / 32768.0,
    -8045883943.0 / 262144.0,
    -14518451390349.0 / 4194304.0,
];

/// Left asymptotic value of the Hastings–McLeod solution (for `s << 0`).
pub fn left_asymptote(s: f64) -> f64 {
    let x = -s;
    let y = 1.0 / (x * x * x);
    let mut w = 1.0;
    let mut p = 1.0;
    for b in LEFT_EXPANSION {
        p *= y;
        w += b * p;
    }
    -libm::sqrt(0.5 * x) * w
}

/// Tabulated Hastings–McLeod solution on a uniform ascending grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PainleveSolution {
    grid: Vec<f64>,
    q: Vec<f64>,
    q_prime: Vec<f64>,
    tol: f64,
}

impl PainleveSolution {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn q_prime(&self) -> &[f64] {
        &self.q_prime
    }

    /// Integration tolerance the solution was computed with.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn s_left(&self) -> f64 {
        self.grid[0]
    }

    pub fn s_right(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }

    pub fn step(&self) -> f64 {
        self.grid[1] - self.grid[0]
    }

    /// `|q(s_R) + Ai(s_R)|`.
    pub fn boundary_error(&self) -> f64 {
        let ai = airy_ai(self.s_right()).unwrap_or(f64::NAN);
        libm::fabs(self.q[self.q.len() - 1] + ai)
    }

    /// Largest `|q'' - s q - 2 q^3|` over interior points, with `q''` from
    /// the five-point stencil on stored values.
    pub fn max_residual(&self) -> f64 {
        let h = self.step();
        let q = &self.q;
        let mut worst: f64 = 0.0;
        for i in 2..q.len().saturating_sub(2) {
            let d2 = (-q[i - 2] + 16.0 * q[i - 1] - 30.0 * q[i] + 16.0 * q[i + 1] - q[i + 2])
                / (12.0 * h * h);
            let s = self.grid[i];
            let r = libm::fabs(d2 - s * q[i] - 2.0 * q[i] * q[i] * q[i]);
            worst = worst.max(r);
        }
        worst
    }

    /// Checks the structural and numerical invariants.
    pub fn validate(&self) -> Result<()> {
        let n = self.grid.len();
        if n < 5 || self.q.len() != n || self.q_prime.len() != n {
            return Err(Error::Invariant("Painlevé solution arrays have inconsistent lengths"));
        }
        if self.grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Invariant("Painlevé grid is not strictly increasing"));
        }
        if self.q.iter().any(|&v| !(v < 0.0)) {
            return Err(Error::Invariant("Hastings-McLeod solution must stay negative"));
        }
        let scale = libm::fabs(airy_ai(self.s_right())?);
        if self.boundary_error() > 1e-12 * scale {
            return Err(Error::Invariant("right boundary does not match -Ai"));
        }
        if self.max_residual() > RESIDUAL_TOL {
            return Err(Error::Invariant("Painlevé II residual exceeds tolerance"));
        }
        Ok(())
    }
}

fn rhs(s: f64, q: f64, p: f64) -> (f64, f64) {
    (p, s * q + 2.0 * q * q * q)
}

/// One Dormand–Prince 5(4) step; returns the 5th-order state and the error
/// estimate.
fn dopri_step(s: f64, y: (f64, f64), h: f64) -> ((f64, f64), (f64, f64)) {
    const C2: f64 = 1.0 / 5.0;
    const C3: f64 = 3.0 / 10.0;
    const C4: f64 = 4.0 / 5.0;
    const C5: f64 = 8.0 / 9.0;
    const A21: f64 = 1.0 / 5.0;
    const A31: f64 = 3.0 / 40.0;
    const A32: f64 = 9.0 / 40.0;
    const A41: f64 = 44.0 / 45.0;
    const A42: f64 = -56.0 / 15.0;
    const A43: f64 = 32.0 / 9.0;
    const A51: f64 = 19372.0 / 6561.0;
    const A52: f64 = -25360.0 / 2187.0;
    const A53: f64 = 64448.0 / 6561.0;
    const A54: f64 = -212.0 / 729.0;
    const A61: f64 = 9017.0 / 3168.0;
    const A62: f64 = -355.0 / 33.0;
    const A63: f64 = 46732.0 / 5247.0;
    const A64: f64 = 49.0 / 176.0;
    const A65: f64 = -5103.0 / 18656.0;
    const B1: f64 = 35.0 / 384.0;
    const B3: f64 = 500.0 / 1113.0;
    const B4: f64 = 125.0 / 192.0;
    const B5: f64 = -2187.0 / 6784.0;
    const B6: f64 = 11.0 / 84.0;
    // b - b* (difference between the 5th- and 4th-order weights)
    const E1: f64 = 71.0 / 57600.0;
    const E3: f64 = -71.0 / 16695.0;
    const E4: f64 = 71.0 / 1920.0;
    const E5: f64 = -17253.0 / 339200.0;
    const E6: f64 = 22.0 / 525.0;
    const E7: f64 = -1.0 / 40.0;

    let k1 = rhs(s, y.0, y.1);
    let k2 = rhs(s + C2 * h, y.0 + h * A21 * k1.0, y.1 + h * A21 * k1.1);
    let k3 = rhs(
        s + C3 * h,
        y.0 + h * (A31 * k1.0 + A32 * k2.0),
        y.1 + h * (A31 * k1.1 + A32 * k2.1),
    );
    let k4 = rhs(
        s + C4 * h,
        y.0 + h * (A41 * k1.0 + A42 * k2.0 + A43 * k3.0),
        y.1 + h * (A41 * k1.1 + A42 * k2.1 + A43 * k3.1),
    );
    let k5 = rhs(
        s + C5 * h,
        y.0 + h * (A51 * k1.0 + A52 * k2.0 + A53 * k3.0 + A54 * k4.0),
        y.1 + h * (A51 * k1.1 + A52 * k2.1 + A53 * k3.1 + A54 * k4.1),
    );
    let k6 = rhs(
        s + h,
        y.0 + h * (A61 * k1.0 + A62 * k2.0 + A63 * k3.0 + A64 * k4.0 + A65 * k5.0),
        y.1 + h * (A61 * k1.1 + A62 * k2.1 + A63 * k3.1 + A64 * k4.1 + A65 * k5.1),
    );
    let y5 = (
        y.0 + h * (B1 * k1.0 + B3 * k3.0 + B4 * k4.0 + B5 * k5.0 + B6 * k6.0),
        y.1 + h * (B1 * k1.1 + B3 * k3.1 + B4 * k4.1 + B5 * k5.1 + B6 * k6.1),
    );
    let k7 = rhs(s + h, y5.0, y5.1);
    let err = (
        h * (E1 * k1.0 + E3 * k3.0 + E4 * k4.0 + E5 * k5.0 + E6 * k6.0 + E7 * k7.0),
        h * (E1 * k1.1 + E3 * k3.1 + E4 * k4.1 + E5 * k5.1 + E6 * k6.1 + E7 * k7.1),
    );
    (y5, err)
}

/// Result of the leftward initial-value sweep.
struct Sweep {
    q: Vec<f64>,
    p: Vec<f64>,
    /// First grid index (counting from the right) that is *not* on the branch.
    departed: Option<usize>,
}

fn leaves_branch(s: f64, q: f64, p: f64) -> bool {
    if !q.is_finite() || !p.is_finite() || libm::fabs(q) > OVERFLOW_GUARD {
        return true;
    }
    if q >= 0.0 || p <= 0.0 {
        return true;
    }
    s < -5.0 && libm::fabs(q / left_asymptote(s) - 1.0) > 1e-3
}

/// Integrates leftward from `grid[last]` with initial data `(q0, p0)`,
/// recording values at every grid point.
fn sweep(grid: &[f64], q0: f64, p0: f64, tol: f64) -> Result<Sweep> {
    let n = grid.len();
    let mut q = vec![0.0; n];
    let mut p = vec![0.0; n];
    q[n - 1] = q0;
    p[n - 1] = p0;
    let mut state = (q0, p0);
    let mut h = -(grid[1] - grid[0]);
    let mut steps = 0usize;
    for i in (0..n - 1).rev() {
        let mut s = grid[i + 1];
        let target = grid[i];
        while s > target {
            if s + h < target {
                h = target - s;
            }
            let (next, err) = dopri_step(s, state, h);
            let sc0 = tol * libm::fabs(state.0).max(libm::fabs(next.0)) + 1e-300;
            let sc1 = tol * libm::fabs(state.1).max(libm::fabs(next.1)) + 1e-300;
            let e = (libm::fabs(err.0) / sc0).max(libm::fabs(err.1) / sc1);
            steps += 1;
            if steps > 50_000_000 {
                return Err(Error::NoConvergence { what: "Painlevé II integration", iterations: steps });
            }
            if e <= 1.0 || libm::fabs(h) < 1e-12 {
                s += h;
                state = next;
                if s <= target {
                    s = target;
                }
            }
            let factor = if e == 0.0 { 5.0 } else { (0.9 * libm::pow(e, -0.2)).clamp(0.2, 5.0) };
            h *= factor;
            let cap = -(grid[1] - grid[0]);
            if h < cap {
                h = cap;
            }
            if !state.0.is_finite() {
                break;
            }
        }
        q[i] = state.0;
        p[i] = state.1;
        if leaves_branch(grid[i], state.0, state.1) {
            return Ok(Sweep { q, p, departed: Some(i) });
        }
    }
    Ok(Sweep { q, p, departed: None })
}

/// Solves the Numerov discretisation of Painlevé II on `grid[0..=j]` with
/// Dirichlet data `q[0]`, `q[j]`, refining `q[1..j]` in place.
fn newton_numerov(grid: &[f64], q: &mut [f64], j: usize) -> Result<()> {
    let h = grid[1] - grid[0];
    let w = h * h / 12.0;
    let m = j - 1;
    let mut lower = vec![0.0; m];
    let mut diag = vec![0.0; m];
    let mut upper = vec![0.0; m];
    let mut rhs_v = vec![0.0; m];
    let f = |s: f64, v: f64| s * v + 2.0 * v * v * v;
    let df = |s: f64, v: f64| s + 6.0 * v * v;
    for iter in 0..60 {
        for k in 0..m {
            let i = k + 1;
            let (sm, s0, sp) = (grid[i - 1], grid[i], grid[i + 1]);
            let g = q[i + 1] - 2.0 * q[i] + q[i - 1]
                - w * (f(sp, q[i + 1]) + 10.0 * f(s0, q[i]) + f(sm, q[i - 1]));
            rhs_v[k] = -g;
            lower[k] = 1.0 - w * df(sm, q[i - 1]);
            diag[k] = -2.0 - 10.0 * w * df(s0, q[i]);
            upper[k] = 1.0 - w * df(sp, q[i + 1]);
        }
        // Thomas algorithm; boundary unknowns are fixed so the off-band
        // couplings to q[0] and q[j] drop out.
        for k in 1..m {
            let r = lower[k] / diag[k - 1];
            diag[k] -= r * upper[k - 1];
            rhs_v[k] -= r * rhs_v[k - 1];
        }
        let mut delta = vec![0.0; m];
        delta[m - 1] = rhs_v[m - 1] / diag[m - 1];
        for k in (0..m - 1).rev() {
            delta[k] = (rhs_v[k] - upper[k] * delta[k + 1]) / diag[k];
        }
        let mut worst: f64 = 0.0;
        for k in 0..m {
            q[k + 1] += delta[k];
            worst = worst.max(libm::fabs(delta[k]) / libm::fabs(q[k + 1]).max(1e-300));
        }
        if !worst.is_finite() {
            return Err(Error::NoConvergence { what: "Painlevé II boundary-value Newton", iterations: iter });
        }
        if worst <= 1e-13 {
            return Ok(());
        }
    }
    Err(Error::NoConvergence { what: "Painlevé II boundary-value Newton", iterations: 60 })
}

/// Five-point first derivative of uniformly spaced samples, one-sided at
/// the ends.
fn differentiate(values: &[f64], h: f64, out: &mut [f64], range: core::ops::Range<usize>) {
    let n = values.len();
    for i in range {
        let v = |k: usize| values[k];
        out[i] = if i >= 2 && i + 2 < n {
            (-v(i + 2) + 8.0 * v(i + 1) - 8.0 * v(i - 1) + v(i - 2)) / (12.0 * h)
        } else if i < 2 {
            let b = i;
            let c = [[-25.0, 48.0, -36.0, 16.0, -3.0], [-3.0, -10.0, 18.0, -6.0, 1.0]][b];
            (0..5).map(|k| c[k] * v(k)).sum::<f64>() / (12.0 * h)
        } else {
            let b = n - 1 - i;
            let c = [[25.0, -48.0, 36.0, -16.0, 3.0], [3.0, 10.0, -18.0, 6.0, -1.0]][b];
            (0..5).map(|k| c[k] * v(n - 1 - k)).sum::<f64>() / (12.0 * h)
        };
    }
}

fn solve_with_seed(s_left: f64, s_right: f64, tol: f64, seed_scale: f64) -> Result<PainleveSolution> {
    if !(s_left.is_finite() && s_right.is_finite()) {
        return Err(Error::Domain { what: "Painlevé interval must be finite", value: s_left });
    }
    if !(s_left < s_right) {
        return Err(Error::Domain { what: "s_left must be below s_right", value: s_left });
    }
    if s_right < MIN_S_RIGHT {
        return Err(Error::Domain {
            what: "s_right must be at least 6 for the -Ai boundary condition",
            value: s_right,
        });
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Domain { what: "tolerance must lie in (0, 1)", value: tol });
    }

    let intervals = libm::ceil((s_right - s_left) / OUTPUT_SPACING) as usize;
    let intervals = intervals.max(8);
    let h = (s_right - s_left) / intervals as f64;
    let mut grid: Vec<f64> = (0..=intervals).map(|i| s_left + i as f64 * h).collect();
    grid[intervals] = s_right;

    let q0 = -seed_scale * airy_ai(s_right)?;
    let p0 = -seed_scale * airy_ai_prime(s_right)?;
    let Sweep { mut q, mut p, departed } = sweep(&grid, q0, p0, tol)?;


    if let Some(i) = departed {
        if grid[i] > TRUST_ABSCISSA {
            return Err(Error::Divergence { at: grid[i] });
        }
    }

    if departed.is_some() || s_left < JOIN_ABSCISSA {
        // Any departure lies below TRUST_ABSCISSA, so the sweep is kept as
        // the initial guess above ASYMPTOTIC_ABSCISSA and replaced below it.
        for i in 0..intervals {
            if grid[i] < ASYMPTOTIC_ABSCISSA {
                q[i] = left_asymptote(grid[i]);
            }
        }
        newton_numerov(&grid, &mut q, intervals)?;
        differentiate(&q, h, &mut p, 0..intervals);
    }

    let sol = PainleveSolution { grid, q, q_prime: p, tol };
    sol.validate()?;
    Ok(sol)
}

/// Tabulates the Hastings–McLeod solution on `[s_left, s_right]`.
///
/// `tol` is the relative local error tolerance of the adaptive sweep.
/// Fails with [`Error::Divergence`] when the sweep leaves the branch where
/// it is expected to stay accurate.
pub fn solve_painleve_ii(s_left: f64, s_right: f64, tol: f64) -> Result<PainleveSolution> {
    solve_with_seed(s_left, s_right, tol, 1.0)
}
