//! Interpolation and root bracketing on tabulated data.

use alloc::vec::Vec;

/// Index `i` such that `grid[i] <= x < grid[i + 1]`, clamped to a valid
/// interval. `grid` must be ascending with at least two points.
pub(crate) fn interval(grid: &[f64], x: f64) -> usize {
    let n = grid.len();
    let i = grid.partition_point(|&g| g <= x);
    i.saturating_sub(1).min(n - 2)
}

/// Applies the Fritsch–Carlson limiter to caller-supplied slopes (typically
/// an exact derivative such as a tabulated density) so that monotone data
/// yields a monotone piecewise-cubic Hermite interpolant.
pub(crate) fn limit_slopes(x: &[f64], y: &[f64], dy: &[f64]) -> Vec<f64> {
    let mut m = dy.to_vec();
    for i in 0..x.len() - 1 {
        let delta = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        if delta == 0.0 {
            m[i] = 0.0;
            m[i + 1] = 0.0;
            continue;
        }
        let a = (m[i] / delta).max(0.0);
        let b = (m[i + 1] / delta).max(0.0);
        let r = a * a + b * b;
        let tau = if r > 9.0 { 3.0 / libm::sqrt(r) } else { 1.0 };
        m[i] = tau * a * delta;
        m[i + 1] = tau * b * delta;
    }
    m
}

/// Cubic Hermite interpolation with node slopes `m`, for `t` inside the grid.
///
/// Written as `y_i + Δ g(u)` and clamped to `[y_i, y_{i+1}]`, so limited
/// slopes give a result that is monotone in floating point as well.
pub(crate) fn hermite(x: &[f64], y: &[f64], m: &[f64], t: f64) -> f64 {
    let i = interval(x, t);
    let h = x[i + 1] - x[i];
    let u = ((t - x[i]) / h).clamp(0.0, 1.0);
    let delta = y[i + 1] - y[i];
    if delta == 0.0 {
        return y[i];
    }
    let u2 = u * u;
    let u3 = u2 * u;
    let h10 = u3 - 2.0 * u2 + u;
    let h01 = -2.0 * u3 + 3.0 * u2;
    let h11 = u3 - u2;
    let g = h01 + h * (m[i] * h10 + m[i + 1] * h11) / delta;
    let (lo, hi) = if delta > 0.0 { (y[i], y[i + 1]) } else { (y[i + 1], y[i]) };
    (y[i] + delta * g).clamp(lo, hi)
}

/// Cubic Lagrange interpolation through the four nodes around `x`.
/// Falls back to the nearest valid four-point window at the edges.
pub(crate) fn cubic_lagrange(grid: &[f64], values: &[f64], x: f64) -> f64 {
    let n = grid.len();
    if n < 4 {
        let i = interval(grid, x);
        let w = (x - grid[i]) / (grid[i + 1] - grid[i]);
        return values[i] * (1.0 - w) + values[i + 1] * w;
    }
    let i = interval(grid, x);
    let start = i.saturating_sub(1).min(n - 4);
    let xs = &grid[start..start + 4];
    let ys = &values[start..start + 4];
    let mut acc = 0.0;
    for j in 0..4 {
        let mut l = 1.0;
        for k in 0..4 {
            if k != j {
                l *= (x - xs[k]) / (xs[j] - xs[k]);
            }
        }
        acc += l * ys[j];
    }
    acc
}

/// Bisection for `f(t) = target` on a bracket where `f` is non-decreasing.
/// Stops once the bracket is narrower than `x_tol`.
pub(crate) fn bisect_increasing<F: Fn(f64) -> f64>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    target: f64,
    x_tol: f64,
) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= x_tol {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Trapezoidal integral of `y` over the (possibly non-uniform) grid `x`.
pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xw, yw)| 0.5 * (xw[1] - xw[0]) * (yw[0] + yw[1]))
        .sum()
}

/// Composite Simpson rule on a uniform grid; an even number of intervals is
/// assumed, otherwise the last interval falls back to the trapezoid.
pub fn simpson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    if n < 3 {
        return trapezoid(x, y);
    }
    let pairs = (n - 1) / 2;
    let mut acc = 0.0;
    for k in 0..pairs {
        let i = 2 * k;
        let h = 0.5 * (x[i + 2] - x[i]);
        acc += h / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
    }
    if (n - 1) % 2 == 1 {
        acc += 0.5 * (x[n - 1] - x[n - 2]) * (y[n - 1] + y[n - 2]);
    }
    acc
}
