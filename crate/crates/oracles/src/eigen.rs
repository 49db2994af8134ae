//! Eigenvalues of small Hermitian matrices by inertia counting.
//!
//! For real `x`, the number of negative pivots of the LDLᴴ factorisation of
//! `A - xI` equals the number of eigenvalues below `x` (Sylvester). Bisection
//! on that count isolates each eigenvalue independently.

/// Complex entry as `(re, im)`.
pub type C = (f64, f64);

fn sub(a: C, b: C) -> C {
    (a.0 - b.0, a.1 - b.1)
}

fn mul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn conj(a: C) -> C {
    (a.0, -a.1)
}

/// Number of eigenvalues of the row-major Hermitian `a` strictly below `x`.
pub fn count_below(a: &[C], n: usize, x: f64) -> usize {
    let mut m: Vec<C> = a.to_vec();
    for i in 0..n {
        m[i * n + i].0 -= x;
    }
    let mut negatives = 0;
    for k in 0..n {
        let mut d = m[k * n + k].0;
        if d == 0.0 {
            d = -1e-300;
        }
        if d < 0.0 {
            negatives += 1;
        }
        for i in k + 1..n {
            let lik = (m[i * n + k].0 / d, m[i * n + k].1 / d);
            for j in k + 1..n {
                // m[i][j] -= l_ik * d * conj(l_jk)
                let ljk = conj((m[j * n + k].0 / d, m[j * n + k].1 / d));
                let t = mul(lik, ljk);
                m[i * n + j] = sub(m[i * n + j], (t.0 * d, t.1 * d));
            }
        }
    }
    negatives
}

/// All eigenvalues, ascending, to absolute accuracy `tol`.
pub fn hermitian_eigenvalues(a: &[C], n: usize, tol: f64) -> Vec<f64> {
    // Gershgorin bound
    let mut bound: f64 = 0.0;
    for i in 0..n {
        let r: f64 = (0..n).map(|j| (a[i * n + j].0.powi(2) + a[i * n + j].1.powi(2)).sqrt()).sum();
        bound = bound.max(r);
    }
    (0..n)
        .map(|k| {
            let (mut lo, mut hi) = (-bound - 1.0, bound + 1.0);
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if count_below(a, n, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}
