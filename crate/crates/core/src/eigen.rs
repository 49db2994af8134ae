//! Eigenvalues of Hermitian matrices by the cyclic complex Jacobi method.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

pub const MAX_DIMENSION: usize = 512;
pub const HERMITIAN_TOL: f64 = 1e-8;
pub const MAX_SWEEPS: usize = 100;
const OFF_TOL: f64 = 1e-15;

fn off_norm2(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += a[(i, j)].norm_sqr();
        }
    }
    2.0 * s
}

/// Annihilates `a[p][q]` with the unitary rotation
/// `J = [[c, s e], [-s ē, c]]` (rows/columns `p`, `q`), `A <- Jᴴ A J`.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let n = a.rows();
    if g <= f64::EPSILON * 1e-3 * (libm::fabs(app) + libm::fabs(aqq)) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let e = apq / g;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + libm::sqrt(1.0 + tau * tau))
    } else {
        -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;
    let se = e * s;
    let sec = se.conj();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * sec;
        a[(k, q)] = akp * se + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * se;
        a[(q, k)] = apk * sec + aqk * c;
    }
    a[(p, p)] = Complex64::new(app - t * g, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * g, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
}

/// All eigenvalues of `r`, ascending.
///
/// Sweeps stop once the off-diagonal Frobenius norm falls below `1e-15`
/// of the full Frobenius norm.
pub fn hermitian_eigenvalues(r: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = r.rows();
    if r.cols() != n {
        return Err(Error::Shape { expected: n, found: r.cols() });
    }
    if n > MAX_DIMENSION {
        return Err(Error::Domain { what: "eigensolver dimension exceeds 512", value: n as f64 });
    }
    let scale = r.max_abs();
    let deviation = r.hermitian_deviation();
    if !(deviation <= HERMITIAN_TOL * scale.max(f64::MIN_POSITIVE)) {
        return Err(Error::NotHermitian { deviation });
    }
    let mut a = r.clone();
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let v = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            a[(i, j)] = v;
            a[(j, i)] = v.conj();
        }
    }
    let total: f64 = a.as_slice().iter().map(|z| z.norm_sqr()).sum();
    let target = OFF_TOL * OFF_TOL * total;
    let mut converged = off_norm2(&a) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { what: "Jacobi eigenvalue sweeps", iterations: sweeps });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
        converged = off_norm2(&a) <= target;
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}
