//! Airy function `Ai` and its derivative.
//!
//! For `|x| <= 8` the Maclaurin series is summed in double-double arithmetic,
//! which absorbs the cancellation between the two series (their terms reach
//! `~e^{2/3 |x|^{3/2}}` while the result is `O(1)` or smaller). Outside that
//! interval the standard large-argument expansions are used; their smallest
//! term at `|x| = 8` is below `1e-13` relative.

use crate::error::{Error, Result};
use core::f64::consts::PI;

const SERIES_LIMIT: f64 = 8.0;

/// `Ai(0)` as a double-double.
const AI0: Dd = Dd { hi: 0.3550280538878172, lo: 2.05233632436212e-17 };
/// `-Ai'(0)` as a double-double.
const AIP0: Dd = Dd { hi: 0.2588194037928068, lo: -2.522243111610832e-17 };

#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: err }
    }

    fn quick_two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        Dd { hi: s, lo: b - (s - a) }
    }

    fn add(self, o: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, o.hi);
        let t = Dd::two_sum(self.lo, o.lo);
        let r = Dd::quick_two_sum(s.hi, s.lo + t.hi);
        Dd::quick_two_sum(r.hi, r.lo + t.lo)
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn mul_f64(self, b: f64) -> Dd {
        let p = self.hi * b;
        let err = libm::fma(self.hi, b, -p);
        Dd::quick_two_sum(p, err + self.lo * b)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let err = libm::fma(self.hi, o.hi, -p);
        Dd::quick_two_sum(p, err + (self.hi * o.lo + self.lo * o.hi))
    }

    fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let p = q1 * b;
        let err = libm::fma(q1, b, -p);
        let r = self.add(Dd { hi: -p, lo: -err });
        Dd::quick_two_sum(q1, r.hi / b)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Sums `f`, `g` (and optionally their derivatives) of the Maclaurin
/// representation `Ai = Ai(0) f - |Ai'(0)| g`.
fn maclaurin(x: f64, derivative: bool) -> f64 {
    let x3 = Dd::from(x).mul(Dd::from(x)).mul_f64(x);
    // value: f_0 = 1, g_0 = x; derivative: f'_1 = x^2/2, g'_0 = 1
    let (mut tf, mut tg, k0f) = if derivative {
        (Dd::from(x).mul(Dd::from(x)).div_f64(2.0), Dd::from(1.0), 1usize)
    } else {
        (Dd::from(1.0), Dd::from(x), 0usize)
    };
    let mut sf = tf;
    let mut sg = tg;
    let tiny = 1e-34;
    let mut k = 1usize;
    loop {
        let kf = k as f64;
        if derivative {
            // f' terms start at k = 1, so its k-th step is index k0f + k
            let j = (k0f + k) as f64;
            tf = tf.mul(x3).div_f64((3.0 * j - 3.0) * (3.0 * j - 1.0));
            tg = tg.mul(x3).div_f64((3.0 * kf) * (3.0 * kf - 2.0));
        } else {
            tf = tf.mul(x3).div_f64((3.0 * kf - 1.0) * (3.0 * kf));
            tg = tg.mul(x3).div_f64((3.0 * kf) * (3.0 * kf + 1.0));
        }
        sf = sf.add(tf);
        sg = sg.add(tg);
        let scale = libm::fabs(sf.hi) + libm::fabs(sg.hi) + 1.0;
        if libm::fabs(tf.hi) + libm::fabs(tg.hi) < tiny * scale || k > 200 {
            break;
        }
        k += 1;
    }
    AI0.mul(sf).add(AIP0.mul(sg).neg()).to_f64()
}

/// Coefficients `u_k` and `v_k` of the large-argument expansions.
fn expansion_coefficients(n: usize) -> ([f64; 32], [f64; 32]) {
    let mut u = [0.0; 32];
    let mut v = [0.0; 32];
    u[0] = 1.0;
    v[0] = 1.0;
    for k in 1..n.min(32) {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        v[k] = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k];
    }
    (u, v)
}

/// Sum `sum_k (-1)^k c_k z^{-k}` over indices `start, start+step, ...`,
/// truncated at the smallest term.
fn asymptotic_sum(c: &[f64; 32], zeta: f64, start: usize, step: usize) -> f64 {
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    let mut k = start;
    let mut sign = 1.0;
    while k < 32 {
        let term = c[k] * libm::pow(zeta, -(k as f64));
        if libm::fabs(term) > prev {
            break;
        }
        sum += sign * term;
        if libm::fabs(term) < 1e-17 * libm::fabs(sum) {
            break;
        }
        prev = libm::fabs(term);
        sign = -sign;
        k += step;
    }
    sum
}

fn alternating(c: &[f64; 32], zeta: f64) -> f64 {
    // (-1)^k c_k / zeta^k over all k
    let mut out = [0.0; 32];
    for (k, o) in out.iter_mut().enumerate() {
        *o = if k % 2 == 0 { c[k] } else { -c[k] };
    }
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for (k, ck) in out.iter().enumerate() {
        let term = ck * libm::pow(zeta, -(k as f64));
        if libm::fabs(term) > prev {
            break;
        }
        sum += term;
        if libm::fabs(term) < 1e-17 * libm::fabs(sum) {
            break;
        }
        prev = libm::fabs(term);
    }
    sum
}

fn asymptotic(x: f64, derivative: bool) -> f64 {
    let (u, v) = expansion_coefficients(32);
    let sqrt_pi = libm::sqrt(PI);
    if x > 0.0 {
        let zeta = 2.0 / 3.0 * x * libm::sqrt(x);
        let e = libm::exp(-zeta);
        let x14 = libm::sqrt(libm::sqrt(x));
        if derivative {
            -x14 * e / (2.0 * sqrt_pi) * alternating(&v, zeta)
        } else {
            e / (2.0 * sqrt_pi * x14) * alternating(&u, zeta)
        }
    } else {
        let z = -x;
        let zeta = 2.0 / 3.0 * z * libm::sqrt(z);
        let z14 = libm::sqrt(libm::sqrt(z));
        let (s, c) = libm::sincos(zeta - PI / 4.0);
        if derivative {
            let p = asymptotic_sum(&v, zeta, 0, 2);
            let q = asymptotic_sum(&v, zeta, 1, 2);
            z14 / sqrt_pi * (s * p - c * q)
        } else {
            let p = asymptotic_sum(&u, zeta, 0, 2);
            let q = asymptotic_sum(&u, zeta, 1, 2);
            (c * p + s * q) / (sqrt_pi * z14)
        }
    }
}

fn check(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what: "Airy argument must be finite", value: x })
    }
}

/// Airy function of the first kind.
pub fn airy_ai(x: f64) -> Result<f64> {
    check(x)?;
    Ok(if libm::fabs(x) <= SERIES_LIMIT { maclaurin(x, false) } else { asymptotic(x, false) })
}

/// Derivative `Ai'(x)`.
pub fn airy_ai_prime(x: f64) -> Result<f64> {
    check(x)?;
    Ok(if libm::fabs(x) <= SERIES_LIMIT { maclaurin(x, true) } else { asymptotic(x, true) })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from a 40-digit evaluation.
    const REFERENCE: [(f64, f64, f64); 10] = [
        (-12.0, -0.06655517505437312947, 1.0231104533679707299),
        (-8.0, -0.05270505035638620262, 0.93556093819830655103),
        (-5.0, 0.35076100902411431979, 0.32719281855444313679),
        (-2.0, 0.22740742820168557599, 0.61825902074169104141),
        (0.0, 0.35502805388781723926, -0.25881940379280679841),
        (2.0, 0.034924130423274379135, -0.053090384433653631704),
        (5.0, 1.0834442813607441735e-4, -2.4741389086846247600e-4),
        (8.0, 4.6922076160992316256e-8, -1.3414392979067865743e-7),
        (10.0, 1.1047532552898685934e-10, -3.5206336767389236366e-10),
        (15.0, 2.1649625207379922990e-18, -8.4205679540177727661e-18),
    ];

    #[test]
    fn matches_reference_values() {
        for &(x, ai, aip) in REFERENCE.iter() {
            let got = airy_ai(x).unwrap();
            let gotp = airy_ai_prime(x).unwrap();
            assert!((got - ai).abs() <= 1e-12, "Ai({x}) = {got}, want {ai}");
            assert!((gotp - aip).abs() <= 1e-11, "Ai'({x}) = {gotp}, want {aip}");
            if x > 0.0 {
                assert!(((got - ai) / ai).abs() < 1e-12, "relative Ai({x})");
            }
        }
    }

    #[test]
    fn continuous_across_series_switch() {
        for &x in &[-SERIES_LIMIT, SERIES_LIMIT] {
            let series = maclaurin(x, false);
            let expansion = asymptotic(x, false);
            assert!((series - expansion).abs() < 1e-12, "{x}: {series} vs {expansion}");
            let series = maclaurin(x, true);
            let expansion = asymptotic(x, true);
            assert!((series - expansion).abs() < 1e-11, "{x}: {series} vs {expansion}");
        }
    }

    #[test]
    fn rejects_non_finite() {
        assert!(airy_ai(f64::NAN).is_err());
        assert!(airy_ai_prime(f64::INFINITY).is_err());
    }
}
