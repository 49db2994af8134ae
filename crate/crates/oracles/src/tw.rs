//! Fine-step Tracy–Widom oracle.

use crate::special::airy_ai_large;

/// `F_TW2`, `f_TW2` and `q` on an ascending fine grid over `[left, start]`.
pub struct FineTracyWidom {
    pub s: Vec<f64>,
    pub q: Vec<f64>,
    pub cdf: Vec<f64>,
    pub pdf: Vec<f64>,
}

impl FineTracyWidom {
    /// Classical RK4 on `(q, q', I, u)` with `I' = -q^2`, `u' = -I`, from
    /// `start` (seeded with `-Ai`, tails beyond `start` dropped) down to
    /// `left` with fixed step `h`.
    pub fn compute(start: f64, left: f64, h: f64) -> Self {
        let (ai, aip) = airy_ai_large(start);
        let f = |s: f64, y: [f64; 4]| -> [f64; 4] {
            [y[1], s * y[0] + 2.0 * y[0].powi(3), -y[0] * y[0], -y[2]]
        };
        let steps = ((start - left) / h).round() as usize;
        let h = (start - left) / steps as f64;
        let mut y = [-ai, -aip, 0.0, 0.0];
        let mut out_s = vec![start];
        let mut out_y = vec![y];
        for k in 0..steps {
            let s = start - k as f64 * h;
            let dt = -h;
            let k1 = f(s, y);
            let y2: Vec<f64> = (0..4).map(|i| y[i] + 0.5 * dt * k1[i]).collect();
            let k2 = f(s + 0.5 * dt, [y2[0], y2[1], y2[2], y2[3]]);
            let y3: Vec<f64> = (0..4).map(|i| y[i] + 0.5 * dt * k2[i]).collect();
            let k3 = f(s + 0.5 * dt, [y3[0], y3[1], y3[2], y3[3]]);
            let y4: Vec<f64> = (0..4).map(|i| y[i] + dt * k3[i]).collect();
            let k4 = f(s + dt, [y4[0], y4[1], y4[2], y4[3]]);
            for i in 0..4 {
                y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
            out_s.push(start - (k + 1) as f64 * h);
            out_y.push(y);
        }
        out_s.reverse();
        out_y.reverse();
        let cdf: Vec<f64> = out_y.iter().map(|y| (-y[3]).exp()).collect();
        let pdf: Vec<f64> = out_y.iter().zip(&cdf).map(|(y, c)| c * y[2]).collect();
        let q = out_y.iter().map(|y| y[0]).collect();
        FineTracyWidom { s: out_s, q, cdf, pdf }
    }

    /// Reference table: step 5e-4 on `[-8, 12]`, ten times finer than the
    /// production output spacing. `q` is trustworthy to 1e-6 only for
    /// `s >= -6`; further left the initial-value growth takes over.
    pub fn reference() -> Self {
        Self::compute(12.0, -8.0, 5e-4)
    }

    fn integrate(&self, g: impl Fn(f64, f64) -> f64) -> f64 {
        self.s
            .windows(2)
            .zip(self.pdf.windows(2))
            .map(|(s, p)| 0.5 * (s[1] - s[0]) * (g(s[0], p[0]) + g(s[1], p[1])))
            .sum()
    }

    pub fn mean(&self) -> f64 {
        self.integrate(|s, p| s * p)
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.integrate(|s, p| (s - m) * (s - m) * p)
    }

    /// Quantile by linear interpolation between fine nodes.
    pub fn quantile(&self, p: f64) -> f64 {
        let i = self.cdf.partition_point(|&c| c < p);
        assert!(i > 0 && i < self.cdf.len(), "quantile level outside oracle range");
        let (c0, c1) = (self.cdf[i - 1], self.cdf[i]);
        let w = (p - c0) / (c1 - c0);
        self.s[i - 1] + w * (self.s[i] - self.s[i - 1])
    }

    pub fn cdf_at(&self, x: f64) -> f64 {
        self.interp(&self.cdf, x)
    }

    pub fn q_at(&self, x: f64) -> f64 {
        self.interp(&self.q, x)
    }

    fn interp(&self, v: &[f64], x: f64) -> f64 {
        let i = self.s.partition_point(|&g| g <= x).clamp(1, self.s.len() - 1);
        let w = (x - self.s[i - 1]) / (self.s[i] - self.s[i - 1]);
        v[i - 1] * (1.0 - w) + v[i] * w
    }

    /// `P(l_max / l_min <= t)` for independent `l_max = b + ν X`,
    /// `l_min = a + μ Y` with `X, Y ~ TW2`, integrating the CDF of `l_max`
    /// against the density of `Y` on the fine grid.
    pub fn ratio_cdf(&self, a: f64, b: f64, nu: f64, mu: f64, t: f64) -> f64 {
        let mut acc = 0.0;
        for i in 1..self.s.len() {
            let h = self.s[i] - self.s[i - 1];
            let g = |j: usize| {
                let x = a + mu * self.s[j];
                if x <= 0.0 {
                    return 0.0;
                }
                self.pdf[j] * self.cdf_at((t * x - b) / nu)
            };
            acc += 0.5 * h * (g(i - 1) + g(i));
        }
        acc
    }

    /// Abscissa of the density maximum.
    pub fn mode(&self) -> f64 {
        let i = self
            .pdf
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        self.s[i]
    }
}
