use std::sync::OnceLock;

use eigensense_core::ratio::{
    build_ratio_distribution, lmax_limit_pdf, lmin_limit_pdf, ratio_cdf, ratio_inverse_cdf, ratio_pdf,
    RatioDistribution,
};
use eigensense_core::scaling::{scaling_constants, ScalingConstants, SensingConfig};
use eigensense_core::thresholds::gamma_semi_asymptotic;
use eigensense_core::tracy_widom::TracyWidomTable;
use eigensense_oracles::tw::FineTracyWidom;
use proptest::prelude::*;

fn table() -> &'static TracyWidomTable {
    static T: OnceLock<TracyWidomTable> = OnceLock::new();
    T.get_or_init(|| TracyWidomTable::standard().unwrap())
}

fn cfg() -> SensingConfig {
    SensingConfig::new(50, 1000).unwrap()
}

fn dist() -> &'static RatioDistribution {
    static D: OnceLock<RatioDistribution> = OnceLock::new();
    D.get_or_init(|| build_ratio_distribution(&cfg(), table()).unwrap())
}

#[test]
fn constants_by_hand() {
    let (k, n) = (50f64, 1000f64);
    let c = scaling_constants(&cfg());
    let a = (n.sqrt() - k.sqrt()).powi(2);
    let b = (n.sqrt() + k.sqrt()).powi(2);
    let nu = (n.sqrt() + k.sqrt()) * (1.0 / n.sqrt() + 1.0 / k.sqrt()).powf(1.0 / 3.0);
    let mu = (k.sqrt() - n.sqrt()) * (1.0 / k.sqrt() - 1.0 / n.sqrt()).powf(1.0 / 3.0);
    assert!((c.a / a - 1.0).abs() < 1e-14 && (c.b / b - 1.0).abs() < 1e-14);
    assert!((c.nu / nu - 1.0).abs() < 1e-14 && (c.mu / mu - 1.0).abs() < 1e-14);
    assert!((c.a - 602.79).abs() < 5e-3 && (c.b - 1497.2).abs() < 5e-2);
    assert!((c.nu - 21.56).abs() < 5e-3 && (c.mu + 11.76).abs() < 5e-3);
    assert!((c.b / c.a - 2.4838).abs() < 5e-5);
    assert!(SensingConfig::new(50, 50).is_err());
}

#[test]
fn lmax_mode_at_rescaled_tw_mode() {
    let c = scaling_constants(&cfg());
    let oracle = FineTracyWidom::reference();
    assert!((table().mode() - oracle.mode()).abs() <= 0.006);
    let expected = c.b + c.nu * table().mode();
    let step = 0.005 * c.nu;
    let zs: Vec<f64> = (0..=4000).map(|i| expected - 2.0 * c.nu + i as f64 * c.nu / 1000.0).collect();
    let best = zs
        .iter()
        .cloned()
        .max_by(|x, y| lmax_limit_pdf(&c, table(), *x).total_cmp(&lmax_limit_pdf(&c, table(), *y)))
        .unwrap();
    assert!((best - expected).abs() <= step);
}

#[test]
fn lmin_median_maps_to_tw_median() {
    let c = scaling_constants(&cfg());
    let oracle_median = FineTracyWidom::reference().quantile(0.5);
    // mass below z of l_min equals mass of TW above (a - z)/|mu|
    let lo = c.a + 15.0 * c.mu;
    let n = 200_000;
    let h = (c.a - 8.0 * c.mu - lo) / n as f64;
    let mut acc = 0.0;
    let mut prev = lmin_limit_pdf(&c, table(), lo);
    let mut z_star = f64::NAN;
    for i in 1..=n {
        let z = lo + i as f64 * h;
        let f = lmin_limit_pdf(&c, table(), z);
        acc += 0.5 * h * (prev + f);
        prev = f;
        if acc >= 0.5 {
            z_star = z;
            break;
        }
    }
    assert!(((c.a - z_star) / c.mu.abs() - oracle_median).abs() < 1e-3);
}

#[test]
fn ratio_density_normalised_and_supported_above_one() {
    let c = scaling_constants(&cfg());
    assert_eq!(ratio_pdf(&c, table(), 0.5), 0.0);
    let d = dist();
    let g = d.t_grid();
    let mass: f64 = g.windows(2).zip(d.pdf_values().windows(2)).map(|(t, p)| 0.5 * (t[1] - t[0]) * (p[0] + p[1])).sum();
    assert!((mass - 1.0).abs() < 1e-3);
    assert!(g[0] > 1.0);
    assert!(ratio_cdf(d, g[0]) <= 1e-6);
    assert!(d.pdf(g[0]) < 1e-6 * d.pdf_values().iter().cloned().fold(0.0, f64::max));
    // table and direct evaluation agree
    for &t in &[2.3, 2.34, 2.4, 2.5] {
        assert!((d.pdf(t) - ratio_pdf(&c, table(), t)).abs() < 1e-6 * ratio_pdf(&c, table(), t).max(1.0));
    }
}

#[test]
fn quantile_roundtrip_and_monotonicity() {
    let d = dist();
    let mut last = 0.0;
    for p in [0.001, 0.05, 0.1, 0.5, 0.9, 0.95, 0.999] {
        let t = ratio_inverse_cdf(d, p).unwrap();
        assert!((ratio_cdf(d, t) - p).abs() <= 1e-6);
        assert!(t > last);
        last = t;
    }
    assert!(ratio_inverse_cdf(d, 1.2).is_err());
}

#[test]
fn ratio_quantile_below_semi_asymptotic_threshold() {
    let rd = ratio_inverse_cdf(dist(), 0.9).unwrap();
    let sa = gamma_semi_asymptotic(&cfg(), table(), 0.1).unwrap();
    assert!(rd < sa, "{rd} vs {sa}");
}

/// `(K, N, t, P(T <= t))` from the fine-grid oracle, which integrates the
/// CDF of `l_max` against the density of `l_min` directly.
const ORACLE_CDF: [(usize, usize, f64, f64); 11] = [
    (50, 1000, 2.25, 0.029_655_628_0),
    (50, 1000, 2.30, 0.216_449_460_9),
    (50, 1000, 2.34, 0.513_571_563_3),
    (50, 1000, 2.38, 0.788_531_638_6),
    (50, 1000, 2.42, 0.936_039_578_0),
    (50, 1000, 2.46, 0.986_150_820_4),
    (50, 1000, 2.50, 0.997_765_560_0),
    (8, 200, 1.8, 0.252_230_875_7),
    (8, 200, 2.0, 0.831_635_958_2),
    (8, 200, 2.2, 0.989_202_396_4),
    (8, 200, 2.5, 0.999_950_879_9),
];

#[test]
fn cdf_matches_oracle() {
    let oracle = FineTracyWidom::reference();
    for (k, n, t, frozen) in ORACLE_CDF {
        let config = SensingConfig::new(k, n).unwrap();
        let c = scaling_constants(&config);
        assert!((oracle.ratio_cdf(c.a, c.b, c.nu, c.mu, t) - frozen).abs() < 1e-9);
        let d = build_ratio_distribution(&config, table()).unwrap();
        assert!((ratio_cdf(&d, t) - frozen).abs() < 1e-6, "K={k} N={n} t={t}");
    }
}

#[test]
fn two_receivers_lose_mass_below_one() {
    // for K = 2 the limiting law puts about 1% of its mass at t <= 1 for any N
    for n in [10, 100, 1000] {
        assert!(build_ratio_distribution(&SensingConfig::new(2, n).unwrap(), table()).is_err());
    }
}

#[test]
fn geometric_tail_when_lmin_support_reaches_zero() {
    let d = build_ratio_distribution(&SensingConfig::new(5, 20).unwrap(), table()).unwrap();
    assert!(d.t_grid().len() > eigensense_core::ratio::RATIO_GRID_POINTS);
    assert!(*d.cdf_values().last().unwrap() > 1.0 - 1e-5);
    let t = ratio_inverse_cdf(&d, 0.999).unwrap();
    assert!((ratio_cdf(&d, t) - 0.999).abs() <= 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn constants_valid_over_regime(k in 2usize..400, extra in 1usize..4000) {
        let c = ScalingConstants::from_config(&SensingConfig::new(k, k + extra).unwrap());
        prop_assert!(0.0 < c.a && c.a < c.b && c.nu > 0.0 && c.mu < 0.0);
        prop_assert!(c.limit_ratio() > 1.0);
    }

    #[test]
    fn distributions_valid_over_regime(k in 4usize..120, factor in 4usize..30) {
        let config = SensingConfig::new(k, k * factor).unwrap();
        let d = build_ratio_distribution(&config, table()).unwrap();
        prop_assert!(d.cdf_values().last().unwrap() >= &(1.0 - 1e-3));
        prop_assert!(d.t_grid()[0] > 1.0);
    }
}
