use std::sync::OnceLock;

use eigensense_core::painleve::{left_asymptote, solve_painleve_ii, PainleveSolution};
use eigensense_core::tracy_widom::{build_tw2_table, tw2_cdf, tw2_inverse_cdf, TracyWidomTable};
use eigensense_oracles::tw::FineTracyWidom;

fn oracle() -> &'static FineTracyWidom {
    static O: OnceLock<FineTracyWidom> = OnceLock::new();
    O.get_or_init(FineTracyWidom::reference)
}

fn table() -> &'static TracyWidomTable {
    static T: OnceLock<TracyWidomTable> = OnceLock::new();
    T.get_or_init(|| TracyWidomTable::standard().unwrap())
}

fn solution() -> &'static PainleveSolution {
    static S: OnceLock<PainleveSolution> = OnceLock::new();
    S.get_or_init(|| solve_painleve_ii(-10.0, 10.0, 1e-10).unwrap())
}

#[test]
fn moments_match_fine_oracle() {
    assert!((table().mean() - oracle().mean()).abs() < 1e-3);
    assert!((table().variance() - oracle().variance()).abs() < 2e-3);
    assert!((table().mean() + 1.7711).abs() < 1e-3);
    assert!((table().variance() - 0.8132).abs() < 2e-3);
}

#[test]
fn quantiles_match_fine_oracle() {
    for p in [0.01, 0.1, 0.5, 0.9, 0.95, 0.99] {
        let s = tw2_inverse_cdf(table(), p).unwrap();
        assert!((s - oracle().quantile(p)).abs() < 1e-5, "p = {p}");
    }
    let median = tw2_inverse_cdf(table(), 0.5).unwrap();
    assert!((median + 1.8046).abs() < 2e-3);
}

#[test]
fn cdf_matches_fine_oracle_pointwise() {
    for i in 0..=60 {
        let s = -6.0 + 0.2 * i as f64;
        assert!((tw2_cdf(table(), s) - oracle().cdf_at(s)).abs() < 1e-6, "s = {s}");
    }
}

#[test]
fn mode_matches_fine_oracle() {
    assert!((table().mode() - oracle().mode()).abs() <= 0.006);
}

#[test]
fn roundtrip_on_central_window() {
    let mut s = -5.0;
    while s <= 2.0 {
        let back = tw2_inverse_cdf(table(), tw2_cdf(table(), s)).unwrap();
        assert!((back - s).abs() <= 1e-6, "s = {s}");
        s += 0.01;
    }
}

#[test]
fn quantiles_increase() {
    let levels = [0.01, 0.1, 0.5, 0.9, 0.99];
    let qs: Vec<f64> = levels.iter().map(|&p| tw2_inverse_cdf(table(), p).unwrap()).collect();
    assert!(qs.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn cdf_clamped_and_monotone() {
    assert_eq!(tw2_cdf(table(), -30.0), 0.0);
    assert_eq!(tw2_cdf(table(), 30.0), 1.0);
    let mut last = 0.0;
    for i in 0..=4000 {
        let v = tw2_cdf(table(), -15.0 + i as f64 * 0.0075);
        assert!(v >= last);
        last = v;
    }
}

#[test]
fn left_tail_follows_asymptote() {
    let sol = solution();
    let i = sol.grid().iter().position(|&s| (s + 8.0).abs() < 1e-9).unwrap();
    let q = sol.q()[i];
    assert!((q.abs() / 2.0 - 1.0).abs() <= 0.02);
    assert!((q - left_asymptote(-8.0)).abs() < 1e-6);
    assert!((q + 1.999_507_2).abs() < 1e-6);
}

#[test]
fn matches_oracle_where_initial_value_sweep_is_reliable() {
    let sol = solution();
    for (&s, &q) in sol.grid().iter().zip(sol.q()) {
        if s >= -6.0 {
            assert!((q - oracle().q_at(s)).abs() < 1e-6, "s = {s}");
        }
    }
}

#[test]
fn table_from_short_domain_is_valid() {
    let t = build_tw2_table(&solve_painleve_ii(-10.0, 10.0, 1e-10).unwrap()).unwrap();
    assert!((t.mean() - table().mean()).abs() < 1e-6);
}
