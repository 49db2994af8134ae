use eigensense_core::eigen::hermitian_eigenvalues;
use eigensense_core::matrix::ComplexMatrix;
use eigensense_core::scaling::SensingConfig;
use eigensense_core::sim::{generate_samples, sample_covariance, trial_rng, Hypothesis, SignalModel};
use eigensense_oracles::eigen as oracle;
use num_complex::Complex64;
use proptest::prelude::*;

fn hermitian(n: usize, entries: &[(f64, f64)]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    let mut it = entries.iter();
    for i in 0..n {
        m[(i, i)] = Complex64::new(it.next().unwrap().0, 0.0);
        for j in i + 1..n {
            let &(re, im) = it.next().unwrap();
            m[(i, j)] = Complex64::new(re, im);
            m[(j, i)] = Complex64::new(re, -im);
        }
    }
    m
}

fn as_pairs(m: &ComplexMatrix) -> Vec<(f64, f64)> {
    m.as_slice().iter().map(|z| (z.re, z.im)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matches_inertia_oracle(n in 1usize..=8, seed in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 36)) {
        let m = hermitian(n, &seed);
        let ev = hermitian_eigenvalues(&m).unwrap();
        let reference = oracle::hermitian_eigenvalues(&as_pairs(&m), n, 1e-12);
        for (a, b) in ev.iter().zip(&reference) {
            prop_assert!((a - b).abs() <= 1e-8, "{a} vs {b}");
        }
        prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
        let trace = m.trace();
        prop_assert!((ev.iter().sum::<f64>() - trace).abs() <= 1e-9 * trace.abs().max(1.0));
    }
}

#[test]
fn covariance_spectra_match_oracle() {
    let model = SignalModel::unit_at_snr(0.0).unwrap();
    for i in 0..20 {
        let config = SensingConfig::new(8, 40).unwrap();
        let y = generate_samples(&config, &model, Hypothesis::H1, &mut trial_rng(5, Hypothesis::H1, i));
        let r = sample_covariance(&y).unwrap();
        let ev = hermitian_eigenvalues(&r).unwrap();
        let reference = oracle::hermitian_eigenvalues(&as_pairs(&r), 8, 1e-13);
        for (a, b) in ev.iter().zip(&reference) {
            assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0));
        }
    }
}

#[test]
fn large_matrix_trace_preserved() {
    let config = SensingConfig::new(100, 400).unwrap();
    let y = generate_samples(&config, &SignalModel::noise_only(2.0).unwrap(), Hypothesis::H0, &mut trial_rng(9, Hypothesis::H0, 0));
    let r = sample_covariance(&y).unwrap();
    let ev = hermitian_eigenvalues(&r).unwrap();
    assert!((ev.iter().sum::<f64>() - r.trace()).abs() <= 1e-9 * r.trace());
    assert!(ev[0] > 0.0);
}

#[test]
fn rejects_oversized_input() {
    assert!(hermitian_eigenvalues(&ComplexMatrix::zeros(513, 513)).is_err());
}
