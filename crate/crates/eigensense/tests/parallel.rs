use eigensense::parallel::{roc_curve, simulate_statistics, with_workers};
use eigensense_core::ratio::build_ratio_distribution;
use eigensense_core::scaling::SensingConfig;
use eigensense_core::sim::{self, Hypothesis, NoiseUncertainty, Scenario, SignalModel, ThresholdSources, UncertaintyMode};
use eigensense_core::thresholds::ThresholdKind;
use eigensense_core::tracy_widom::TracyWidomTable;

fn scenario(mode: UncertaintyMode) -> Scenario {
    Scenario {
        config: SensingConfig::new(6, 60).unwrap(),
        model: SignalModel::unit_at_snr(-8.0).unwrap(),
        noise: NoiseUncertainty::new(0.5, mode).unwrap(),
    }
}

#[test]
fn statistics_match_sequential_for_any_worker_count() {
    for mode in [UncertaintyMode::FixedOffset, UncertaintyMode::UniformPerTrial] {
        let sc = scenario(mode);
        for h in [Hypothesis::H0, Hypothesis::H1] {
            let reference = sim::simulate_statistics(&sc, h, 120, 7).unwrap();
            for w in [1, 2, 5] {
                let got = with_workers(Some(w), || simulate_statistics(&sc, h, 120, 7)).unwrap();
                assert!(got.iter().zip(&reference).all(|(a, b)| {
                    a.ratio.to_bits() == b.ratio.to_bits() && a.energy.to_bits() == b.energy.to_bits()
                }));
            }
        }
    }
}

#[test]
fn roc_matches_sequential() {
    let sc = scenario(UncertaintyMode::FixedOffset);
    let tw = TracyWidomTable::standard().unwrap();
    let dist = build_ratio_distribution(&sc.config, &tw).unwrap();
    let sources = ThresholdSources { tracy_widom: &tw, ratio: &dist };
    let pfas = [0.05, 0.2];
    let reference = sim::roc_curve(&sc, &sources, &ThresholdKind::ALL, &pfas, 80, 3).unwrap();
    let got = with_workers(Some(3), || roc_curve(&sc, &sources, &ThresholdKind::ALL, &pfas, 80, 3)).unwrap();
    assert_eq!(got, reference);
    assert_eq!(got.len(), 1 + 3 * pfas.len());
}

#[test]
fn zero_trials_rejected() {
    let sc = scenario(UncertaintyMode::FixedOffset);
    assert!(simulate_statistics(&sc, Hypothesis::H0, 0, 1).is_err());
}
