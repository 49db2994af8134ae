use eigensense_core::airy::{airy_ai, airy_ai_prime};
use eigensense_oracles::special::{airy_ai_large, gamma};

#[test]
fn value_at_origin_matches_gamma_closed_form() {
    let reference = 3f64.powf(-2.0 / 3.0) / gamma(2.0 / 3.0);
    assert!((airy_ai(0.0).unwrap() - reference).abs() < 1e-13);
    let slope = -3f64.powf(-1.0 / 3.0) / gamma(1.0 / 3.0);
    assert!((airy_ai_prime(0.0).unwrap() - slope).abs() < 1e-13);
}

#[test]
fn decays_far_right() {
    let v = airy_ai(12.0).unwrap();
    assert!(v > 0.0 && v < 1e-12);
    let (reference, _) = airy_ai_large(12.0);
    assert!((v / reference - 1.0).abs() < 1e-12);
}

#[test]
fn satisfies_airy_equation() {
    let h = 2e-4;
    let mut s = -10.0;
    while s <= 10.0 {
        let second = (airy_ai(s + h).unwrap() - 2.0 * airy_ai(s).unwrap() + airy_ai(s - h).unwrap()) / (h * h);
        assert!((second - s * airy_ai(s).unwrap()).abs() <= 1e-6, "s = {s}");
        s += 0.05;
    }
}

#[test]
fn derivative_consistent_with_values() {
    let h = 1e-4;
    for i in -150..=150 {
        let s = i as f64 / 10.0;
        let fd = (airy_ai(s + h).unwrap() - airy_ai(s - h).unwrap()) / (2.0 * h);
        assert!((fd - airy_ai_prime(s).unwrap()).abs() < 1e-6, "s = {s}");
    }
}
