//! CSV output for ROC points, empirical CDFs and per-trial outcomes.

use std::fmt::Write as _;

use eigensense_core::sim::{EmpiricalCdf, Hypothesis, RocPoint};
use eigensense_core::thresholds::ThresholdKind;

/// Decimal with 12 significant digits, in the style of C's `%.12g`.
pub fn sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.11e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, v))
    } else {
        let m = trim(mantissa);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub const ROC_HEADER: &str = "detector,target_pfa,empirical_pfa,empirical_pmd,trials_h0,trials_h1,gamma";
pub const CDF_HEADER: &str = "t,empirical_cdf,analytic_cdf";
pub const TRIALS_HEADER: &str = "trial,hypothesis,detector,target_pfa,statistic,gamma,decision";

pub fn roc_csv(points: &[RocPoint]) -> String {
    let mut out = String::from(ROC_HEADER);
    out.push('\n');
    for p in points {
        let target = p.target_pfa.map(sig12).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            p.detector,
            target,
            sig12(p.empirical_pfa),
            sig12(p.empirical_pmd),
            p.trials_h0,
            p.trials_h1,
            sig12(p.gamma)
        )
        .unwrap();
    }
    out
}

pub fn cdf_csv(empirical: &EmpiricalCdf, analytic: impl Fn(f64) -> f64) -> String {
    let mut out = String::from(CDF_HEADER);
    out.push('\n');
    for (&t, &level) in empirical.values.iter().zip(&empirical.levels) {
        writeln!(out, "{},{},{}", sig12(t), sig12(level), sig12(analytic(t))).unwrap();
    }
    out
}

fn hypothesis_tag(h: Hypothesis) -> &'static str {
    match h {
        Hypothesis::H0 => "H0",
        Hypothesis::H1 => "H1",
    }
}

/// One row of the per-trial listing written by `simulate`.
pub struct TrialRow {
    pub trial: usize,
    pub hypothesis: Hypothesis,
    pub detector: ThresholdKind,
    pub target_pfa: Option<f64>,
    pub statistic: f64,
    pub gamma: f64,
    pub decision: Hypothesis,
}

pub fn trials_csv(rows: &[TrialRow]) -> String {
    let mut out = String::from(TRIALS_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.trial,
            hypothesis_tag(r.hypothesis),
            r.detector,
            r.target_pfa.map(sig12).unwrap_or_default(),
            sig12(r.statistic),
            sig12(r.gamma),
            hypothesis_tag(r.decision)
        )
        .unwrap();
    }
    out
}
