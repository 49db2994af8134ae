use std::fs;

use eigensense::formats::*;
use eigensense_core::ratio::build_ratio_distribution;
use eigensense_core::scaling::SensingConfig;
use eigensense_core::thresholds::build_threshold_table;
use eigensense_core::tracy_widom::TracyWidomTable;
use tempfile::tempdir;

fn tw() -> TracyWidomTable {
    TracyWidomTable::standard().unwrap()
}

#[test]
fn tracy_widom_roundtrip_is_bit_exact() {
    let table = tw();
    let dir = tempdir().unwrap();
    let path = dir.path().join("tw.json");
    save_tw_table(&table, &path).unwrap();
    let back = load_tw_table(&path).unwrap();
    assert_eq!(back, table);
    for (a, b) in back.cdf_values().iter().zip(table.cdf_values()) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
    assert_eq!(tw_table_to_json(&back), fs::read_to_string(&path).unwrap());
    assert_eq!(sniff_table(&path).unwrap(), TableKind::TracyWidom);
}

#[test]
fn ratio_roundtrip_is_bit_exact() {
    let table = tw();
    let config = SensingConfig::new(10, 100).unwrap();
    let stored = StoredRatio { dist: build_ratio_distribution(&config, &table).unwrap(), tw_meta: table.meta() };
    let dir = tempdir().unwrap();
    let path = dir.path().join("ratio.json");
    save_ratio(&stored, &path).unwrap();
    let back = load_ratio(&path).unwrap();
    assert_eq!(back, stored);
    assert_eq!(ratio_to_json(&back), fs::read_to_string(&path).unwrap());
    assert_eq!(sniff_table(&path).unwrap(), TableKind::Ratio);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("{\"K\":10,\"N\":100,"));
}

#[test]
fn threshold_table_roundtrip() {
    let table = tw();
    let configs = [SensingConfig::new(5, 20).unwrap(), SensingConfig::new(10, 100).unwrap()];
    let thresholds = build_threshold_table(&configs, &[0.01, 0.1, 0.5], &table).unwrap();
    let dir = tempdir().unwrap();
    let path = dir.path().join("thr.json");
    save_threshold_table(&thresholds, &path).unwrap();
    let back = load_threshold_table(&path).unwrap();
    assert_eq!(back.len(), 6);
    for (a, b) in back.entries().zip(thresholds.entries()) {
        assert_eq!(a, b);
    }
    assert_eq!(back.meta(), thresholds.meta());
    assert_eq!(sniff_table(&path).unwrap(), TableKind::Thresholds);
}

#[test]
fn truncated_file_reports_position() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("tw.json");
    let text = tw_table_to_json(&tw());
    fs::write(&path, &text[..text.len() / 2]).unwrap();
    match load_tw_table(&path) {
        Err(FormatError::Parse { line, column, .. }) => {
            assert_eq!(line, 1);
            assert!(column > 0);
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
    let msg = load_tw_table(&path).unwrap_err().to_string();
    assert!(msg.contains("line 1, column"), "{msg}");
}

#[test]
fn non_monotone_thresholds_rejected() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("thr.json");
    let text = r#"{"entries":[{"K":10,"N":100,"pfa":0.01,"gamma":3.0},{"K":10,"N":100,"pfa":0.1,"gamma":3.5}],"meta":{"tw_tol":1e-10,"grid":2001}}"#;
    fs::write(&path, text).unwrap();
    assert!(matches!(load_threshold_table(&path), Err(FormatError::Invalid { .. })));
}

#[test]
fn unknown_fields_and_bad_configs_rejected() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("thr.json");
    fs::write(&path, r#"{"entries":[],"meta":{"tw_tol":1e-10,"grid":2001},"extra":1}"#).unwrap();
    assert!(matches!(load_threshold_table(&path), Err(FormatError::Parse { .. })));

    let table = tw();
    let config = SensingConfig::new(10, 100).unwrap();
    let stored = StoredRatio { dist: build_ratio_distribution(&config, &table).unwrap(), tw_meta: table.meta() };
    let bad = ratio_to_json(&stored).replacen("\"N\":100", "\"N\":10", 1);
    assert!(matches!(ratio_from_json(&path, &bad), Err(FormatError::Invalid { .. })));
}

#[test]
fn corrupted_table_values_rejected() {
    let table = tw();
    let json = tw_table_to_json(&table);
    let mut value: serde_json::Value = serde_json::from_str(&json).unwrap();
    value["cdf"][100] = serde_json::json!(2.0);
    let text = serde_json::to_string(&value).unwrap();
    let err = tw_table_from_json(std::path::Path::new("mem"), &text).unwrap_err();
    assert!(matches!(err, FormatError::Invalid { .. }), "{err}");
}

#[test]
fn missing_file_is_an_io_error() {
    let dir = tempdir().unwrap();
    let err = load_ratio(&dir.path().join("absent.json")).unwrap_err();
    assert!(matches!(err, FormatError::Io { .. }));
    assert!(err.to_string().contains("absent.json"));
}
