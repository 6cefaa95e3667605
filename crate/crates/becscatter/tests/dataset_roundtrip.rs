//! The emitted files must survive a parse round trip bit-exactly and be
//! byte-deterministic across repeated writes.

use std::path::Path;

use proptest::prelude::*;

use becscatter::dataset::{emit_dataset, parse_dataset, Dataset, OutputFormat};
use becscatter::error::Error;

fn awkward_values() -> Vec<f64> {
    vec![
        0.0,
        -0.0,
        1.0,
        -1.0,
        std::f64::consts::PI,
        1.234_567_890_123_456_7e-300,
        9.87e250,
        f64::MIN_POSITIVE,
        5e-324,
        -2.2250738585072014e-308,
    ]
}

fn sample_dataset() -> Dataset {
    let n = awkward_values().len();
    let mut ds = Dataset::new("roundtrip");
    ds.push_column("x", "a_omega", (0..n).map(|i| i as f64).collect())
        .unwrap();
    ds.push_column("y", "", awkward_values()).unwrap();
    ds.set_provenance("gamma", "10");
    ds.set_provenance("note", "values include subnormals and huge exponents");
    ds
}

fn assert_bit_equal(a: &Dataset, b: &Dataset) {
    assert_eq!(a.name(), b.name());
    assert_eq!(a.column_names(), b.column_names());
    assert_eq!(a.provenance(), b.provenance());
    for name in a.column_names() {
        assert_eq!(a.column_unit(name), b.column_unit(name));
        let xs = a.column(name).unwrap();
        let ys = b.column(name).unwrap();
        assert_eq!(xs.len(), ys.len());
        for (x, y) in xs.iter().zip(ys) {
            assert_eq!(x.to_bits(), y.to_bits(), "column {name}: {x} vs {y}");
        }
    }
}

#[test]
fn csv_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("data.csv");
    let ds = sample_dataset();
    emit_dataset(&ds, OutputFormat::Csv, &path).unwrap();
    let back = parse_dataset(&path).unwrap();
    assert_bit_equal(&ds, &back);
}

#[test]
fn json_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("data.json");
    let ds = sample_dataset();
    emit_dataset(&ds, OutputFormat::Json, &path).unwrap();
    let back = parse_dataset(&path).unwrap();
    assert_bit_equal(&ds, &back);
}

#[test]
fn emission_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let ds = sample_dataset();
    for format in [OutputFormat::Csv, OutputFormat::Json] {
        let p1 = dir.path().join(format!("one.{format}"));
        let p2 = dir.path().join(format!("two.{format}"));
        emit_dataset(&ds, format, &p1).unwrap();
        emit_dataset(&ds, format, &p2).unwrap();
        let b1 = std::fs::read(&p1).unwrap();
        let b2 = std::fs::read(&p2).unwrap();
        assert_eq!(b1, b2);
        assert!(!b1.is_empty());
    }
}

#[test]
fn format_is_detected_from_content_not_extension() {
    let dir = tempfile::tempdir().unwrap();
    let ds = sample_dataset();
    let json_path = dir.path().join("looks_like.csv");
    emit_dataset(&ds, OutputFormat::Json, &json_path).unwrap();
    let back = parse_dataset(&json_path).unwrap();
    assert_bit_equal(&ds, &back);

    let csv_path = dir.path().join("plain.dat");
    emit_dataset(&ds, OutputFormat::Csv, &csv_path).unwrap();
    let back = parse_dataset(&csv_path).unwrap();
    assert_bit_equal(&ds, &back);
}

#[test]
fn empty_dataset_round_trips_with_provenance_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    let mut ds = Dataset::new("nothing");
    ds.set_provenance("reason", "no rows to write");
    emit_dataset(&ds, OutputFormat::Csv, &path).unwrap();
    let back = parse_dataset(&path).unwrap();
    assert_eq!(back.name(), "nothing");
    assert_eq!(back.n_columns(), 0);
    assert_eq!(
        back.provenance().get("reason").map(String::as_str),
        Some("no rows to write")
    );
}

#[test]
fn parse_failures_are_reported() {
    assert!(matches!(
        parse_dataset(Path::new("/nonexistent/nowhere.csv")),
        Err(Error::FileError { .. })
    ));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "# dataset=bad\nx,y\n1.0\n").unwrap();
    assert!(matches!(
        parse_dataset(&path),
        Err(Error::InvalidInput(_))
    ));
    let path2 = dir.path().join("nokey.csv");
    std::fs::write(&path2, "x,y\n1.0,2.0\n").unwrap();
    assert!(parse_dataset(&path2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arbitrary_finite_values_round_trip(
        values in prop::collection::vec(
            prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO,
            1..40,
        )
    ) {
        let dir = tempfile::tempdir().unwrap();
        let mut ds = Dataset::new("prop");
        ds.push_column("v", "", values.clone()).unwrap();
        for format in [OutputFormat::Csv, OutputFormat::Json] {
            let path = dir.path().join(format!("prop.{format}"));
            emit_dataset(&ds, format, &path).unwrap();
            let back = parse_dataset(&path).unwrap();
            let col = back.column("v").unwrap();
            prop_assert_eq!(col.len(), values.len());
            for (x, y) in values.iter().zip(col) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }
}
