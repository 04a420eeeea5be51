use std::io::Write;

use tolink::skin_attenuation::{alpha_at, load_table, SkinAttenuationTable, BUNDLED_TABLE_PATH};
use tolink::Error;

fn write_tmp(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn bundled_table_is_the_shipped_file() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(BUNDLED_TABLE_PATH);
    let from_disk = load_table(&path).unwrap();
    assert_eq!(
        from_disk.samples(),
        SkinAttenuationTable::bundled().samples()
    );
}

#[test]
fn custom_table_interpolates_linearly() {
    let f = write_tmp("# two-point test\nwavelength_nm,alpha_per_mm\n800,1.0\n1000,3.0\n");
    let t = load_table(f.path()).unwrap();
    assert_eq!(t.source(), "two-point test");
    assert!((alpha_at(&t, 900e-9).unwrap() - 2000.0).abs() < 1e-9);
    assert_eq!(alpha_at(&t, 800e-9).unwrap(), 1000.0);
    assert_eq!(alpha_at(&t, 1000e-9).unwrap(), 3000.0);
    assert!(matches!(
        alpha_at(&t, 1001e-9),
        Err(Error::WavelengthOutOfRange { .. })
    ));
}

#[test]
fn malformed_tables_name_the_line() {
    let cases = [
        ("wavelength_nm,alpha_per_mm\n800,1.0\n900,abc\n", 3),
        ("wavelength_nm,alpha_per_mm\n800,1.0\n900\n", 3),
        ("wavelength,alpha\n800,1.0\n900,1.0\n", 1),
    ];
    for (text, line) in cases {
        let err = SkinAttenuationTable::parse_csv(text).unwrap_err();
        match err {
            Error::TableParse { line: l, .. } => assert_eq!(l, line, "{text}"),
            other => panic!("unexpected {other}"),
        }
    }
}

#[test]
fn invalid_contents_are_rejected() {
    for text in [
        "wavelength_nm,alpha_per_mm\n900,1.0\n800,1.0\n",
        "wavelength_nm,alpha_per_mm\n800,1.0\n800,2.0\n",
        "wavelength_nm,alpha_per_mm\n800,-1.0\n900,1.0\n",
        "wavelength_nm,alpha_per_mm\n800,1.0\n",
        "wavelength_nm,alpha_per_mm\n100,1.0\n900,1.0\n",
    ] {
        assert!(SkinAttenuationTable::parse_csv(text).is_err(), "{text}");
    }
}

#[test]
fn missing_file_is_io_error() {
    let err = load_table("/nonexistent/alpha.csv").unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
}

#[test]
fn bundled_table_shape() {
    let t = SkinAttenuationTable::bundled();
    let (lo, hi) = t.range();
    assert!(lo <= 900e-9 && hi >= 1450e-9);
    let a1100 = t.alpha_at(1100e-9).unwrap();
    let a1450 = t.alpha_at(1450e-9).unwrap();
    assert!(a1450 > 10.0 * a1100);
}
