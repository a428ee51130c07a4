use k3audit::matgroup::catalogue::{data_text, embedded_files, CatalogueEntry};
use k3audit::multipoly::PolyFile;

#[test]
fn group_files_round_trip_bit_exact() {
    let mut seen = 0;
    for file in embedded_files().filter(|f| f.ends_with(".grp")) {
        let text = data_text(file).unwrap();
        let entry = CatalogueEntry::parse(file, &text).unwrap();
        assert_eq!(entry.serialize(), text, "{file}");
        seen += 1;
    }
    assert_eq!(seen, 11);
}

#[test]
fn poly_files_round_trip() {
    for file in embedded_files().filter(|f| f.ends_with(".poly")) {
        let text = data_text(file).unwrap();
        let parsed = PolyFile::parse(&text).unwrap();
        let out = parsed.serialize();
        assert_eq!(PolyFile::parse(&out).unwrap(), parsed, "{file}");
        assert_eq!(PolyFile::parse(&out).unwrap().serialize(), out, "{file}");
        let stripped: String = text.lines().filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty()).map(|l| format!("{l}\n")).collect();
        if stripped.lines().skip(1).all(|l| !l.contains('#')) {
            assert_eq!(out, stripped, "{file} is not stored in canonical order");
        }
    }
}
