//! Bundled input files, addressable by bare name.

use crate::floer_datum::FloerDatum;

pub const DATUM_NAMES: [&str; 4] = ["s3", "sigma_2_3_5", "neg_sigma_2_3_5", "remark_nonpositive"];

const FILES: &[(&str, &str)] = &[
    ("s3.json", include_str!("../fixtures/s3.json")),
    ("sigma_2_3_5.json", include_str!("../fixtures/sigma_2_3_5.json")),
    ("neg_sigma_2_3_5.json", include_str!("../fixtures/neg_sigma_2_3_5.json")),
    ("remark_nonpositive.json", include_str!("../fixtures/remark_nonpositive.json")),
    ("delta1_sigma_to_s3.json", include_str!("../fixtures/delta1_sigma_to_s3.json")),
    ("delta1_sigma_self.json", include_str!("../fixtures/delta1_sigma_self.json")),
    ("s3_to_sigma_2_3_5.json", include_str!("../fixtures/s3_to_sigma_2_3_5.json")),
    ("e8.json", include_str!("../fixtures/e8.json")),
    ("diag_2_2.json", include_str!("../fixtures/diag_2_2.json")),
    ("circle.json", include_str!("../fixtures/circle.json")),
    ("two_minima.json", include_str!("../fixtures/two_minima.json")),
];

/// Contents of a bundled file, looked up with or without the `.json` suffix.
pub fn file(name: &str) -> Option<&'static str> {
    let base = name.rsplit('/').next().unwrap_or(name);
    let base = base.strip_suffix(".json").unwrap_or(base);
    FILES.iter().find(|(f, _)| f.strip_suffix(".json") == Some(base)).map(|(_, s)| *s)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(f, _)| *f)
}

/// A bundled datum, by file stem or by its `name` field.
pub fn datum(name: &str) -> Option<FloerDatum> {
    if let Some(s) = file(name) {
        if let Ok(d) = FloerDatum::from_json_str(s) {
            return Some(d);
        }
    }
    DATUM_NAMES
        .iter()
        .filter_map(|n| FloerDatum::from_json_str(file(n)?).ok())
        .find(|d| d.name == name)
}

pub fn all_data() -> Vec<FloerDatum> {
    DATUM_NAMES.iter().map(|n| datum(n).expect("bundled datum parses")).collect()
}
