use std::path::PathBuf;

use bgg_core::abstractcx::complex_from_json;
use bgg_core::bggcore::{diagram_from_json, twisted_from_json};
use bgg_core::forms::polyform_from_json;
use bgg_core::ratpoly::parse_rational;

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            let text = std::fs::read_to_string(&path).unwrap();
            (path, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn fuzz_seeds_decode() {
    for (path, s) in seeds("polyform_from_json") {
        polyform_from_json(&s).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
    for (path, s) in seeds("diagram_from_json") {
        diagram_from_json(&s).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
    for (path, s) in seeds("complex_from_json") {
        complex_from_json(&s).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
    for (path, s) in seeds("twisted_from_json") {
        twisted_from_json(s.trim()).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
    for (path, s) in seeds("parse_rational") {
        parse_rational(&s).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}
