#![no_main]

use bgg_core::bggcore::{diagram_from_json, diagram_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = diagram_from_json(s) {
        let json = diagram_to_json(&spec);
        let again = diagram_from_json(&json).expect("re-encoded diagram parses");
        assert_eq!(diagram_to_json(&again), json);
    }
});
