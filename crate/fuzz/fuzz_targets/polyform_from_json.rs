#![no_main]

use bgg_core::forms::{polyform_from_json, polyform_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(u) = polyform_from_json(s) {
        // accepted forms re-encode to something that decodes to the same form
        let again = polyform_from_json(&polyform_to_json(&u)).expect("re-encoded form parses");
        assert_eq!(again, u);
    }
});
