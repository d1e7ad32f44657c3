#![no_main]

use bgg_core::abstractcx::complex_from_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = complex_from_json(s) {
        let json = c.to_json();
        let again = complex_from_json(&json).expect("re-encoded complex parses");
        assert_eq!(again.to_json(), json);
    }
});
