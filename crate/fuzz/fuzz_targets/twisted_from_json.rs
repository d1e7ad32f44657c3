#![no_main]

use bgg_core::bggcore::twisted_from_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(u) = twisted_from_json(s) {
        let again = twisted_from_json(&u.to_json()).expect("re-encoded element parses");
        assert_eq!(again, u);
    }
});
