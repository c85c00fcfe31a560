#![no_main]

use libfuzzer_sys::fuzz_target;
use typed_asep::json::{element_from_json, symbolic_element_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(value) = serde_json::from_slice(data) else { return };
    if let Ok(element) = element_from_json(&value) {
        let again = element_from_json(&symbolic_element_to_json(&element)).expect("encoding reparses");
        assert_eq!(again, element);
    }
});
