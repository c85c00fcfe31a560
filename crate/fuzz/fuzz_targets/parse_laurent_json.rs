#![no_main]

use libfuzzer_sys::fuzz_target;
use typed_asep::json::{laurent_from_json, laurent_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(value) = serde_json::from_slice(data) else { return };
    if let Ok(poly) = laurent_from_json(&value) {
        let again = laurent_from_json(&laurent_to_json(&poly)).expect("encoding reparses");
        assert_eq!(again, poly);
    }
});
