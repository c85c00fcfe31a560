#![no_main]

use libfuzzer_sys::fuzz_target;
use typed_asep::json::{ratfunc_from_json, ratfunc_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(value) = serde_json::from_slice(data) else { return };
    if let Ok(f) = ratfunc_from_json(&value) {
        // decoding canonicalizes; the canonical form is a fixed point
        let again = ratfunc_from_json(&ratfunc_to_json(&f)).expect("encoding reparses");
        assert_eq!(again, f);
    }
});
