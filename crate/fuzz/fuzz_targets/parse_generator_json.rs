#![no_main]

use libfuzzer_sys::fuzz_target;
use typed_asep::json::{generator_from_json, symbolic_generator_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(value) = serde_json::from_slice(data) else { return };
    if let Ok(gen) = generator_from_json(&value) {
        let again = generator_from_json(&symbolic_generator_to_json(&gen)).expect("encoding reparses");
        assert_eq!(again, gen);
    }
});
