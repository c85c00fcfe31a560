#![no_main]

use libfuzzer_sys::fuzz_target;
use typed_asep::exact::{format_rational, parse_rational};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(value) = parse_rational(text) {
        // formatting a parsed rational must round-trip exactly
        let again = parse_rational(&format_rational(&value)).expect("formatted output reparses");
        assert_eq!(again, value);
    }
});
