#![no_main]

use libfuzzer_sys::fuzz_target;
use typed_asep::algebra::parse_symbol;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(symbol) = parse_symbol(text) {
        let again = parse_symbol(&symbol.to_string()).expect("display output reparses");
        assert_eq!(again, symbol);
    }
});
