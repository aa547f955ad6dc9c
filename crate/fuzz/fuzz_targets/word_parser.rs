#![no_main]

use gwtqft::gluing::parse_word;
use libfuzzer_sys::fuzz_target;

// parsing never panics, and accepted words print back to themselves
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(w) = parse_word(src) {
        assert_eq!(parse_word(&w.to_string()).as_ref(), Ok(&w));
    }
});
