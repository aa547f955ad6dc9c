#![no_main]

use gwtqft::parse::parse_phi_elem;
use libfuzzer_sys::fuzz_target;

// the canonical printout of an accepted expression parses to the same value
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(e) = parse_phi_elem(src) {
        let printed = e.to_string();
        let again = parse_phi_elem(&printed).expect("canonical form parses");
        assert_eq!(again, e);
        assert_eq!(again.to_string(), printed);
    }
});
