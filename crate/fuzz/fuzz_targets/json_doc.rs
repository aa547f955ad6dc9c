#![no_main]

use gwtqft::partition::{from_phi_terms, phi_terms};
use gwtqft_cli::ZDoc;
use libfuzzer_sys::fuzz_target;

// accepted documents re-serialize stably; well-formed terms survive a
// round trip through the canonical form
fuzz_target!(|data: &[u8]| {
    let Ok(doc) = serde_json::from_slice::<ZDoc>(data) else {
        return;
    };
    let once = serde_json::to_string(&doc).expect("serializes");
    let back: ZDoc = serde_json::from_str(&once).expect("own output parses");
    assert_eq!(serde_json::to_string(&back).unwrap(), once);
    if let Ok(z) = from_phi_terms(&doc.terms) {
        assert_eq!(from_phi_terms(&phi_terms(&z)).as_ref(), Ok(&z));
    }
});
