#![no_main]

use agree_core::format::{hex_of, parse_hex_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(fam) = parse_hex_json(text) {
        let full = fam.ground().full_mask();
        assert!(fam.members().iter().all(|s| s.bits() & !full == 0));
        assert!(fam.members().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(hex_of(&fam).len(), fam.len());
    }
});
