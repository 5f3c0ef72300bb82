#![no_main]

use agree_core::format::{parse_family, write_family, Encoding};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(fam) = parse_family(text) else { return };
    for enc in [Encoding::Sets, Encoding::Hex] {
        let again = parse_family(&write_family(&fam, enc)).expect("own output parses");
        assert_eq!(again, fam);
    }
});
