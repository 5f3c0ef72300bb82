#![no_main]

use agree_core::format::{parse_sets_json, sets_of};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(fam) = parse_sets_json(text) {
        let sets = sets_of(&fam);
        assert_eq!(sets.len(), fam.len());
        assert!(sets.iter().flatten().all(|&c| c >= 1 && c <= fam.n()));
    }
});
