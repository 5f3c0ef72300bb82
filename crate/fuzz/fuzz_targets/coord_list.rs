#![no_main]

use agree_core::{parse_coord_list, GroundSet};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(ground) = GroundSet::new(usize::from(n % 64)) else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(s) = parse_coord_list(text, ground) {
        assert_eq!(s.bits() & !ground.full_mask(), 0);
        let listed: Vec<String> = s.coords().map(|c| c.to_string()).collect();
        assert_eq!(parse_coord_list(&listed.join(","), ground).unwrap(), s);
    }
});
