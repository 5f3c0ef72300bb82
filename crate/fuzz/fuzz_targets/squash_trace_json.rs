#![no_main]

use agree_core::squash::SquashTrace;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(trace) = SquashTrace::from_json(text) {
        let again = SquashTrace::from_json(&trace.to_json()).expect("own output parses");
        assert_eq!(again, trace);
    }
});
