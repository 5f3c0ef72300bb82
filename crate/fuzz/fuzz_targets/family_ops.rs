#![no_main]

use agree_core::format::parse_family;
use agree_core::squash::{squash_all, SquashOutcome};
use agree_core::{is_down_closed, is_nontrivial, is_r_wise_t_agreeing, is_r_wise_t_union, max_disagreement};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(fam) = parse_family(text) else { return };
    if fam.n() > 10 || fam.len() > 64 {
        return;
    }
    let (out, trace) = squash_all(&fam, false).expect("squashing ends down-closed");
    assert_eq!(out.len(), fam.len());
    let stayed = trace.outcome == SquashOutcome::Stayed;
    assert!(!stayed || is_down_closed(&out));
    for r in 2..=3 {
        assert!(max_disagreement(&out, r) <= max_disagreement(&fam, r));
        for t in 1..=fam.n() {
            let agreeing = is_r_wise_t_agreeing(&fam, r, t).unwrap().is_none();
            let union = is_r_wise_t_union(&fam, r, t).unwrap().is_none();
            assert!(!union || agreeing);
            if agreeing && stayed {
                assert!(is_nontrivial(&out));
                assert!(is_r_wise_t_union(&out, r, t).unwrap().is_none());
            }
        }
    }
});
