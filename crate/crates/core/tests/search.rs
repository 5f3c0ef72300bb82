use agree_core::search::{brute_force_oracle, max_agreeing, theorem_bound, SearchParams};
use agree_core::{is_nontrivial, is_r_wise_t_agreeing};

fn optimum(n: usize, r: usize, t: usize) -> usize {
    let res = max_agreeing(&SearchParams::new(n, r, t)).unwrap();
    assert!(res.exact);
    res.optimum
}

#[test]
fn witnesses_satisfy_their_constraints() {
    for (n, r, t) in [(4, 2, 1), (5, 3, 1), (5, 3, 2), (5, 4, 1), (6, 4, 2)] {
        for nontrivial in [true, false] {
            let res = max_agreeing(&SearchParams::new(n, r, t).nontrivial(nontrivial)).unwrap();
            let w = res.witness.expect("a maximum family");
            assert_eq!(w.len(), res.optimum);
            assert!(is_r_wise_t_agreeing(&w, r, t).unwrap().is_none());
            assert!(!nontrivial || is_nontrivial(&w));
        }
    }
}

#[test]
fn optimum_is_monotone() {
    // larger r and larger t only add constraints
    for n in 4..=5 {
        for r in 2..=3 {
            assert!(optimum(n, r + 1, 1) <= optimum(n, r, 1));
            assert!(optimum(n, r, 2) <= optimum(n, r, 1));
        }
    }
    // a family on [n] lifts to [n + 1] by adding coordinate n + 1 to no member
    for (r, t) in [(2, 1), (3, 1), (3, 2)] {
        assert!(optimum(4, r, t) <= optimum(5, r, t));
    }
}

#[test]
fn small_cells_meet_the_bound() {
    for (n, r, t) in [(4, 2, 1), (4, 2, 2), (5, 2, 3), (5, 3, 1), (5, 3, 2), (6, 3, 2), (6, 4, 1)] {
        assert_eq!(optimum(n, r, t), theorem_bound(n, r, t).unwrap(), "({n},{r},{t})");
    }
}

#[test]
fn trivial_families_can_beat_the_bound() {
    let p = SearchParams::new(5, 3, 1).nontrivial(false);
    let trivial = brute_force_oracle(&p).unwrap();
    assert_eq!(trivial.optimum, 16);
    assert_eq!(max_agreeing(&p).unwrap().optimum, 16);
    assert!(trivial.optimum > theorem_bound(5, 3, 1).unwrap());
}

#[test]
fn oracle_refuses_large_ground() {
    assert!(brute_force_oracle(&SearchParams::new(6, 3, 1)).is_err());
}

#[test]
fn bound_fails_outside_its_range() {
    // r = 2 allows only t = 1; the radius-2 Hamming ball on [6] is 2-wise 2-agreeing
    let p = SearchParams::new(6, 2, 2);
    assert!(!p.theorem_range());
    let res = max_agreeing(&p).unwrap();
    assert_eq!(res.optimum, 1 + 6 + 15);
    assert!(res.optimum > theorem_bound(6, 2, 2).unwrap());
}
