//! Closed-form families: the Brace–Daykin family and its twists, the parity
//! family and the fixed-coordinates family. All generators emit members in
//! canonical order.

use crate::family::Family;
use crate::subset::{GroundSet, Subset};
use crate::Error;

/// Generators refuse to materialize more members than this.
pub const MAX_GENERATED: usize = 1 << 26;

fn check_size(n: usize, extra_factor: usize, free_bits: usize) -> Result<(), Error> {
    let size = 1usize
        .checked_shl(free_bits as u32)
        .and_then(|s| s.checked_mul(extra_factor))
        .filter(|&s| s <= MAX_GENERATED);
    if size.is_none() {
        return Err(Error::InvalidParams(format!(
            "family on n = {n} too large to materialize (limit {MAX_GENERATED} members)"
        )));
    }
    Ok(())
}

/// Submasks of `outside` in ascending order.
fn submasks_ascending(outside: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == outside { None } else { Some((cur.wrapping_sub(outside)) & outside) };
        Some(cur)
    })
}

/// `{B ⊆ [n] : |B ∩ [r + t]| <= 1}`, of size `(r + t + 1) 2^(n - r - t)`.
pub fn brace_daykin(n: usize, r: usize, t: usize) -> Result<Family, Error> {
    let ground = GroundSet::new(n)?;
    let k = r + t;
    if k == 0 {
        return Err(Error::InvalidParams("r + t must be at least 1".into()));
    }
    if n < k {
        return Err(Error::GroundTooSmall { n, needed: k });
    }
    check_size(n, k + 1, n - k)?;
    let profile = (1u64 << k) - 1;
    let outside = ground.full_mask() & !profile;
    let mut masks = Vec::with_capacity((k + 1) << (n - k));
    for x in submasks_ascending(outside) {
        masks.push(x);
        masks.extend((0..k).map(|b| x | 1u64 << b));
    }
    Ok(Family::from_sorted(ground, masks))
}

/// `{F Δ R : F ⊆ [n], |F ∩ A| <= 1}` for a non-empty profile set `A` and a
/// twist `R ⊆ A`.
pub fn twisted(n: usize, profile: Subset, twist: Subset) -> Result<Family, Error> {
    let ground = GroundSet::new(n)?;
    ground.check(profile)?;
    ground.check(twist)?;
    if profile.is_empty() {
        return Err(Error::InvalidParams("profile set A must be non-empty".into()));
    }
    if !twist.is_subset_of(profile) {
        return Err(Error::TwistOutsideProfile);
    }
    let k = profile.len();
    check_size(n, k + 1, n - k)?;
    let outside = ground.full_mask() & !profile.bits();
    let singles: Vec<u64> = profile.coords().map(|c| 1u64 << (c - 1)).collect();
    let mut masks = Vec::with_capacity((k + 1) << (n - k));
    for x in submasks_ascending(outside) {
        masks.push(x ^ twist.bits());
        masks.extend(singles.iter().map(|&b| (x | b) ^ twist.bits()));
    }
    Ok(Family::from_raw(ground, masks))
}

/// All subsets of even size.
pub fn parity_family(n: usize) -> Result<Family, Error> {
    let ground = GroundSet::new(n)?;
    check_size(n, 1, n - 1)?;
    let masks = (0..=ground.full_mask()).filter(|m| m.count_ones() % 2 == 0).collect();
    Ok(Family::from_sorted(ground, masks))
}

/// All subsets containing every coordinate of `fixed`.
pub fn fixed_coords(n: usize, fixed: Subset) -> Result<Family, Error> {
    let ground = GroundSet::new(n)?;
    ground.check(fixed)?;
    if fixed.is_empty() {
        return Err(Error::InvalidParams("fixed coordinate set must be non-empty".into()));
    }
    check_size(n, 1, n - fixed.len())?;
    let outside = ground.full_mask() & !fixed.bits();
    let masks = submasks_ascending(outside).map(|x| x | fixed.bits()).collect();
    Ok(Family::from_sorted(ground, masks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::tests::fam;
    use crate::family::{
        disagreement_set, family_delta, is_down_closed, is_nontrivial, is_r_wise_t_agreeing,
        is_r_wise_t_union,
    };
    use crate::search::theorem_bound;

    fn set(n: usize, c: &[usize]) -> Subset {
        Subset::from_coords(GroundSet::new(n).unwrap(), c.iter().copied()).unwrap()
    }

    /// Filter over the whole cube, independent of the direct generator.
    fn brace_daykin_by_filter(n: usize, k: usize) -> Vec<u64> {
        (0..1u64 << n).filter(|m| (m & ((1 << k) - 1)).count_ones() <= 1).collect()
    }

    #[test]
    fn brace_daykin_examples() {
        let b = brace_daykin(5, 3, 1).unwrap();
        assert_eq!(b.len(), 10);
        assert_eq!(brace_daykin(4, 3, 1).unwrap(), fam(4, &[&[], &[1], &[2], &[3], &[4]]));
        assert_eq!(brace_daykin(3, 2, 1).unwrap().len(), 4);
        assert!(matches!(brace_daykin(3, 3, 1), Err(Error::GroundTooSmall { .. })));
        for n in 1..=9 {
            for k in 1..=n {
                let b = brace_daykin(n, k, 0).unwrap();
                let masks: Vec<u64> = b.members().iter().map(|s| s.bits()).collect();
                assert_eq!(masks, brace_daykin_by_filter(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn brace_daykin_properties_small_grid() {
        for r in 2..=3usize {
            for t in 1..=(1usize << r) - r - 1 {
                for n in (r + t).max(r + 1)..=8 {
                    let b = brace_daykin(n, r, t).unwrap();
                    assert_eq!(b.len(), theorem_bound(n, r, t).unwrap());
                    assert!(is_nontrivial(&b));
                    assert!(is_down_closed(&b));
                    assert!(is_r_wise_t_union(&b, r, t).unwrap().is_none());
                    assert!(is_r_wise_t_agreeing(&b, r, t).unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn brace_daykin_pairs_disagree_on_at_most_two_profile_coords() {
        let (n, k) = (7, 4);
        let b = brace_daykin(n, 3, 1).unwrap();
        let g = b.ground();
        let profile = (1u64 << k) - 1;
        for a in b.members() {
            for c in b.members() {
                let w = disagreement_set(&[*a, *c], g).unwrap();
                assert!((w.bits() & profile).count_ones() <= 2);
            }
        }
    }

    #[test]
    fn twisted_examples() {
        let a = set(5, &[2, 3, 4, 5]);
        let base = twisted(5, a, Subset::EMPTY).unwrap();
        let expected = Family::new(
            GroundSet::new(5).unwrap(),
            (0..32u64).filter(|m| (m & a.bits()).count_ones() <= 1).map(Subset),
        )
        .unwrap();
        assert_eq!(base, expected);

        let t = twisted(4, set(4, &[1, 2, 3, 4]), set(4, &[1, 2])).unwrap();
        assert_eq!(t, fam(4, &[&[1, 2], &[2], &[1], &[1, 2, 3], &[1, 2, 4]]));
        assert_eq!(t.len(), 5);

        let r = set(5, &[2, 4]);
        let tw = twisted(5, a, r).unwrap();
        assert_eq!(family_delta(&tw, r).unwrap(), base);
        assert!(is_nontrivial(&tw));
        assert!(is_r_wise_t_agreeing(&tw, 3, 1).unwrap().is_none());

        assert!(matches!(twisted(4, set(4, &[1, 2]), set(4, &[3])), Err(Error::TwistOutsideProfile)));
        assert!(twisted(4, Subset::EMPTY, Subset::EMPTY).is_err());
    }

    #[test]
    fn parity_examples() {
        let p3 = parity_family(3).unwrap();
        assert_eq!(p3, fam(3, &[&[], &[1, 2], &[1, 3], &[2, 3]]));
        assert!(is_nontrivial(&p3));
        assert!(is_r_wise_t_agreeing(&p3, 2, 1).unwrap().is_none());
        assert_eq!(p3.len(), 4);
        let p2 = parity_family(2).unwrap();
        assert_eq!(p2, fam(2, &[&[], &[1, 2]]));
        assert!(is_r_wise_t_agreeing(&p2, 2, 1).unwrap().is_some());
    }

    #[test]
    fn fixed_examples() {
        let f = fixed_coords(3, set(3, &[1])).unwrap();
        assert_eq!(f, fam(3, &[&[1], &[1, 2], &[1, 3], &[1, 2, 3]]));
        assert!(!is_nontrivial(&f));
        let f = fixed_coords(5, set(5, &[1, 2])).unwrap();
        assert_eq!(f.len(), 8);
        for r in 1..=5 {
            assert!(is_r_wise_t_agreeing(&f, r, 2).unwrap().is_none());
        }
        assert!(!is_nontrivial(&f));
        assert!(fixed_coords(3, Subset::EMPTY).is_err());
    }

    #[test]
    fn oversized_requests_are_refused() {
        assert!(brace_daykin(63, 2, 1).is_err());
        assert!(parity_family(40).is_err());
    }
}
