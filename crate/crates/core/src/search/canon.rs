//! Canonical forms under the hyperoctahedral group (coordinate permutations
//! composed with coordinate flips `F ↦ F Δ R`).
//!
//! The canonical form is the image whose sorted mask list is lexicographically
//! smallest. The smallest possible first entry is `∅`, reached exactly by the
//! flips `R` that are members of the permuted family, so only those flips
//! need to be tried.

use crate::family::Family;
use crate::subset::Subset;
use crate::Error;

pub const MAX_CANON_N: usize = 8;

/// Applies `F ↦ π(F) Δ flip`, where bit `i` moves to bit `perm[i]`.
pub fn apply_signed_permutation(fam: &Family, perm: &[usize], flip: Subset) -> Result<Family, Error> {
    let permuted = fam.permute_coordinates(perm)?;
    crate::family::family_delta(&permuted, flip)
}

pub fn canonical_form(fam: &Family) -> Result<Family, Error> {
    canonical_form_with_transform(fam).map(|(f, _, _)| f)
}

/// Canonical form together with a permutation and flip that produce it from
/// `fam` via [`apply_signed_permutation`].
pub fn canonical_form_with_transform(fam: &Family) -> Result<(Family, Vec<usize>, Subset), Error> {
    let n = fam.n();
    if n > MAX_CANON_N {
        return Err(Error::GroupTooLarge(n));
    }
    let identity: Vec<usize> = (0..n).collect();
    if fam.is_empty() {
        return Ok((fam.clone(), identity, Subset::EMPTY));
    }
    let masks: Vec<u64> = fam.members().iter().map(|s| s.bits()).collect();
    let mut best: Option<(Vec<u64>, Vec<usize>, u64)> = None;
    let mut image = vec![0u64; masks.len()];
    let mut candidate = vec![0u64; masks.len()];
    let mut table = vec![0u64; 1 << n];

    let mut perm = identity.clone();
    loop {
        for (m, slot) in table.iter_mut().enumerate() {
            *slot = (0..n).filter(|&b| m >> b & 1 == 1).fold(0, |acc, b| acc | 1u64 << perm[b]);
        }
        for (dst, &m) in image.iter_mut().zip(&masks) {
            *dst = table[m as usize];
        }
        for &flip in &image {
            for (dst, &m) in candidate.iter_mut().zip(&image) {
                *dst = m ^ flip;
            }
            candidate.sort_unstable();
            if best.as_ref().is_none_or(|(b, _, _)| candidate < *b) {
                best = Some((candidate.clone(), perm.clone(), flip));
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (sorted, perm, flip) = best.expect("non-empty family has an image");
    Ok((Family::from_sorted(fam.ground(), sorted), perm, Subset(flip)))
}

/// Lexicographic successor; false once the last permutation is reached.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("pivot has a larger element to its right");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{brace_daykin, parity_family, twisted};
    use crate::family::tests::fam;
    use crate::family::{family_delta, is_nontrivial, is_r_wise_t_agreeing};
    use crate::subset::GroundSet;
    use proptest::prelude::*;

    #[test]
    fn permutation_count() {
        let mut p: Vec<usize> = (0..5).collect();
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 120);
    }

    #[test]
    fn all_twists_share_one_class() {
        let g = GroundSet::new(5).unwrap();
        let expected = canonical_form(&brace_daykin(5, 3, 1).unwrap()).unwrap();
        let mut variants = 0;
        for a in (0u64..32).filter(|m| m.count_ones() == 4) {
            let mut r = 0u64;
            loop {
                let f = twisted(5, Subset(a), Subset(r)).unwrap();
                assert_eq!(canonical_form(&f).unwrap(), expected);
                variants += 1;
                if r == a {
                    break;
                }
                r = (r.wrapping_sub(a)) & a;
            }
        }
        assert_eq!(variants, 80);
        assert!(g.contains(expected.members()[0]));
        assert_eq!(expected.members()[0], Subset::EMPTY);
    }

    #[test]
    fn distinguishes_inequivalent_families() {
        let a = canonical_form(&brace_daykin(4, 2, 1).unwrap()).unwrap();
        let b = canonical_form(&parity_family(4).unwrap()).unwrap();
        assert_eq!(a.len(), 8);
        assert_ne!(a, b);
        let path = fam(3, &[&[], &[1], &[1, 2]]);
        let star = fam(3, &[&[], &[1], &[2]]);
        // flipping coordinate 1 maps one onto the other
        assert_eq!(canonical_form(&path).unwrap(), canonical_form(&star).unwrap());
        let antipodal = fam(3, &[&[], &[1, 2, 3]]);
        assert_ne!(canonical_form(&antipodal).unwrap(), canonical_form(&fam(3, &[&[], &[1]])).unwrap());
    }

    #[test]
    fn refuses_large_ground() {
        let f = fam(9, &[&[1]]);
        assert!(matches!(canonical_form(&f), Err(Error::GroupTooLarge(9))));
    }

    fn arb_family() -> impl Strategy<Value = Family> {
        (1usize..=5).prop_flat_map(|n| {
            let g = GroundSet::new(n).unwrap();
            prop::collection::vec(0..=g.full_mask(), 0..10)
                .prop_map(move |m| Family::new(g, m.into_iter().map(Subset)).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn canonicalization_soundness(f in arb_family(), flip in any::<u64>(), rot in 0usize..5) {
            let flip = Subset(flip & f.ground().full_mask());
            let (c, perm, r) = canonical_form_with_transform(&f).unwrap();
            prop_assert_eq!(&apply_signed_permutation(&f, &perm, r).unwrap(), &c);
            prop_assert_eq!(&canonical_form(&c).unwrap(), &c);
            prop_assert_eq!(&canonical_form(&family_delta(&f, flip).unwrap()).unwrap(), &c);
            let n = f.n();
            let p: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
            prop_assert_eq!(&canonical_form(&f.permute_coordinates(&p).unwrap()).unwrap(), &c);
            prop_assert_eq!(c.len(), f.len());
            prop_assert_eq!(is_nontrivial(&c), is_nontrivial(&f));
            for t in 1..=n.min(2) {
                prop_assert_eq!(
                    is_r_wise_t_agreeing(&c, 3, t).unwrap().is_none(),
                    is_r_wise_t_agreeing(&f, 3, t).unwrap().is_none()
                );
            }
        }
    }
}
