//! Families of subsets and the agreement/union predicate algebra.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::profile::Closure;
use crate::subset::{drop_bit, GroundSet, Subset};
use crate::Error;

/// A duplicate-free family of subsets of `[n]`, members sorted ascending by
/// mask value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    ground: GroundSet,
    members: Vec<Subset>,
}

impl Family {
    /// Validates, sorts and deduplicates `members`.
    pub fn new<I>(ground: GroundSet, members: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = Subset>,
    {
        let mut members = members.into_iter().map(|s| ground.check(s)).collect::<Result<Vec<_>, _>>()?;
        members.sort_unstable();
        members.dedup();
        Ok(Self { ground, members })
    }

    pub fn empty(ground: GroundSet) -> Self {
        Self { ground, members: Vec::new() }
    }

    /// All subsets of `[n]`.
    pub fn powerset(ground: GroundSet) -> Self {
        Self::from_raw(ground, (0..=ground.full_mask()).collect())
    }

    /// Builds a family from raw masks that are already valid for `ground`;
    /// sorts and deduplicates.
    pub(crate) fn from_raw(ground: GroundSet, mut masks: Vec<u64>) -> Self {
        debug_assert!(masks.iter().all(|&m| m & !ground.full_mask() == 0));
        masks.sort_unstable();
        masks.dedup();
        Self { ground, members: masks.into_iter().map(Subset).collect() }
    }

    /// Like [`Family::from_raw`] for input already in canonical order.
    pub(crate) fn from_sorted(ground: GroundSet, masks: Vec<u64>) -> Self {
        debug_assert!(masks.windows(2).all(|w| w[0] < w[1]));
        Self { ground, members: masks.into_iter().map(Subset).collect() }
    }

    #[inline]
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.ground.n()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub(crate) fn masks(&self) -> Vec<u64> {
        self.members.iter().map(|s| s.0).collect()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// Intersection of all members; `[n]` for the empty family.
    pub fn intersection(&self) -> Subset {
        Subset(self.members.iter().fold(self.ground.full_mask(), |acc, s| acc & s.0))
    }

    /// Union of all members; `∅` for the empty family.
    pub fn union(&self) -> Subset {
        Subset(self.members.iter().fold(0, |acc, s| acc | s.0))
    }

    /// Relabels coordinates: bit `i` of every member moves to bit `perm[i]`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<Family, Error> {
        let n = self.n();
        let mut check = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut check[p], true)) {
            return Err(Error::InvalidParams(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        let masks = self
            .members
            .iter()
            .map(|s| {
                let mut out = 0u64;
                let mut rest = s.0;
                while rest != 0 {
                    let b = rest.trailing_zeros() as usize;
                    out |= 1u64 << perm[b];
                    rest &= rest - 1;
                }
                out
            })
            .collect();
        Ok(Family::from_raw(self.ground, masks))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [", self.n())?;
        for (k, s) in self.members.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// A tuple of members together with its agreement profile; returned as the
/// certificate when a predicate fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleWitness {
    #[serde(with = "crate::format::coord_lists")]
    pub sets: Vec<Subset>,
    #[serde(with = "crate::format::coord_list")]
    pub and_mask: Subset,
    #[serde(with = "crate::format::coord_list")]
    pub or_mask: Subset,
    pub agreement_count: usize,
}

impl TupleWitness {
    pub fn new(sets: Vec<Subset>, ground: GroundSet) -> Result<Self, Error> {
        if sets.is_empty() {
            return Err(Error::EmptyTuple);
        }
        let and = sets.iter().fold(ground.full_mask(), |a, s| a & s.0);
        let or = sets.iter().fold(0, |a, s| a | s.0);
        Ok(TupleWitness {
            sets,
            and_mask: Subset(and),
            or_mask: Subset(or),
            agreement_count: agreement_count(and, or, ground.full_mask()),
        })
    }
}

#[inline]
pub(crate) fn agreement_count(and: u64, or: u64, full: u64) -> usize {
    ((and | !or) & full).count_ones() as usize
}

fn check_tuple(sets: &[Subset], ground: GroundSet) -> Result<(u64, u64), Error> {
    if sets.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let mut and = ground.full_mask();
    let mut or = 0;
    for &s in sets {
        ground.check(s)?;
        and &= s.0;
        or |= s.0;
    }
    Ok((and, or))
}

/// Coordinates on which all `sets` agree: `(∩ sets) ∪ ([n] \ ∪ sets)`.
pub fn agreement_mask(sets: &[Subset], ground: GroundSet) -> Result<Subset, Error> {
    let (and, or) = check_tuple(sets, ground)?;
    Ok(Subset((and | !or) & ground.full_mask()))
}

/// `W(sets) = (∪ sets) \ (∩ sets)`, the coordinates where the sets disagree.
pub fn disagreement_set(sets: &[Subset], ground: GroundSet) -> Result<Subset, Error> {
    let (and, or) = check_tuple(sets, ground)?;
    Ok(Subset(or & !and))
}

fn check_rt(fam: &Family, r: usize, t: usize) -> Result<(), Error> {
    if r == 0 {
        return Err(Error::InvalidParams("r must be at least 1".into()));
    }
    if t > fam.n() {
        return Err(Error::InvalidParams(format!("t = {t} exceeds n = {}", fam.n())));
    }
    Ok(())
}

/// Checks that every multiset of `r` members agrees on at least `t`
/// coordinates. Returns `Ok(None)` when the family qualifies and a violating
/// tuple (of at most `r` distinct members) otherwise.
pub fn is_r_wise_t_agreeing(fam: &Family, r: usize, t: usize) -> Result<Option<TupleWitness>, Error> {
    check_rt(fam, r, t)?;
    let full = fam.ground.full_mask();
    let masks = fam.masks();
    let (closure, hit) = Closure::run(&masks, r, true, |and, or| agreement_count(and, or, full) < t);
    Ok(hit.map(|h| witness(&closure.tuple(&h), fam.ground)))
}

/// Checks `|A_1 ∪ .. ∪ A_r| <= n - t` for all members `A_i`.
pub fn is_r_wise_t_union(fam: &Family, r: usize, t: usize) -> Result<Option<TupleWitness>, Error> {
    check_rt(fam, r, t)?;
    let limit = fam.n() - t;
    let masks = fam.masks();
    let (closure, hit) = Closure::run(&masks, r, false, |_, or| or.count_ones() as usize > limit);
    Ok(hit.map(|h| witness(&closure.tuple(&h), fam.ground)))
}

fn witness(masks: &[u64], ground: GroundSet) -> TupleWitness {
    TupleWitness::new(masks.iter().map(|&m| Subset(m)).collect(), ground)
        .expect("closure tuples are non-empty")
}

/// Largest `|W|` over all multisets of `r` members; 0 for the empty family.
pub fn max_disagreement(fam: &Family, r: usize) -> usize {
    let n = fam.n();
    let masks = fam.masks();
    let mut best = 0usize;
    Closure::run(&masks, r, true, |and, or| {
        best = best.max((or & !and).count_ones() as usize);
        best == n
    });
    best
}

/// Empty intersection and full union.
pub fn is_nontrivial(fam: &Family) -> bool {
    !fam.is_empty() && fam.intersection().is_empty() && fam.union() == fam.ground.full()
}

/// Closed under removing any single element (hence under taking subsets).
pub fn is_down_closed(fam: &Family) -> bool {
    fam.members.iter().all(|s| {
        let mut rest = s.0;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            if !fam.contains(Subset(s.0 ^ low)) {
                return false;
            }
            rest ^= low;
        }
        true
    })
}

/// `{F Δ R : F ∈ fam}`.
pub fn family_delta(fam: &Family, twist: Subset) -> Result<Family, Error> {
    fam.ground.check(twist)?;
    Ok(Family::from_raw(fam.ground, fam.members.iter().map(|s| s.0 ^ twist.0).collect()))
}

/// `{F \ {j} : F ∈ fam}` over `[n - 1]`, coordinates above `j` shifted down.
pub fn restrict_drop(fam: &Family, coord: usize) -> Result<Family, Error> {
    let bit = fam.ground.bit_of(coord)?;
    if fam.n() == 1 {
        return Err(Error::EmptyGround);
    }
    let ground = GroundSet::new(fam.n() - 1)?;
    Ok(Family::from_raw(ground, fam.members.iter().map(|s| drop_bit(s.0, bit)).collect()))
}

/// The link `F(i) = {F \ {i} : i ∈ F}` and colink `F(ī) = {F : i ∉ F}`.
///
/// Both are returned over the original ground set with coordinate `i` absent
/// from every member, so labels stay unchanged.
pub fn link_views(fam: &Family, coord: usize) -> Result<(Family, Family), Error> {
    let bit = 1u64 << fam.ground.bit_of(coord)?;
    let (with, without): (Vec<&Subset>, Vec<&Subset>) = fam.members.iter().partition(|s| s.0 & bit != 0);
    let link = with.into_iter().map(|s| s.0 ^ bit).collect();
    let colink = without.into_iter().map(|s| s.0).collect();
    Ok((Family::from_sorted(fam.ground, link), Family::from_sorted(fam.ground, colink)))
}
