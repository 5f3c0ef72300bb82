//! Ground sets and subsets of `[n]` packed into a single machine word.
//!
//! Coordinates are 1-based at every public boundary (`1..=n`); bit `i - 1`
//! of a mask stores coordinate `i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Largest ground set accepted by the predicate algebra.
pub const MAX_ALGEBRA_N: usize = 63;

/// Largest ground set accepted by the exact search (the universe `2^n` must
/// be enumerable).
pub const MAX_SEARCH_N: usize = 24;

/// The coordinate set `[n] = {1, .., n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n == 0 || n > MAX_ALGEBRA_N {
            return Err(Error::InvalidGround(n));
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn n(self) -> usize {
        self.n
    }

    /// Mask with the low `n` bits set.
    #[inline]
    pub fn full_mask(self) -> u64 {
        (1u64 << self.n) - 1
    }

    #[inline]
    pub fn full(self) -> Subset {
        Subset(self.full_mask())
    }

    #[inline]
    pub fn contains(self, s: Subset) -> bool {
        s.0 & !self.full_mask() == 0
    }

    /// Complement within `[n]`.
    #[inline]
    pub fn complement(self, s: Subset) -> Subset {
        Subset(!s.0 & self.full_mask())
    }

    pub fn check(self, s: Subset) -> Result<Subset, Error> {
        if self.contains(s) {
            Ok(s)
        } else {
            Err(Error::SubsetOutOfRange { mask: s.0, n: self.n })
        }
    }

    /// Validates a 1-based coordinate and returns its bit position.
    pub fn bit_of(self, coord: usize) -> Result<u32, Error> {
        if coord == 0 || coord > self.n {
            return Err(Error::InvalidCoordinate { coord, n: self.n });
        }
        Ok((coord - 1) as u32)
    }

    /// Number of subsets of `[n]`, if it fits in a `usize`.
    pub fn universe_size(self) -> Option<usize> {
        1usize.checked_shl(self.n as u32)
    }
}

impl TryFrom<usize> for GroundSet {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self, Error> {
        GroundSet::new(n)
    }
}

impl From<GroundSet> for usize {
    fn from(g: GroundSet) -> usize {
        g.n
    }
}

/// A subset of `[n]` as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Builds a subset from 1-based coordinates, validated against `ground`.
    pub fn from_coords<I>(ground: GroundSet, coords: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut mask = 0u64;
        for c in coords {
            mask |= 1u64 << ground.bit_of(c)?;
        }
        Ok(Subset(mask))
    }

    /// 1-based coordinates in ascending order.
    pub fn coords(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let low = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(low + 1)
        })
    }

    #[inline]
    pub fn contains_coord(self, coord: usize) -> bool {
        (1..=64).contains(&coord) && self.0 >> (coord - 1) & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn symmetric_difference(self, other: Subset) -> Subset {
        Subset(self.0 ^ other.0)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, c) in self.coords().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// Removes bit position `bit` and shifts the higher bits down by one.
#[inline]
pub(crate) fn drop_bit(mask: u64, bit: u32) -> u64 {
    let low = (1u64 << bit) - 1;
    (mask & low) | ((mask >> 1) & !low)
}

/// Parses a comma-separated list of 1-based coordinates such as `1,2,4`.
///
/// Whitespace around items is ignored, an empty string is the empty set, and
/// ranges `a-b` are accepted. Repeated coordinates are rejected.
pub fn parse_coord_list(text: &str, ground: GroundSet) -> Result<Subset, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Subset::EMPTY);
    }
    let mut mask = 0u64;
    for item in text.split(',') {
        let item = item.trim();
        let (lo, hi) = match item.split_once('-') {
            Some((a, b)) => (parse_coord(a)?, parse_coord(b)?),
            None => {
                let c = parse_coord(item)?;
                (c, c)
            }
        };
        if lo > hi {
            return Err(Error::Parse(format!("empty coordinate range `{item}`")));
        }
        for c in lo..=hi {
            let bit = 1u64 << ground.bit_of(c)?;
            if mask & bit != 0 {
                return Err(Error::Parse(format!("coordinate {c} listed twice")));
            }
            mask |= bit;
        }
    }
    Ok(Subset(mask))
}

fn parse_coord(s: &str) -> Result<usize, Error> {
    s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("`{}` is not a coordinate", s.trim())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_bounds() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(64).is_err());
        assert_eq!(GroundSet::new(63).unwrap().full_mask(), u64::MAX >> 1);
        assert_eq!(GroundSet::new(3).unwrap().full_mask(), 0b111);
    }

    #[test]
    fn coords_are_one_based() {
        let g = GroundSet::new(5).unwrap();
        let s = Subset::from_coords(g, [1, 3, 5]).unwrap();
        assert_eq!(s.bits(), 0b10101);
        assert_eq!(s.coords().collect::<Vec<_>>(), vec![1, 3, 5]);
        assert_eq!(s.to_string(), "{1,3,5}");
        assert!(Subset::from_coords(g, [0]).is_err());
        assert!(Subset::from_coords(g, [6]).is_err());
    }

    #[test]
    fn drop_bit_reindexes() {
        assert_eq!(drop_bit(0b1011, 1), 0b101);
        assert_eq!(drop_bit(0b1, 0), 0);
        assert_eq!(drop_bit(0b110, 0), 0b11);
    }

    #[test]
    fn coord_lists() {
        let g = GroundSet::new(6).unwrap();
        assert_eq!(parse_coord_list("1,2,4", g).unwrap().bits(), 0b1011);
        assert_eq!(parse_coord_list(" 2 - 4 , 6", g).unwrap().bits(), 0b101110);
        assert_eq!(parse_coord_list("", g).unwrap(), Subset::EMPTY);
        assert!(parse_coord_list("1,1", g).is_err());
        assert!(parse_coord_list("7", g).is_err());
        assert!(parse_coord_list("x", g).is_err());
        assert!(parse_coord_list("4-2", g).is_err());
    }
}
