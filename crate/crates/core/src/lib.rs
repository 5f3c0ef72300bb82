//! Exact search and verification for r-wise t-agreeing families of subsets of
//! `[n]`.
//!
//! A family is *r-wise t-agreeing* when any `r` of its members (repeats
//! allowed) agree on at least `t` coordinates, that is, for at least `t`
//! coordinates they either all contain it or all avoid it. The crate provides
//! the predicate algebra over bitmask families, the squashing compression and
//! its sequential driver, the extremal constructions, and an exact
//! branch-and-bound maximizer with an exhaustive oracle and hyperoctahedral
//! canonicalization for checking uniqueness of the extremal families.

pub mod constructions;
pub mod family;
pub mod format;
pub mod search;
pub mod squash;
pub mod subset;

mod profile;

pub use family::{
    agreement_mask, disagreement_set, family_delta, is_down_closed, is_nontrivial, is_r_wise_t_agreeing,
    is_r_wise_t_union, link_views, max_disagreement, restrict_drop, Family, TupleWitness,
};
pub use format::FormatError;
pub use subset::{parse_coord_list, GroundSet, Subset, MAX_ALGEBRA_N, MAX_SEARCH_N};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set size {0} outside 1..=63")]
    InvalidGround(usize),
    #[error("subset mask {mask:#x} has bits outside [{n}]")]
    SubsetOutOfRange { mask: u64, n: usize },
    #[error("coordinate {coord} outside 1..={n}")]
    InvalidCoordinate { coord: usize, n: usize },
    #[error("empty tuple")]
    EmptyTuple,
    #[error("ground set would be empty")]
    EmptyGround,
    #[error("ground set too small: n = {n} < r + t = {needed}")]
    GroundTooSmall { n: usize, needed: usize },
    #[error("exponent negative, bound undefined here (n = {n} < r + t = {needed})")]
    BoundUndefined { n: usize, needed: usize },
    #[error("twist set must lie inside A")]
    TwistOutsideProfile,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not a triviality-loss step at coordinate {0}")]
    NotTrivialityLoss(usize),
    #[error("squashed family not down-closed: {0}")]
    NotDownClosed(Box<Family>),
    #[error("group too large for brute-force canonicalization (n = {0} > 8)")]
    GroupTooLarge(usize),
    #[error("oracle refuses n = {0}: exhaustive sweep only supported for n <= 5")]
    OracleTooLarge(usize),
    #[error("search produced an invalid witness: {0}")]
    InvalidWitness(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Format(#[from] FormatError),
}
