//! Exact maximization of r-wise t-agreeing families.
//!
//! [`max_agreeing`] is a depth-first branch-and-bound over the `2^n`
//! candidate subsets; [`brute_force_oracle`] re-derives the same optimum by
//! exhaustive enumeration for tiny `n` using only the family predicates.
//! [`canonical_form`] reduces families modulo coordinate permutations and
//! flips, which [`verify_uniqueness`] uses to check that the maximum
//! non-trivial families form a single orbit.

mod bnb;
mod canon;
mod oracle;
mod uniqueness;

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::family::{is_nontrivial, is_r_wise_t_agreeing, Family};
use crate::subset::MAX_SEARCH_N;
use crate::Error;

pub use canon::{apply_signed_permutation, canonical_form, canonical_form_with_transform, MAX_CANON_N};
pub use oracle::brute_force_oracle;
pub use uniqueness::{verify_uniqueness, UniquenessOptions, UniquenessReport, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    pub require_nontrivial: bool,
    pub enumerate_all_maximum: bool,
    pub node_limit: Option<u64>,
    /// Worker threads; 1 gives a deterministic trace.
    pub jobs: usize,
}

impl SearchParams {
    pub fn new(n: usize, r: usize, t: usize) -> Self {
        SearchParams {
            n,
            r,
            t,
            require_nontrivial: true,
            enumerate_all_maximum: false,
            node_limit: None,
            jobs: 1,
        }
    }

    pub fn nontrivial(mut self, yes: bool) -> Self {
        self.require_nontrivial = yes;
        self
    }

    pub fn all_maximum(mut self, yes: bool) -> Self {
        self.enumerate_all_maximum = yes;
        self
    }

    pub fn node_limit(mut self, limit: Option<u64>) -> Self {
        self.node_limit = limit;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if self.n == 0 || self.n > MAX_SEARCH_N {
            return bad(format!("n = {} outside 1..={MAX_SEARCH_N}", self.n));
        }
        if self.r < 2 {
            return bad(format!("r = {} must be at least 2", self.r));
        }
        if self.t == 0 || self.t > self.n {
            return bad(format!("t = {} outside 1..=n", self.t));
        }
        if self.jobs == 0 {
            return bad("jobs must be at least 1".into());
        }
        if self.enumerate_all_maximum && self.n > MAX_CANON_N {
            return bad(format!(
                "enumerating all maximum families needs canonicalization, limited to n <= {MAX_CANON_N}"
            ));
        }
        Ok(())
    }

    pub fn theorem_range(&self) -> bool {
        theorem_range(self.n, self.r, self.t)
    }
}

/// `n > r >= 2` and `t <= 2^r - r - 1`.
pub fn theorem_range(n: usize, r: usize, t: usize) -> bool {
    if r < 2 || n <= r {
        return false;
    }
    let cap = if r >= 64 { u128::MAX } else { (1u128 << r) - r as u128 - 1 };
    (t as u128) <= cap
}

/// `(r + t + 1) 2^(n - r - t)`.
pub fn theorem_bound(n: usize, r: usize, t: usize) -> Result<usize, Error> {
    let k = r + t;
    if n < k {
        return Err(Error::BoundUndefined { n, needed: k });
    }
    1usize
        .checked_shl((n - k) as u32)
        .filter(|_| n - k < usize::BITS as usize)
        .and_then(|p| p.checked_mul(k + 1))
        .ok_or_else(|| Error::InvalidParams(format!("bound for n = {n} overflows")))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_explored: u64,
    pub prunes_by_bound: u64,
    /// Candidates dropped because adding them breaks agreement, plus nodes
    /// cut because non-triviality became unreachable.
    pub prunes_by_feasibility: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchStats {
    pub(crate) fn absorb(&mut self, other: &SearchStats) {
        self.nodes_explored += other.nodes_explored;
        self.prunes_by_bound += other.prunes_by_bound;
        self.prunes_by_feasibility += other.prunes_by_feasibility;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub params: SearchParams,
    /// Size of the largest qualifying family found; a lower bound only when
    /// `exact` is false.
    pub optimum: usize,
    /// `None` when no family qualifies (only possible with non-triviality).
    pub witness: Option<Family>,
    /// One canonical representative per equivalence class of maximum
    /// families, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_maximum_canonical: Option<Vec<Family>>,
    pub stats: SearchStats,
    pub exact: bool,
    pub theorem_range: bool,
    pub theorem_bound: Option<usize>,
}

/// Exact optimum by branch-and-bound.
pub fn max_agreeing(params: &SearchParams) -> Result<SearchResult, Error> {
    params.validate()?;
    let raw = bnb::run(params);
    finish(params, raw)
}

/// Raw outcome shared by both search routes.
pub(crate) struct RawOutcome {
    pub optimum: usize,
    pub witness: Option<Vec<u64>>,
    pub all_maximum: Option<Vec<Vec<u64>>>,
    pub stats: SearchStats,
    pub exact: bool,
}

pub(crate) fn finish(params: &SearchParams, raw: RawOutcome) -> Result<SearchResult, Error> {
    let ground = crate::GroundSet::new(params.n)?;
    let witness = raw.witness.map(|m| Family::from_raw(ground, m));
    if let Some(w) = &witness {
        recheck(w, params)?;
        if w.len() != raw.optimum {
            return Err(Error::InvalidWitness(format!(
                "witness has {} members, optimum {}",
                w.len(),
                raw.optimum
            )));
        }
    }
    let all_maximum_canonical = match raw.all_maximum {
        Some(list) => {
            let mut classes = Vec::new();
            for masks in list {
                let f = Family::from_raw(ground, masks);
                debug_assert!(recheck(&f, params).is_ok());
                classes.push(canonical_form(&f)?);
            }
            classes.sort_by(|a, b| a.members().cmp(b.members()));
            classes.dedup();
            Some(classes)
        }
        None => None,
    };
    Ok(SearchResult {
        params: params.clone(),
        optimum: raw.optimum,
        witness,
        all_maximum_canonical,
        stats: raw.stats,
        exact: raw.exact,
        theorem_range: params.theorem_range(),
        theorem_bound: theorem_bound(params.n, params.r, params.t).ok(),
    })
}

fn recheck(f: &Family, params: &SearchParams) -> Result<(), Error> {
    if let Some(w) = is_r_wise_t_agreeing(f, params.r, params.t)? {
        return Err(Error::InvalidWitness(format!("{f} violated by {:?}", w.sets)));
    }
    if params.require_nontrivial && !is_nontrivial(f) {
        return Err(Error::InvalidWitness(format!("{f} is trivial")));
    }
    Ok(())
}
