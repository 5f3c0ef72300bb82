//! Exhaustive verification oracle.
//!
//! For `n <= 4` every family of subsets (all `2^(2^n)` of them) is built and
//! tested with the family predicates. For `n = 5` a plain DFS adds candidates
//! in ascending order, accepting one only if a naive enumeration of every
//! multiset through it passes; there is no bounding of any kind.

use std::time::Instant;

use super::{finish, RawOutcome, SearchParams, SearchResult, SearchStats};
use crate::family::{is_nontrivial, is_r_wise_t_agreeing, Family};
use crate::subset::GroundSet;
use crate::Error;

pub const MAX_SWEEP_N: usize = 4;
pub const MAX_DFS_N: usize = 5;

struct Tally {
    enumerate: bool,
    best: Option<usize>,
    witness: Option<Vec<u64>>,
    all: Vec<Vec<u64>>,
}

impl Tally {
    fn offer(&mut self, members: &[u64]) {
        let size = members.len();
        match self.best {
            Some(b) if size < b => {}
            Some(b) if size == b => {
                if self.enumerate {
                    self.all.push(members.to_vec());
                }
            }
            _ => {
                self.best = Some(size);
                self.witness = Some(members.to_vec());
                self.all.clear();
                if self.enumerate {
                    self.all.push(members.to_vec());
                }
            }
        }
    }
}

pub fn brute_force_oracle(params: &SearchParams) -> Result<SearchResult, Error> {
    params.validate()?;
    if params.n > MAX_DFS_N {
        return Err(Error::OracleTooLarge(params.n));
    }
    let start = Instant::now();
    let mut tally =
        Tally { enumerate: params.enumerate_all_maximum, best: None, witness: None, all: Vec::new() };
    let mut stats = SearchStats::default();
    let exact = if params.n <= MAX_SWEEP_N {
        sweep(params, &mut tally, &mut stats)?
    } else {
        let mut chosen = Vec::new();
        dfs(params, 0, &mut chosen, &mut tally, &mut stats)
    };
    stats.elapsed = start.elapsed();
    let raw = RawOutcome {
        optimum: tally.best.unwrap_or(0),
        witness: tally.witness,
        all_maximum: params.enumerate_all_maximum.then_some(tally.all),
        stats,
        exact,
    };
    finish(params, raw)
}

fn over_limit(params: &SearchParams, stats: &SearchStats) -> bool {
    params.node_limit.is_some_and(|l| stats.nodes_explored > l)
}

fn sweep(params: &SearchParams, tally: &mut Tally, stats: &mut SearchStats) -> Result<bool, Error> {
    let ground = GroundSet::new(params.n)?;
    let universe = 1u64 << params.n;
    for code in 0u64..1u64 << universe {
        stats.nodes_explored += 1;
        if over_limit(params, stats) {
            return Ok(false);
        }
        let members: Vec<u64> = (0..universe).filter(|m| code >> m & 1 == 1).collect();
        let fam = Family::new(ground, members.iter().map(|&m| crate::Subset(m)))?;
        if is_r_wise_t_agreeing(&fam, params.r, params.t)?.is_some() {
            stats.prunes_by_feasibility += 1;
            continue;
        }
        if params.require_nontrivial && !is_nontrivial(&fam) {
            continue;
        }
        tally.offer(&members);
    }
    Ok(true)
}

/// Agreement of a tuple, one coordinate at a time.
fn agreement(sets: &[u64], n: usize) -> usize {
    (0..n)
        .filter(|&b| {
            let inside = sets.iter().filter(|&&s| s >> b & 1 == 1).count();
            inside == 0 || inside == sets.len()
        })
        .count()
}

/// Every ordered `r`-tuple over `chosen ∪ {c}` whose first entry is `c`.
fn accepts(chosen: &[u64], c: u64, r: usize, t: usize, n: usize) -> bool {
    let mut pool = chosen.to_vec();
    pool.push(c);
    let mut idx = vec![0usize; r - 1];
    let mut tuple = vec![0u64; r];
    tuple[0] = c;
    loop {
        for (slot, &i) in tuple[1..].iter_mut().zip(&idx) {
            *slot = pool[i];
        }
        if agreement(&tuple, n) < t {
            return false;
        }
        let mut k = 0;
        while k < idx.len() && idx[k] == pool.len() - 1 {
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            return true;
        }
        idx[k] += 1;
    }
}

fn dfs(
    params: &SearchParams,
    from: u64,
    chosen: &mut Vec<u64>,
    tally: &mut Tally,
    stats: &mut SearchStats,
) -> bool {
    stats.nodes_explored += 1;
    if over_limit(params, stats) {
        return false;
    }
    let full = (1u64 << params.n) - 1;
    let and = chosen.iter().fold(full, |a, &s| a & s);
    let or = chosen.iter().fold(0, |a, &s| a | s);
    if !params.require_nontrivial || (!chosen.is_empty() && and == 0 && or == full) {
        tally.offer(chosen);
    }
    for c in from..=full {
        if !accepts(chosen, c, params.r, params.t, params.n) {
            stats.prunes_by_feasibility += 1;
            continue;
        }
        chosen.push(c);
        let complete = dfs(params, c + 1, chosen, tally, stats);
        chosen.pop();
        if !complete {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        let r = brute_force_oracle(&SearchParams::new(3, 2, 1)).unwrap();
        assert_eq!(r.optimum, 4);
        assert!(r.exact);
        let r = brute_force_oracle(&SearchParams::new(3, 2, 3)).unwrap();
        assert_eq!(r.optimum, 0);
        assert!(r.witness.is_none());
        let r = brute_force_oracle(&SearchParams::new(4, 3, 1).nontrivial(false)).unwrap();
        assert_eq!(r.optimum, 8);
    }

    #[test]
    fn oracle_refuses_large_n() {
        assert!(matches!(brute_force_oracle(&SearchParams::new(6, 2, 1)), Err(Error::OracleTooLarge(6))));
    }

    #[test]
    fn dfs_route_matches_sweep_on_shared_sizes() {
        // the n = 5 DFS code path, exercised at n <= 4 against the sweep
        for (n, r, t) in [(3, 2, 1), (4, 3, 1), (4, 2, 2), (4, 3, 2)] {
            for nontrivial in [true, false] {
                let p = SearchParams::new(n, r, t).nontrivial(nontrivial);
                let swept = brute_force_oracle(&p).unwrap().optimum;
                let mut tally = Tally { enumerate: false, best: None, witness: None, all: vec![] };
                let mut stats = SearchStats::default();
                assert!(dfs(&p, 0, &mut Vec::new(), &mut tally, &mut stats));
                assert_eq!(tally.best.unwrap_or(0), swept, "{n} {r} {t} {nontrivial}");
            }
        }
    }

    #[test]
    fn node_limit_applies() {
        let r = brute_force_oracle(&SearchParams::new(4, 2, 1).node_limit(Some(100))).unwrap();
        assert!(!r.exact);
    }
}
