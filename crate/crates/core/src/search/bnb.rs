//! Depth-first branch-and-bound over candidate subsets in ascending mask
//! order.
//!
//! Each node carries the chosen members and the list of later candidates that
//! can still be added on their own. A candidate `d` stays addable after `c`
//! is chosen iff every tuple made of `d`, `c` and `min(r - 1, |chosen|) - 1`
//! other chosen members still agrees on `t` coordinates; since agreement is
//! antitone this keeps every `r`-multiset of the final family valid. The
//! `(AND, OR)` profiles of chosen sub-tuples of size `1..r` are cached per
//! depth.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use super::{RawOutcome, SearchParams, SearchStats};
use crate::family::agreement_count;

/// Candidate lists at most this long get the greedy clique-cover bound.
const COVER_LIMIT: usize = 256;

struct Shared {
    best: AtomicUsize,
    nodes: AtomicU64,
    aborted: AtomicBool,
    next_branch: AtomicUsize,
}

struct Worker<'a> {
    params: &'a SearchParams,
    shared: &'a Shared,
    full: u64,
    chosen: Vec<u64>,
    chosen_and: u64,
    chosen_or: u64,
    /// `profiles[k]` holds `(AND, OR)` of every chosen sub-tuple with `k + 1`
    /// members, for `k + 1 < r`.
    profiles: Vec<Vec<(u64, u64)>>,
    found: bool,
    best: usize,
    witness: Option<Vec<u64>>,
    all: Vec<Vec<u64>>,
    stats: SearchStats,
}

pub(super) fn run(params: &SearchParams) -> RawOutcome {
    let start = Instant::now();
    let n = params.n;
    let full = (1u64 << n) - 1;
    let candidates: Vec<u64> = (0..=full).collect();
    let shared = Shared {
        best: AtomicUsize::new(0),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        next_branch: AtomicUsize::new(0),
    };

    // Root node: the empty family.
    let mut root = Worker::new(params, &shared);
    let keep_going = root.enter(&candidates);

    let mut workers = Vec::new();
    if keep_going {
        if params.jobs == 1 {
            root.branches(&candidates);
        } else {
            workers = std::thread::scope(|scope| {
                let handles: Vec<_> = (0..params.jobs)
                    .map(|_| {
                        let shared = &shared;
                        let candidates = &candidates;
                        scope.spawn(move || {
                            let mut w = Worker::new(params, shared);
                            w.branches(candidates);
                            w
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
            });
        }
    }
    workers.insert(0, root);

    let mut stats = SearchStats::default();
    for w in &workers {
        stats.absorb(&w.stats);
    }
    let optimum = workers.iter().filter(|w| w.found).map(|w| w.best).max();
    let mut witness = None;
    let mut all = params.enumerate_all_maximum.then(Vec::new);
    if let Some(opt) = optimum {
        for w in workers.into_iter().filter(|w| w.found && w.best == opt) {
            if witness.is_none() {
                witness = w.witness;
            }
            if let Some(list) = all.as_mut() {
                list.extend(w.all);
            }
        }
    }
    stats.elapsed = start.elapsed();
    RawOutcome {
        optimum: optimum.unwrap_or(0),
        witness,
        all_maximum: all,
        stats,
        exact: !shared.aborted.load(Ordering::Relaxed),
    }
}

impl<'a> Worker<'a> {
    fn new(params: &'a SearchParams, shared: &'a Shared) -> Self {
        let full = (1u64 << params.n) - 1;
        Worker {
            params,
            shared,
            full,
            chosen: Vec::new(),
            chosen_and: full,
            chosen_or: 0,
            profiles: vec![Vec::new(); params.r - 1],
            found: false,
            best: 0,
            witness: None,
            all: Vec::new(),
            stats: SearchStats::default(),
        }
    }

    /// Pulls top-level branches (first chosen member) until none are left.
    fn branches(&mut self, candidates: &[u64]) {
        loop {
            let i = if self.params.jobs == 1 {
                let i = self.shared.next_branch.load(Ordering::Relaxed);
                self.shared.next_branch.store(i + 1, Ordering::Relaxed);
                i
            } else {
                self.shared.next_branch.fetch_add(1, Ordering::Relaxed)
            };
            if i >= candidates.len() || self.shared.aborted.load(Ordering::Relaxed) {
                return;
            }
            if self.cannot_beat(candidates.len() - i) {
                self.stats.prunes_by_bound += 1;
                return;
            }
            self.descend(candidates, i);
        }
    }

    fn cannot_beat(&self, bound: usize) -> bool {
        let best = self.shared.best.load(Ordering::Relaxed);
        if self.params.enumerate_all_maximum {
            bound < best
        } else {
            bound <= best
        }
    }

    /// Adds `addable[i]`, filters the later candidates, recurses, undoes.
    fn descend(&mut self, addable: &[u64], i: usize) {
        let c = addable[i];
        let r = self.params.r;
        let t = self.params.t;
        let size = self.chosen.len();

        let saved: Vec<usize> = self.profiles.iter().map(Vec::len).collect();
        for k in (1..r - 1).rev() {
            let extended: Vec<(u64, u64)> =
                self.profiles[k - 1][..saved[k - 1]].iter().map(|&(a, o)| (a & c, o | c)).collect();
            self.profiles[k].extend(extended);
        }
        if r > 1 {
            self.profiles[0].push((c, c));
        }
        let check_size = (r - 1).min(size + 1);
        let checks = &self.profiles[check_size - 1][saved[check_size - 1]..];

        let full = self.full;
        let mut dropped = 0u64;
        let next: Vec<u64> = addable[i + 1..]
            .iter()
            .copied()
            .filter(|&d| {
                let ok = checks.iter().all(|&(a, o)| agreement_count(a & d, o | d, full) >= t);
                dropped += (!ok) as u64;
                ok
            })
            .collect();
        self.stats.prunes_by_feasibility += dropped;

        let (old_and, old_or) = (self.chosen_and, self.chosen_or);
        self.chosen.push(c);
        self.chosen_and &= c;
        self.chosen_or |= c;

        if self.enter(&next) {
            for j in 0..next.len() {
                if self.shared.aborted.load(Ordering::Relaxed) {
                    break;
                }
                if self.cannot_beat(self.chosen.len() + next.len() - j) {
                    self.stats.prunes_by_bound += 1;
                    break;
                }
                self.descend(&next, j);
            }
        }

        self.chosen.pop();
        self.chosen_and = old_and;
        self.chosen_or = old_or;
        for (p, len) in self.profiles.iter_mut().zip(saved) {
            p.truncate(len);
        }
    }

    /// Visits the current node: counts it, records the family if it
    /// qualifies, and returns whether its children are worth exploring.
    fn enter(&mut self, addable: &[u64]) -> bool {
        self.stats.nodes_explored += 1;
        let total = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(limit) = self.params.node_limit {
            if total > limit {
                self.shared.aborted.store(true, Ordering::Relaxed);
                return false;
            }
        }

        let size = self.chosen.len();
        let qualifies = !self.params.require_nontrivial
            || (size > 0 && self.chosen_and == 0 && self.chosen_or == self.full);
        if qualifies {
            self.record(size);
        }
        if addable.is_empty() {
            return false;
        }

        if self.params.require_nontrivial {
            let (and, or) =
                addable.iter().fold((self.chosen_and, self.chosen_or), |(a, o), &d| (a & d, o | d));
            if and != 0 || or != self.full {
                self.stats.prunes_by_feasibility += 1;
                return false;
            }
        }

        let bound = size + self.cover_bound(addable);
        if self.cannot_beat(bound) {
            self.stats.prunes_by_bound += 1;
            return false;
        }
        true
    }

    fn record(&mut self, size: usize) {
        let all = self.params.enumerate_all_maximum;
        if !self.found || size > self.best {
            self.found = true;
            self.best = size;
            self.witness = Some(self.chosen.clone());
            self.all.clear();
            if all {
                self.all.push(self.chosen.clone());
            }
            self.shared.best.fetch_max(size, Ordering::Relaxed);
        } else if all && size == self.best {
            self.all.push(self.chosen.clone());
        }
    }

    /// Upper bound on how many of `addable` can join together: members of a
    /// group of pairwise-incompatible candidates exclude each other, so at
    /// most one per group survives.
    fn cover_bound(&self, addable: &[u64]) -> usize {
        let t = self.params.t;
        let full = self.full;
        let clash = |a: u64, b: u64| agreement_count(a & b, a | b, full) < t;
        if addable.len() <= COVER_LIMIT {
            let mut groups: Vec<Vec<u64>> = Vec::new();
            for &d in addable {
                match groups.iter_mut().find(|g| g.iter().all(|&x| clash(x, d))) {
                    Some(g) => g.push(d),
                    None => groups.push(vec![d]),
                }
            }
            groups.len()
        } else if t == 1 {
            // only complementary pairs clash
            let pairs = addable
                .iter()
                .filter(|&&d| d < (!d & full) && addable.binary_search(&(!d & full)).is_ok())
                .count();
            addable.len() - pairs
        } else {
            addable.len()
        }
    }
}
