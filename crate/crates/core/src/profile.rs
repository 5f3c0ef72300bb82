//! Closure of `(AND, OR)` profiles over multisets of at most `r` members.
//!
//! Agreement only depends on the pair `(AND, OR)` of a tuple, and adding a set
//! can only shrink the agreement mask. Every multiset of size `r` therefore has
//! the profile of some set of at most `r` distinct members, and a profile that
//! was already reached with fewer members dominates any later occurrence.
//! Deduplicating globally keeps the closure at most `3^n` states instead of
//! `C(|F|, r)` tuples.

use std::collections::HashSet;

const ROOT: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct Node {
    and: u64,
    or: u64,
    parent: u32,
    member: u32,
}

pub(crate) struct Closure<'a> {
    members: &'a [u64],
    layers: Vec<Vec<Node>>,
}

/// Where a visitor stopped the closure.
pub(crate) struct Hit {
    layer: usize,
    index: usize,
}

impl<'a> Closure<'a> {
    /// Expands profiles level by level up to `min(r, |members|)` sets and
    /// calls `stop(and, or)` on every new profile; returns the first profile
    /// for which it answered `true`. With `track_and == false` only the OR is
    /// kept, which is all the union predicate needs.
    pub(crate) fn run(
        members: &'a [u64],
        r: usize,
        track_and: bool,
        mut stop: impl FnMut(u64, u64) -> bool,
    ) -> (Self, Option<Hit>) {
        let mut closure = Closure { members, layers: Vec::new() };
        let depth = r.min(members.len());
        if depth == 0 {
            return (closure, None);
        }
        let mut seen: HashSet<(u64, u64)> = HashSet::new();
        let key = |and: u64, or: u64| if track_and { (and, or) } else { (0, or) };

        let mut first = Vec::with_capacity(members.len());
        for (idx, &m) in members.iter().enumerate() {
            if !seen.insert(key(m, m)) {
                continue;
            }
            first.push(Node { and: m, or: m, parent: ROOT, member: idx as u32 });
            if stop(m, m) {
                let index = first.len() - 1;
                closure.layers.push(first);
                return (closure, Some(Hit { layer: 0, index }));
            }
        }
        closure.layers.push(first);

        for level in 1..depth {
            let mut next = Vec::new();
            let prev = &closure.layers[level - 1];
            let mut hit = None;
            'outer: for (pi, node) in prev.iter().enumerate() {
                for (idx, &m) in members.iter().enumerate() {
                    let and = node.and & m;
                    let or = node.or | m;
                    if !seen.insert(key(and, or)) {
                        continue;
                    }
                    next.push(Node { and, or, parent: pi as u32, member: idx as u32 });
                    if stop(and, or) {
                        hit = Some(next.len() - 1);
                        break 'outer;
                    }
                }
            }
            let empty = next.is_empty();
            closure.layers.push(next);
            if let Some(index) = hit {
                return (closure, Some(Hit { layer: level, index }));
            }
            if empty {
                break;
            }
        }
        (closure, None)
    }

    /// Members whose profile is the one at `hit`, in the order they were added.
    pub(crate) fn tuple(&self, hit: &Hit) -> Vec<u64> {
        let mut out = Vec::new();
        let mut layer = hit.layer;
        let mut index = hit.index;
        loop {
            let node = self.layers[layer][index];
            out.push(self.members[node.member as usize]);
            if node.parent == ROOT {
                break;
            }
            index = node.parent as usize;
            layer -= 1;
        }
        out.reverse();
        out
    }
}
