//! The squashing compression `S_i` and the sequential squashing procedure.
//!
//! `S_i` replaces the link/colink pair `(F(i), F(ī))` by
//! `(F(i) ∩ F(ī), F(i) ∪ F(ī))`: a member containing `i` falls to `F \ {i}`
//! whenever that slot is vacant.

use serde::{Deserialize, Serialize};

use crate::family::{is_down_closed, is_nontrivial, restrict_drop, Family};
use crate::Error;

/// `S_i(fam)` for a 1-based coordinate `i`.
pub fn squash_at(fam: &Family, coord: usize) -> Result<Family, Error> {
    let bit = 1u64 << fam.ground().bit_of(coord)?;
    Ok(squash_bit(fam, bit))
}

fn squash_bit(fam: &Family, bit: u64) -> Family {
    let masks = fam
        .members()
        .iter()
        .map(|s| {
            let m = s.bits();
            if m & bit != 0 && !fam.contains(crate::Subset(m ^ bit)) {
                m ^ bit
            } else {
                m
            }
        })
        .collect();
    Family::from_raw(fam.ground(), masks)
}

/// True when every member containing `coord` also has its `coord`-removed
/// version in the family.
pub fn is_down_closed_at(fam: &Family, coord: usize) -> Result<bool, Error> {
    let bit = 1u64 << fam.ground().bit_of(coord)?;
    Ok(fam.members().iter().all(|s| s.bits() & bit == 0 || fam.contains(crate::Subset(s.bits() ^ bit))))
}

/// Stable 64-bit FNV-1a digest of a family: `n` as one byte followed by each
/// member mask as 8 little-endian bytes, in canonical order.
pub fn family_digest(fam: &Family) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut eat = |b: u8| {
        h ^= b as u64;
        h = h.wrapping_mul(PRIME);
    };
    eat(fam.n() as u8);
    for s in fam.members() {
        for b in s.bits().to_le_bytes() {
            eat(b);
        }
    }
    h
}

mod hex_digest {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &u64, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format!("{d:#018x}"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<u64, D::Error> {
        let s = String::deserialize(de)?;
        let digits = s
            .strip_prefix("0x")
            .filter(|d| !d.is_empty() && d.len() <= 16 && d.bytes().all(|b| b.is_ascii_hexdigit()))
            .ok_or_else(|| serde::de::Error::custom(format!("bad digest `{s}`")))?;
        u64::from_str_radix(digits, 16).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquashStep {
    /// Coordinate squashed at this step; 0 denotes the input family.
    pub j: usize,
    #[serde(with = "hex_digest")]
    pub digest: u64,
    pub nontrivial: bool,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SquashOutcome {
    /// Every step kept the family non-trivial; the result is down-closed.
    Stayed,
    /// `S_j` of a non-trivial family was trivial.
    Lost { j: usize },
    /// The input was already trivial; no step was run.
    TrivialAtEntry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquashTrace {
    pub entry: SquashStep,
    pub steps: Vec<SquashStep>,
    pub outcome: SquashOutcome,
}

impl SquashTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serialization cannot fail")
    }

    /// Parses a trace and checks its internal consistency (constant size,
    /// steps in ascending coordinate order, outcome matching the flags).
    pub fn from_json(text: &str) -> Result<Self, crate::FormatError> {
        let trace: SquashTrace = serde_json::from_str(text)?;
        let bad = |m: &str| crate::FormatError::Field { path: "steps".into(), message: m.into() };
        if trace.entry.j != 0 {
            return Err(bad("entry step must have j = 0"));
        }
        if trace.steps.iter().any(|s| s.size != trace.entry.size) {
            return Err(bad("size changes along the trace"));
        }
        if trace.steps.iter().enumerate().any(|(k, s)| s.j != k + 1) {
            return Err(bad("steps must cover coordinates 1, 2, .. in order"));
        }
        let flags_ok = match trace.outcome {
            SquashOutcome::TrivialAtEntry => !trace.entry.nontrivial && trace.steps.is_empty(),
            SquashOutcome::Stayed => trace.entry.nontrivial && trace.steps.iter().all(|s| s.nontrivial),
            SquashOutcome::Lost { j } => {
                trace.entry.nontrivial
                    && trace.steps.last().map(|s| (s.j, s.nontrivial)) == Some((j, false))
                    && trace.steps[..trace.steps.len() - 1].iter().all(|s| s.nontrivial)
            }
        };
        if !flags_ok {
            return Err(bad("outcome inconsistent with non-triviality flags"));
        }
        Ok(trace)
    }
}

fn step(j: usize, fam: &Family, keep: bool) -> SquashStep {
    SquashStep {
        j,
        digest: family_digest(fam),
        nontrivial: is_nontrivial(fam),
        size: fam.len(),
        family: keep.then(|| fam.clone()),
    }
}

/// Applies `S_1, S_2, .., S_n` in order, stopping at the first step that
/// turns a non-trivial family trivial. Returns the last family reached.
///
/// When every step stays non-trivial the result is checked to be
/// down-closed; a failure is reported as [`Error::NotDownClosed`] carrying
/// the offending family.
pub fn squash_all(fam: &Family, keep_families: bool) -> Result<(Family, SquashTrace), Error> {
    let entry = step(0, fam, keep_families);
    if !entry.nontrivial {
        let trace = SquashTrace { entry, steps: Vec::new(), outcome: SquashOutcome::TrivialAtEntry };
        return Ok((fam.clone(), trace));
    }
    let mut cur = fam.clone();
    let mut steps = Vec::with_capacity(fam.n());
    for j in 1..=fam.n() {
        cur = squash_bit(&cur, 1u64 << (j - 1));
        let s = step(j, &cur, keep_families);
        debug_assert_eq!(s.size, entry.size);
        let lost = !s.nontrivial;
        steps.push(s);
        if lost {
            return Ok((cur, SquashTrace { entry, steps, outcome: SquashOutcome::Lost { j } }));
        }
    }
    if !is_down_closed(&cur) {
        return Err(Error::NotDownClosed(Box::new(cur)));
    }
    Ok((cur, SquashTrace { entry, steps, outcome: SquashOutcome::Stayed }))
}

/// At a triviality-loss step `S_j(F)` has no member containing `j` and
/// coincides with `F_j`; returns `F_j` over `[n - 1]`, which has `|F|`
/// members.
pub fn triviality_loss_projection(fam: &Family, coord: usize) -> Result<Family, Error> {
    let squashed = squash_at(fam, coord)?;
    if !is_nontrivial(fam) || is_nontrivial(&squashed) {
        return Err(Error::NotTrivialityLoss(coord));
    }
    let projected = restrict_drop(fam, coord)?;
    assert_eq!(projected.len(), fam.len(), "projection collided at a triviality-loss step");
    Ok(projected)
}
