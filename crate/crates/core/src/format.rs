//! JSON encodings of families.
//!
//! Two interchangeable forms are accepted and produced:
//!
//! ```text
//! {"n":3,"sets":[[],[1,2],[1,3],[2,3]]}
//! {"n":3,"masks":["0x0","0x3","0x5","0x6"]}
//! ```
//!
//! Coordinates are 1-based. Writers emit members in canonical (ascending
//! mask) order with ascending coordinates, so `write(parse(s)) == s` for any
//! canonical `s`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::family::Family;
use crate::subset::{GroundSet, Subset, MAX_ALGEBRA_N};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("field `{path}`: {message}")]
    Field { path: String, message: String },
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let mut message = e.to_string();
        if let Some(at) = message.rfind(" at line ") {
            message.truncate(at);
        }
        FormatError::Json { line: e.line(), column: e.column(), message }
    }
}

fn field(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Field { path: path.into(), message: message.into() }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    n: u64,
    #[serde(default)]
    sets: Option<Vec<Vec<u64>>>,
    #[serde(default)]
    masks: Option<Vec<String>>,
}

#[derive(Serialize)]
struct SetsOut {
    n: usize,
    sets: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct MasksOut {
    n: usize,
    masks: Vec<String>,
}

/// Output form for [`write_family`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Encoding {
    #[default]
    Sets,
    Hex,
}

/// Parses either JSON form. Duplicate members are rejected.
pub fn parse_family(text: &str) -> Result<Family, FormatError> {
    let raw: RawFamily = serde_json::from_str(text)?;
    from_raw(raw)
}

/// Parses the `"sets"` form only.
pub fn parse_sets_json(text: &str) -> Result<Family, FormatError> {
    let raw: RawFamily = serde_json::from_str(text)?;
    if raw.sets.is_none() {
        return Err(field("sets", "missing"));
    }
    from_raw(raw)
}

/// Parses the `"masks"` form only.
pub fn parse_hex_json(text: &str) -> Result<Family, FormatError> {
    let raw: RawFamily = serde_json::from_str(text)?;
    if raw.masks.is_none() {
        return Err(field("masks", "missing"));
    }
    from_raw(raw)
}

fn from_raw(raw: RawFamily) -> Result<Family, FormatError> {
    let n = usize::try_from(raw.n)
        .ok()
        .filter(|&n| (1..=MAX_ALGEBRA_N).contains(&n))
        .ok_or_else(|| field("n", format!("{} outside 1..={MAX_ALGEBRA_N}", raw.n)))?;
    let ground = GroundSet::new(n).map_err(|e| field("n", e.to_string()))?;
    let (kind, masks) = match (raw.sets, raw.masks) {
        (Some(_), Some(_)) => return Err(field("sets", "both `sets` and `masks` given")),
        (None, None) => return Err(field("sets", "one of `sets` or `masks` is required")),
        (Some(sets), None) => (
            "sets",
            sets.iter()
                .enumerate()
                .map(|(i, c)| decode_coords(c, n).map_err(|m| field(format!("sets[{i}]"), m)))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        (None, Some(hex)) => (
            "masks",
            hex.iter()
                .enumerate()
                .map(|(i, s)| decode_hex(s, ground).map_err(|m| field(format!("masks[{i}]"), m)))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let mut order: Vec<usize> = (0..masks.len()).collect();
    order.sort_by_key(|&i| (masks[i], i));
    for w in order.windows(2) {
        if masks[w[0]] == masks[w[1]] {
            return Err(field(format!("{kind}[{}]", w[1]), format!("duplicate of entry {}", w[0])));
        }
    }
    Family::new(ground, masks.into_iter().map(Subset)).map_err(|e| field(kind, e.to_string()))
}

fn decode_coords(coords: &[u64], n: usize) -> Result<u64, String> {
    let mut mask = 0u64;
    for &c in coords {
        if c == 0 || c > n as u64 {
            return Err(format!("coordinate {c} outside 1..={n}"));
        }
        let bit = 1u64 << (c - 1);
        if mask & bit != 0 {
            return Err(format!("coordinate {c} repeated"));
        }
        mask |= bit;
    }
    Ok(mask)
}

fn decode_hex(s: &str, ground: GroundSet) -> Result<u64, String> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .ok_or_else(|| format!("`{s}` lacks the 0x prefix"))?;
    if digits.is_empty() || digits.len() > 16 || !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(format!("`{s}` is not a 64-bit hex mask"));
    }
    let mask = u64::from_str_radix(digits, 16).map_err(|e| e.to_string())?;
    if !ground.contains(Subset(mask)) {
        return Err(format!("mask {s} has bits outside [{}]", ground.n()));
    }
    Ok(mask)
}

pub fn sets_of(fam: &Family) -> Vec<Vec<usize>> {
    fam.members().iter().map(|s| s.coords().collect()).collect()
}

pub fn hex_of(fam: &Family) -> Vec<String> {
    fam.members().iter().map(|s| format!("{:#x}", s.0)).collect()
}

/// Compact single-line JSON, no trailing newline.
pub fn write_family(fam: &Family, encoding: Encoding) -> String {
    match encoding {
        Encoding::Sets => serde_json::to_string(&SetsOut { n: fam.n(), sets: sets_of(fam) }),
        Encoding::Hex => serde_json::to_string(&MasksOut { n: fam.n(), masks: hex_of(fam) }),
    }
    .expect("family serialization cannot fail")
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        SetsOut { n: self.n(), sets: sets_of(self) }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawFamily::deserialize(de)?;
        from_raw(raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a [`Subset`] as an ascending list of 1-based coordinates.
pub mod coord_list {
    use super::*;

    pub fn serialize<S: Serializer>(s: &Subset, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(s.coords())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Subset, D::Error> {
        let coords = Vec::<u64>::deserialize(de)?;
        decode_coords(&coords, MAX_ALGEBRA_N).map(Subset).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of subsets.
pub mod coord_lists {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Subset], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(|s| s.coords().collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Subset>, D::Error> {
        let lists = Vec::<Vec<u64>>::deserialize(de)?;
        lists
            .iter()
            .map(|c| decode_coords(c, MAX_ALGEBRA_N).map(Subset))
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}
