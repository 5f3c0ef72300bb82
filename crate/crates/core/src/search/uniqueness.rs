//! Computational check that the maximum non-trivial r-wise t-agreeing
//! families on `[n]` are exactly the twisted Brace–Daykin families, i.e. a
//! single hyperoctahedral orbit.

use serde::{Deserialize, Serialize};

use super::{canon::MAX_CANON_N, canonical_form, max_agreeing, theorem_bound, SearchParams, SearchStats};
use crate::constructions::brace_daykin;
use crate::family::Family;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Default)]
pub struct UniquenessOptions {
    pub jobs: usize,
    pub node_limit: Option<u64>,
    /// Also compute the optimum without the non-triviality requirement.
    pub explore_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    pub bound: usize,
    pub optimum: usize,
    pub exact: bool,
    /// Canonical representative of each class of maximum non-trivial families.
    pub classes: Vec<Family>,
    /// Canonical form of the Brace–Daykin family on `[r + t]`.
    pub expected_class: Family,
    pub verdict: Verdict,
    pub problems: Vec<String>,
    /// Largest family with the agreeing property but no non-triviality
    /// requirement, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trivial_optimum: Option<usize>,
    pub stats: SearchStats,
}

pub fn verify_uniqueness(
    n: usize,
    r: usize,
    t: usize,
    options: &UniquenessOptions,
) -> Result<UniquenessReport, Error> {
    let bad = |m: String| Err(Error::InvalidParams(m));
    if r < 3 {
        return bad(format!("uniqueness needs r >= 3, got {r}"));
    }
    if t == 0 {
        return bad("uniqueness needs t >= 1".into());
    }
    let cap = (1usize << r.min(40)) - r - 1;
    if t >= cap {
        return bad(format!("uniqueness needs t < 2^r - r - 1 = {cap}, got t = {t}"));
    }
    if n <= r {
        return bad(format!("uniqueness needs n > r, got n = {n}, r = {r}"));
    }
    if n > MAX_CANON_N {
        return Err(Error::GroupTooLarge(n));
    }
    let bound = theorem_bound(n, r, t)?;
    let jobs = options.jobs.max(1);
    let params = SearchParams::new(n, r, t).all_maximum(true).node_limit(options.node_limit).jobs(jobs);
    let result = max_agreeing(&params)?;
    let expected_class = canonical_form(&brace_daykin(n, r, t)?)?;
    let classes = result.all_maximum_canonical.clone().unwrap_or_default();

    let mut problems = Vec::new();
    if result.optimum != bound {
        problems.push(format!("optimum {} differs from bound {bound}", result.optimum));
    }
    if classes.len() != 1 {
        problems.push(format!("{} classes of maximum families, expected 1", classes.len()));
    }
    if !classes.contains(&expected_class) {
        problems.push("twisted family is not among the maximum classes".into());
    }
    for extra in classes.iter().filter(|c| **c != expected_class) {
        problems.push(format!("counterexample class: {extra}"));
    }
    let verdict = if !result.exact {
        Verdict::Inconclusive
    } else if problems.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    let trivial_optimum = if options.explore_trivial {
        let p = SearchParams::new(n, r, t).nontrivial(false).node_limit(options.node_limit).jobs(jobs);
        let res = max_agreeing(&p)?;
        res.exact.then_some(res.optimum)
    } else {
        None
    };

    Ok(UniquenessReport {
        n,
        r,
        t,
        bound,
        optimum: result.optimum,
        exact: result.exact,
        classes,
        expected_class,
        verdict,
        problems,
        trivial_optimum,
        stats: result.stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n4_r3_t1_passes() {
        let rep = verify_uniqueness(4, 3, 1, &UniquenessOptions::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{:?}", rep.problems);
        assert_eq!(rep.optimum, 5);
        assert_eq!(rep.classes.len(), 1);
    }

    #[test]
    fn boundary_t_is_refused() {
        assert!(matches!(
            verify_uniqueness(5, 3, 4, &UniquenessOptions::default()),
            Err(Error::InvalidParams(_))
        ));
        assert!(verify_uniqueness(5, 2, 1, &UniquenessOptions::default()).is_err());
        assert!(verify_uniqueness(3, 3, 1, &UniquenessOptions::default()).is_err());
        assert!(verify_uniqueness(9, 3, 1, &UniquenessOptions::default()).is_err());
    }

    #[test]
    fn node_limit_gives_inconclusive() {
        let opts = UniquenessOptions { node_limit: Some(5), ..Default::default() };
        let rep = verify_uniqueness(5, 3, 1, &opts).unwrap();
        assert_eq!(rep.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn trivial_families_exceed_the_bound() {
        let opts = UniquenessOptions { explore_trivial: true, ..Default::default() };
        let rep = verify_uniqueness(4, 3, 1, &opts).unwrap();
        assert_eq!(rep.trivial_optimum, Some(8));
    }
}
