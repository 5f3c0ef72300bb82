//! `agree`: checks, squashing traces, constructions, exact searches and
//! reproduction tables for r-wise t-agreeing families.
//!
//! Exit codes: 0 success, 1 a requested predicate fails, 2 usage or parse
//! error, 3 inexact search (node limit hit).

mod table;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use agree_core::constructions::{brace_daykin, fixed_coords, parity_family, twisted};
use agree_core::format::{parse_family, write_family, Encoding};
use agree_core::search::{
    brute_force_oracle, max_agreeing, verify_uniqueness, SearchParams, UniquenessOptions, Verdict,
};
use agree_core::squash::{squash_all, SquashOutcome};
use agree_core::{
    is_down_closed, is_nontrivial, is_r_wise_t_agreeing, is_r_wise_t_union, parse_coord_list, Family,
    GroundSet,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "agree", version, about = "Exact tools for r-wise t-agreeing set families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the agreeing, non-trivial, union and down-closed predicates.
    Check(CheckArgs),
    /// Run the sequential squashing procedure and print its trace.
    Squash(SquashArgs),
    /// Emit one of the closed-form families.
    Construct(ConstructArgs),
    /// Compute the largest (non-trivial) r-wise t-agreeing family exactly.
    Search(SearchArgs),
    /// Tabulate w* against the closed-form bound over parameter ranges.
    Table(table::TableArgs),
    /// Check that the maximum non-trivial families form a single orbit.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum FamilyFormat {
    #[default]
    Sets,
    Hex,
}

impl From<FamilyFormat> for Encoding {
    fn from(f: FamilyFormat) -> Self {
        match f {
            FamilyFormat::Sets => Encoding::Sets,
            FamilyFormat::Hex => Encoding::Hex,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Predicate {
    Agreeing,
    Nontrivial,
    Union,
    DownClosed,
}

#[derive(Args)]
struct CheckArgs {
    /// Family file, or `-` for standard input.
    file: PathBuf,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    t: usize,
    /// Predicates that must hold for exit status 0.
    #[arg(long, value_delimiter = ',', default_value = "agreeing")]
    require: Vec<Predicate>,
    /// Require all four predicates.
    #[arg(long, conflicts_with = "require")]
    all: bool,
}

#[derive(Args)]
struct SquashArgs {
    /// Family file, or `-` for standard input.
    file: PathBuf,
    /// Store the full family after every step, not just its digest.
    #[arg(long)]
    keep_families: bool,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    kind: ConstructKind,
    #[arg(long, value_enum, default_value_t, global = true)]
    format: FamilyFormat,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// All sets meeting [r+t] in at most one element.
    BraceDaykin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
    },
    /// {F Δ R : |F ∩ A| <= 1} for a profile set A and twist R ⊆ A.
    Twisted {
        #[arg(long)]
        n: usize,
        /// Profile set A, e.g. `1,2,3,4` or `1-4`.
        #[arg(long)]
        profile: String,
        /// Twist set R inside A.
        #[arg(long, default_value = "")]
        twist: String,
        #[command(flatten)]
        summary: SummaryParams,
    },
    /// All sets of even size.
    Parity {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        summary: SummaryParams,
    },
    /// All sets containing the given coordinates.
    Fixed {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        coords: String,
        #[command(flatten)]
        summary: SummaryParams,
    },
}

/// Optional arity and demand for the predicate summary.
#[derive(Args)]
struct SummaryParams {
    #[arg(long, requires = "t")]
    r: Option<usize>,
    #[arg(long, requires = "r")]
    t: Option<usize>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    t: usize,
    /// Only count non-trivial families.
    #[arg(long)]
    nontrivial: bool,
    /// Also list every maximum family up to coordinate permutations and flips.
    #[arg(long)]
    all_max: bool,
    /// Use the exhaustive oracle instead of branch-and-bound (n <= 5).
    #[arg(long)]
    oracle: bool,
    #[arg(long, env = "AGREE_JOBS", default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    node_limit: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, env = "AGREE_JOBS", default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Also report the optimum without the non-triviality requirement.
    #[arg(long)]
    explore_trivial: bool,
}

/// A failed invocation: exit code and message for standard error.
pub(crate) struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub(crate) fn usage(message: impl std::fmt::Display) -> Self {
        Failure { code: 2, message: message.to_string() }
    }
}

impl From<agree_core::Error> for Failure {
    fn from(e: agree_core::Error) -> Self {
        Failure::usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Squash(a) => cmd_squash(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Search(a) => cmd_search(a),
        Command::Table(a) => table::cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_family(path: &PathBuf) -> Result<Family, Failure> {
    let mut text = String::new();
    let label = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text)?;
        "<stdin>".to_string()
    } else {
        text =
            std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        path.display().to_string()
    };
    parse_family(&text).map_err(|e| Failure::usage(format!("{label}: {e}")))
}

pub(crate) fn emit(line: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    writeln!(out, "{line}")?;
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable output")
}

pub(crate) fn elapsed_ms(d: Duration) -> u64 {
    d.as_millis().try_into().unwrap_or(u64::MAX)
}

fn cmd_check(a: CheckArgs) -> Result<u8, Failure> {
    let fam = read_family(&a.file)?;
    if a.r == 0 || a.t > fam.n() {
        return Err(Failure::usage(format!("need r >= 1 and t <= n = {}", fam.n())));
    }
    let agreeing = is_r_wise_t_agreeing(&fam, a.r, a.t)?;
    let union = is_r_wise_t_union(&fam, a.r, a.t)?;
    let nontrivial = is_nontrivial(&fam);
    let down_closed = is_down_closed(&fam);
    let required = if a.all {
        vec![Predicate::Agreeing, Predicate::Nontrivial, Predicate::Union, Predicate::DownClosed]
    } else {
        a.require
    };
    let holds = required.iter().all(|p| match p {
        Predicate::Agreeing => agreeing.is_none(),
        Predicate::Nontrivial => nontrivial,
        Predicate::Union => union.is_none(),
        Predicate::DownClosed => down_closed,
    });
    let report = json!({
        "n": fam.n(),
        "size": fam.len(),
        "r": a.r,
        "t": a.t,
        "agreeing": agreeing.is_none(),
        "nontrivial": nontrivial,
        "union": union.is_none(),
        "down_closed": down_closed,
        "agreeing_witness": agreeing,
        "union_witness": union,
        "holds": holds,
    });
    emit(&to_json(&report))?;
    Ok(if holds { 0 } else { 1 })
}

fn cmd_squash(a: SquashArgs) -> Result<u8, Failure> {
    let fam = read_family(&a.file)?;
    match squash_all(&fam, a.keep_families) {
        Ok((out, trace)) => {
            let final_down_closed = is_down_closed(&out);
            emit(&to_json(&json!({
                "trace": trace,
                "family": out,
                "down_closed": final_down_closed,
            })))?;
            if trace.outcome == SquashOutcome::TrivialAtEntry {
                eprintln!("note: input family is trivial; no squashing step was run");
            }
            Ok(0)
        }
        Err(agree_core::Error::NotDownClosed(bad)) => {
            emit(&to_json(&json!({ "error": "squashed family not down-closed", "family": *bad })))?;
            Err(Failure { code: 1, message: "squashed family not down-closed".into() })
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_construct(a: ConstructArgs) -> Result<u8, Failure> {
    let (fam, summary) = match a.kind {
        ConstructKind::BraceDaykin { n, r, t } => (brace_daykin(n, r, t)?, Some((r, t))),
        ConstructKind::Twisted { n, profile, twist, summary } => {
            let g = GroundSet::new(n)?;
            let fam = twisted(n, parse_coord_list(&profile, g)?, parse_coord_list(&twist, g)?)?;
            (fam, summary.r.zip(summary.t))
        }
        ConstructKind::Parity { n, summary } => (parity_family(n)?, summary.r.zip(summary.t)),
        ConstructKind::Fixed { n, coords, summary } => {
            let g = GroundSet::new(n)?;
            (fixed_coords(n, parse_coord_list(&coords, g)?)?, summary.r.zip(summary.t))
        }
    };
    emit(&write_family(&fam, a.format.into()))?;
    let mut line =
        format!("size={} nontrivial={} down_closed={}", fam.len(), is_nontrivial(&fam), is_down_closed(&fam));
    if let Some((r, t)) = summary {
        if r >= 1 && t <= fam.n() {
            line.push_str(&format!(
                " agreeing(r={r},t={t})={} union(r={r},t={t})={}",
                is_r_wise_t_agreeing(&fam, r, t)?.is_none(),
                is_r_wise_t_union(&fam, r, t)?.is_none()
            ));
        }
    }
    eprintln!("{line}");
    Ok(0)
}

fn cmd_search(a: SearchArgs) -> Result<u8, Failure> {
    let params = SearchParams::new(a.n, a.r, a.t)
        .nontrivial(a.nontrivial)
        .all_maximum(a.all_max)
        .node_limit(a.node_limit)
        .jobs(a.jobs);
    let result = if a.oracle { brute_force_oracle(&params)? } else { max_agreeing(&params)? };
    emit(&to_json(&json!({
        "header": { "elapsed_ms": elapsed_ms(result.stats.elapsed) },
        "result": result,
    })))?;
    eprintln!(
        "optimum={} exact={} classes={}",
        result.optimum,
        result.exact,
        result.all_maximum_canonical.as_ref().map_or("-".to_string(), |c| c.len().to_string())
    );
    Ok(if result.exact { 0 } else { 3 })
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Failure> {
    let options =
        UniquenessOptions { jobs: a.jobs, node_limit: a.node_limit, explore_trivial: a.explore_trivial };
    let report = verify_uniqueness(a.n, a.r, a.t, &options)?;
    emit(&to_json(&json!({
        "header": { "elapsed_ms": elapsed_ms(report.stats.elapsed) },
        "report": report,
    })))?;
    eprintln!("verdict={:?} optimum={} classes={}", report.verdict, report.optimum, report.classes.len());
    Ok(match report.verdict {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive => 3,
    })
}
