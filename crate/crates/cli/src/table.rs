use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use agree_core::search::{max_agreeing, theorem_bound, SearchParams};
use agree_core::MAX_SEARCH_N;
use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::{elapsed_ms, Failure};

#[derive(Clone, Copy, Default, ValueEnum)]
pub(crate) enum TableFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Args)]
pub(crate) struct TableArgs {
    /// Values of n: `3..5` (inclusive), `4`, or `3,5,7`.
    #[arg(long)]
    n: String,
    #[arg(long)]
    r: String,
    #[arg(long)]
    t: String,
    #[arg(long, value_enum, default_value_t)]
    format: TableFormat,
    /// Write the table here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, env = "AGREE_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Per-cell node limit.
    #[arg(long)]
    node_limit: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub(crate) struct TableRow {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    pub bound: usize,
    pub w_star: usize,
    #[serde(rename = "match")]
    pub matches: bool,
    pub nodes: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Serialize)]
struct Skipped {
    n: usize,
    r: usize,
    t: usize,
    reason: String,
}

#[derive(Debug, Serialize)]
struct Cell {
    n: usize,
    r: usize,
    t: usize,
}

pub(crate) fn parse_values(text: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("`{s}` is not a number"));
        if let Some((lo, hi)) = item.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(format!("empty range `{item}`"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(num(item)?);
        }
    }
    Ok(out)
}

fn skip_reason(n: usize, r: usize, t: usize) -> Option<String> {
    if r < 2 {
        Some("r >= 2 required".into())
    } else if n <= r {
        Some("n > r required".into())
    } else if t == 0 || t > n {
        Some("1 <= t <= n required".into())
    } else if n < r + t {
        Some("n >= r + t required for the bound".into())
    } else if n > MAX_SEARCH_N {
        Some(format!("n > {MAX_SEARCH_N} beyond search limit"))
    } else {
        None
    }
}

pub(crate) fn cmd_table(a: TableArgs) -> Result<u8, Failure> {
    let ns = parse_values(&a.n).map_err(Failure::usage)?;
    let rs = parse_values(&a.r).map_err(Failure::usage)?;
    let ts = parse_values(&a.t).map_err(Failure::usage)?;

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut inexact = Vec::new();
    for &n in &ns {
        for &r in &rs {
            for &t in &ts {
                if let Some(reason) = skip_reason(n, r, t) {
                    eprintln!("skipped n={n} r={r} t={t}: {reason}");
                    skipped.push(Skipped { n, r, t, reason });
                    continue;
                }
                let bound = theorem_bound(n, r, t)?;
                let params = SearchParams::new(n, r, t).node_limit(a.node_limit).jobs(a.jobs);
                let res = max_agreeing(&params)?;
                if !res.exact {
                    eprintln!("inexact n={n} r={r} t={t}: node limit reached");
                    inexact.push(Cell { n, r, t });
                }
                rows.push(TableRow {
                    n,
                    r,
                    t,
                    bound,
                    w_star: res.optimum,
                    matches: res.exact && res.optimum == bound,
                    nodes: res.stats.nodes_explored,
                    elapsed_ms: elapsed_ms(res.stats.elapsed),
                });
            }
        }
    }

    let mut sink: Box<dyn Write> = match &a.output {
        Some(path) => {
            Box::new(File::create(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?)
        }
        None => Box::new(io::stdout().lock()),
    };
    match a.format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut sink);
            if rows.is_empty() {
                w.write_record(["n", "r", "t", "bound", "w_star", "match", "nodes", "elapsed_ms"])
                    .map_err(Failure::usage)?;
            }
            for row in &rows {
                w.serialize(row).map_err(Failure::usage)?;
            }
            w.flush()?;
        }
        TableFormat::Json => {
            let doc = serde_json::json!({ "rows": rows, "skipped": skipped, "inexact": inexact });
            writeln!(sink, "{doc}")?;
        }
    }
    sink.flush()?;
    Ok(if inexact.is_empty() { 0 } else { 3 })
}
