//! Running the registry: selection by glob, seeded trials on a thread pool,
//! JSONL output and the per-check summary.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};
use std::time::Instant;

use het_core::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::checks::{derive_seed, execute, find, registry, Check, CheckReport, Relation, Verdict};

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Glob over check names; `None` runs everything.
    pub filter: Option<String>,
    pub trials: u64,
    pub seed: u64,
    pub threads: Option<usize>,
    /// Zero out timings so that output depends only on the seed.
    pub deterministic: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            filter: None,
            trials: 50,
            seed: 0,
            threads: None,
            deterministic: false,
        }
    }
}

pub struct SuiteRun {
    pub reports: Vec<CheckReport>,
    /// Some failure came from a cap rather than a violated relation.
    pub cap_exceeded: bool,
    pub elapsed_ms: u64,
}

impl SuiteRun {
    /// Failed reports of asserting checks; report-only checks never count.
    pub fn failures(&self) -> usize {
        count_failures(&self.reports)
    }

    /// 0 when nothing failed, 3 when a cap stopped a check, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match (self.failures(), self.cap_exceeded) {
            (0, _) => 0,
            (_, true) => 3,
            _ => 1,
        }
    }
}

pub fn count_failures(reports: &[CheckReport]) -> usize {
    reports
        .iter()
        .filter(|r| r.verdict == Verdict::Fail && find(&r.check).map_or(true, is_asserting))
        .count()
}

/// Checks whose name matches `filter`, in registry order.
pub fn select(filter: Option<&str>) -> Result<Vec<&'static Check>, glob::PatternError> {
    let pat = filter.map(glob::Pattern::new).transpose()?;
    Ok(registry()
        .iter()
        .filter(|c| pat.as_ref().map_or(true, |p| p.matches(c.name)))
        .collect())
}

pub fn run_suite(opts: &SuiteOptions) -> Result<SuiteRun, Error> {
    let checks = select(opts.filter.as_deref()).map_err(|_| Error::InvalidArgument("bad filter pattern"))?;
    run_checks(&checks, opts)
}

/// Like [`run_suite`] on an explicit check list; `opts.filter` is ignored.
pub fn run_checks(checks: &[&'static Check], opts: &SuiteOptions) -> Result<SuiteRun, Error> {
    let start = Instant::now();
    let tasks: Vec<(&Check, u64)> = checks
        .iter()
        .flat_map(|&c| (0..opts.trials).map(move |t| (c, t)))
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = opts.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|_| Error::InvalidArgument("could not start worker threads"))?;
    let timing = !opts.deterministic;
    let results: Vec<_> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(c, t)| execute(c, derive_seed(opts.seed, c.name, t), timing))
            .collect()
    });
    let cap_exceeded = results
        .iter()
        .any(|e| matches!(e.error, Some(Error::CapExceeded { .. })));
    Ok(SuiteRun {
        reports: results.into_iter().map(|e| e.report).collect(),
        cap_exceeded,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn write_jsonl<W: Write>(reports: &[CheckReport], mut out: W) -> io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub fn read_jsonl<R: BufRead>(input: R) -> io::Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let r = serde_json::from_str(&line)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("line {}: {e}", i + 1)))?;
        out.push(r);
    }
    Ok(out)
}

/// Per-check counts and the ratio range, the tightness leaderboard.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckSummary {
    pub check: String,
    pub runs: usize,
    pub pass: usize,
    pub fail: usize,
    pub reported: usize,
    pub min_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
}

pub fn summarize(reports: &[CheckReport]) -> Vec<CheckSummary> {
    let mut order: Vec<String> = Vec::new();
    let mut by: BTreeMap<String, CheckSummary> = BTreeMap::new();
    for r in reports {
        let s = by.entry(r.check.clone()).or_insert_with(|| {
            order.push(r.check.clone());
            CheckSummary {
                check: r.check.clone(),
                runs: 0,
                pass: 0,
                fail: 0,
                reported: 0,
                min_ratio: None,
                max_ratio: None,
            }
        });
        s.runs += 1;
        match r.verdict {
            Verdict::Pass => s.pass += 1,
            Verdict::Fail => s.fail += 1,
            Verdict::Reported => s.reported += 1,
        }
        if let Some(q) = r.ratio.filter(|q| q.is_finite()) {
            s.min_ratio = Some(s.min_ratio.map_or(q, |m| m.min(q)));
            s.max_ratio = Some(s.max_ratio.map_or(q, |m| m.max(q)));
        }
    }
    order.into_iter().map(|n| by.remove(&n).expect("inserted")).collect()
}

fn fmt_ratio(q: Option<f64>) -> String {
    q.map_or("-".into(), |q| format!("{q:.6}"))
}

/// A plain-text table of [`summarize`].
pub fn render_summary<W: Write>(summary: &[CheckSummary], mut out: W) -> io::Result<()> {
    let width = summary.iter().map(|s| s.check.len()).max().unwrap_or(5).max(5);
    writeln!(out, "{:width$}  {:>5} {:>5} {:>5} {:>5}  {:>12} {:>12}", "check", "runs", "pass", "fail", "rep", "min ratio", "max ratio")?;
    for s in summary {
        writeln!(
            out,
            "{:width$}  {:>5} {:>5} {:>5} {:>5}  {:>12} {:>12}",
            s.check,
            s.runs,
            s.pass,
            s.fail,
            s.reported,
            fmt_ratio(s.min_ratio),
            fmt_ratio(s.max_ratio)
        )?;
    }
    let fails: usize = summary.iter().map(|s| s.fail).sum();
    let runs: usize = summary.iter().map(|s| s.runs).sum();
    writeln!(out, "{runs} runs, {fails} failed")
}

/// Whether a check's verdict can fail a run.
pub fn is_asserting(c: &Check) -> bool {
    c.relation != Relation::ReportOnly
}
