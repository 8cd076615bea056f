use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{stats_report, InstanceReport, StatsOptions};
use crate::cnf::read_dimacs;
use crate::extract::Heuristic;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteFailure {
    pub path: PathBuf,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    /// One report per readable instance, ordered by path.
    pub reports: Vec<InstanceReport>,
    pub failures: Vec<SuiteFailure>,
    /// Mean island coverage in percent; `None` when nothing was reported.
    pub mean_coverage: Option<f64>,
}

impl SuiteReport {
    pub fn all_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Expands directories (recursively, `*.cnf` only) and keeps explicit files
/// as given. The result is sorted and deduplicated.
pub fn collect_cnf_files(paths: &[PathBuf]) -> io::Result<Vec<PathBuf>> {
    fn walk(dir: &Path, out: &mut Vec<PathBuf>) -> io::Result<()> {
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.is_dir() {
                walk(&path, out)?;
            } else if path.extension().is_some_and(|e| e == "cnf") {
                out.push(path);
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            walk(p, &mut out)?;
        } else {
            out.push(p.clone());
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Runs [`stats_report`] on every instance, in parallel. Unreadable or
/// malformed files are collected as failures and skipped.
pub fn run_suite(paths: &[PathBuf], h: Heuristic, opts: StatsOptions) -> io::Result<SuiteReport> {
    let files = collect_cnf_files(paths)?;
    let results: Vec<Result<InstanceReport, SuiteFailure>> = files
        .par_iter()
        .map(|path| {
            read_dimacs(path)
                .map(|d| stats_report(&d.formula, h, opts))
                .map_err(|e| SuiteFailure {
                    path: path.clone(),
                    message: e.to_string(),
                })
        })
        .collect();
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err(f) => failures.push(f),
        }
    }
    let mean_coverage = (!reports.is_empty())
        .then(|| reports.iter().map(|r| r.coverage_pct).sum::<f64>() / reports.len() as f64);
    Ok(SuiteReport {
        reports,
        failures,
        mean_coverage,
    })
}
