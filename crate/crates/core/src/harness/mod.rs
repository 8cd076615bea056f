//! Brute-force statistics for extracted islands and batch runs over DIMACS
//! files.

mod report;
mod suite;

pub use report::{csv_header, format_table, to_csv, InstanceReport, CSV_COLUMNS};
pub use suite::{collect_cnf_files, run_suite, SuiteFailure, SuiteReport};

use std::time::Instant;

use crate::cnf::Formula;
use crate::confined::island_neighborhood_size;
use crate::extract::{coverage_pct, island_extract, ExtractionResult, Heuristic};
use crate::island::{count_models, Guard, IslandError};

/// `|sol(island)|` over all of the source's variables; variables the island
/// never mentions double the count.
pub fn island_space_size(res: &ExtractionResult, guard: Guard) -> Result<u64, IslandError> {
    count_models(&res.island, res.num_vars, guard)
}

/// Exact model count of the whole formula.
pub fn count_solutions(f: &Formula, guard: Guard) -> Result<u64, IslandError> {
    count_models(f.clauses(), f.num_vars(), guard)
}

/// `2^num_vars / space`, rounded half up. `None` for an empty space.
pub fn reduction_factor(num_vars: usize, space: u64) -> Option<u64> {
    if space == 0 || num_vars >= 127 {
        return None;
    }
    let total = 1u128 << num_vars;
    let space = u128::from(space);
    u64::try_from((2 * total + space) / (2 * space)).ok()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StatsOptions {
    /// Also count island and formula solutions by enumeration.
    pub enumerate: bool,
    pub guard: Guard,
}

/// Extracts an island from `f` and gathers its statistics.
///
/// Enumeration beyond the guard leaves the enumeration fields empty and adds
/// a note instead of failing.
pub fn stats_report(f: &Formula, h: Heuristic, opts: StatsOptions) -> InstanceReport {
    let start = Instant::now();
    let res = island_extract(f, h);
    let degree = island_neighborhood_size(&res);
    let mut notes = Vec::new();
    if f.is_empty() {
        notes.push("empty formula: coverage defined as 100%".to_string());
    }
    let (mut island_space, mut model_count) = (None, None);
    if opts.enumerate {
        match island_space_size(&res, opts.guard) {
            Ok(n) => island_space = Some(n),
            Err(e) => notes.push(format!("island space skipped: {e}")),
        }
        match count_solutions(f, opts.guard) {
            Ok(n) => model_count = Some(n),
            Err(e) => notes.push(format!("model count skipped: {e}")),
        }
    }
    InstanceReport {
        name: f.name().unwrap_or("").to_string(),
        num_clauses: f.len(),
        island_clauses: res.island.len(),
        coverage_pct: res.coverage_pct(),
        num_vars: f.num_vars(),
        confined_degree: degree,
        confined_pct: coverage_pct(degree, f.num_vars()),
        island_space,
        reduction: island_space.and_then(|s| reduction_factor(f.num_vars(), s)),
        model_count,
        heuristic: h,
        wall_time: start.elapsed().as_secs_f64(),
        notes,
    }
}
