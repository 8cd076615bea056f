//! Greedy extraction of a primal non-conflicting clause subset.
//!
//! Each round picks the best literal `l` under a [`Heuristic`], moves every
//! remaining clause containing `l` into the island, and discards every
//! remaining clause containing `l` or its complement. Once a literal is
//! picked its variable never appears again, so `l` is the primal literal of
//! every clause it collected under the ordering "picked variables first, in
//! pick order".

mod heuristic;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use heuristic::{
    best_literal, heuristic_score, literal_counts, Heuristic, LiteralCounts, Score,
};

use crate::cnf::{satisfies_all, Clause, Formula, Literal, State};
use crate::island::{is_primal_non_conflicting, primal_literal, seed_solution, VariableOrdering};

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("no clauses to pick a literal from")]
    NoClauses,
    #[error("literal {0:?} does not occur in the working clauses")]
    NotACandidate(Literal),
    #[error("unknown heuristic `{0}` (expected neg, diff, ratio or nratio)")]
    UnknownHeuristic(String),
}

/// Output of [`island_extract`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionResult {
    pub name: Option<String>,
    pub heuristic: Heuristic,
    pub num_vars: usize,
    /// Island clauses in source order.
    pub island: Vec<Clause>,
    /// Source positions of `island`.
    pub island_indices: Vec<usize>,
    /// Picked literals in pick order.
    pub primal_list: Vec<Literal>,
    pub induced_ordering: VariableOrdering,
    /// Everything not in the island, in source order.
    pub removed: Vec<Clause>,
    pub removed_indices: Vec<usize>,
    /// Solution of the island built from `primal_list`.
    pub seed: State,
}

impl ExtractionResult {
    pub fn num_clauses(&self) -> usize {
        self.island.len() + self.removed.len()
    }

    /// Island share of all clauses, in percent. An empty formula counts as
    /// fully covered.
    pub fn coverage_pct(&self) -> f64 {
        coverage_pct(self.island.len(), self.num_clauses())
    }

    /// The island as a formula over the source's variables.
    pub fn island_formula(&self) -> Formula {
        let f = Formula::new(self.num_vars, self.island.clone()).expect("island vars in range");
        match &self.name {
            Some(n) => f.with_name(n.clone()),
            None => f,
        }
    }

    /// Checks every structural guarantee of an extraction against its source.
    pub fn verify(&self, source: &Formula) -> Result<(), String> {
        let n = source.len();
        let mut seen = vec![0u8; n];
        for &i in self.island_indices.iter().chain(&self.removed_indices) {
            if i >= n {
                return Err(format!("index {i} out of range"));
            }
            seen[i] += 1;
        }
        if let Some(i) = seen.iter().position(|&k| k != 1) {
            return Err(format!("clause {i} not in exactly one of island/removed"));
        }
        let by_index = |idx: &[usize], got: &[Clause]| {
            idx.len() == got.len()
                && idx.windows(2).all(|w| w[0] < w[1])
                && idx.iter().zip(got).all(|(&i, c)| &source.clauses()[i] == c)
        };
        if !by_index(&self.island_indices, &self.island)
            || !by_index(&self.removed_indices, &self.removed)
        {
            return Err("island/removed do not match their source positions".into());
        }
        let mut vars: Vec<u32> = self.primal_list.iter().map(|l| l.var()).collect();
        vars.sort_unstable();
        if vars.windows(2).any(|w| w[0] == w[1]) {
            return Err("primal list repeats a variable".into());
        }
        match is_primal_non_conflicting(&self.island, &self.induced_ordering) {
            Ok(true) => {}
            Ok(false) => return Err("island is not primal non-conflicting".into()),
            Err(e) => return Err(e.to_string()),
        }
        for q in &self.island {
            let p = primal_literal(q, &self.induced_ordering).map_err(|e| e.to_string())?;
            if !self.primal_list.contains(&p) {
                return Err(format!("primal literal {p:?} of {q:?} not in primal list"));
            }
        }
        if self.seed.width() != source.num_vars() || !satisfies_all(&self.island, &self.seed) {
            return Err("seed does not satisfy the island".into());
        }
        Ok(())
    }

    pub fn record(&self) -> ExtractionRecord {
        ExtractionRecord {
            instance: self.name.clone().unwrap_or_default(),
            num_clauses: self.num_clauses(),
            island_clauses: self.island.len(),
            coverage_pct: self.coverage_pct(),
            primal_literals: self.primal_list.len(),
            heuristic: self.heuristic,
            seed: self.seed.to_string(),
        }
    }
}

pub(crate) fn coverage_pct(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        100.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}

/// Flat summary of one extraction, for JSON and CSV output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtractionRecord {
    pub instance: String,
    pub num_clauses: usize,
    pub island_clauses: usize,
    pub coverage_pct: f64,
    pub primal_literals: usize,
    pub heuristic: Heuristic,
    pub seed: String,
}

/// Greedy island extraction; non-primal variables in the seed are set to 1.
pub fn island_extract(f: &Formula, h: Heuristic) -> ExtractionResult {
    island_extract_with(f, h, true)
}

/// As [`island_extract`] with an explicit value for seed variables that carry
/// no primal literal.
pub fn island_extract_with(f: &Formula, h: Heuristic, seed_default: bool) -> ExtractionResult {
    let clauses = f.clauses();
    let mut counts = LiteralCounts::from_clauses(clauses);
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); 2 * f.num_vars()];
    for (i, c) in clauses.iter().enumerate() {
        for l in c.literals() {
            occurs[l.code()].push(i);
        }
    }
    let mut alive = vec![true; clauses.len()];
    let mut remaining = clauses.len();
    let mut in_island = vec![false; clauses.len()];
    let mut primal_list = Vec::new();

    let retire = |i: usize, counts: &mut LiteralCounts, alive: &mut [bool]| {
        alive[i] = false;
        for &l in clauses[i].literals() {
            counts.decrement(l);
        }
    };

    while remaining > 0 {
        let l = counts.best(h).expect("live clauses have literals");
        primal_list.push(l);
        for &i in &occurs[l.code()] {
            if alive[i] {
                in_island[i] = true;
                retire(i, &mut counts, &mut alive);
                remaining -= 1;
            }
        }
        for &i in &occurs[l.complement().code()] {
            if alive[i] {
                retire(i, &mut counts, &mut alive);
                remaining -= 1;
            }
        }
    }

    let (island_indices, removed_indices): (Vec<usize>, Vec<usize>) =
        (0..clauses.len()).partition(|&i| in_island[i]);
    let island: Vec<Clause> = island_indices.iter().map(|&i| clauses[i].clone()).collect();
    let removed = removed_indices.iter().map(|&i| clauses[i].clone()).collect();
    let prefix: Vec<u32> = primal_list.iter().map(|l: &Literal| l.var()).collect();
    let induced_ordering =
        VariableOrdering::with_prefix(&prefix, f.num_vars()).expect("picked variables are distinct");
    let seed = seed_solution(&island, &induced_ordering, f.num_vars(), seed_default)
        .expect("greedy island is primal non-conflicting");

    ExtractionResult {
        name: f.name().map(str::to_string),
        heuristic: h,
        num_vars: f.num_vars(),
        island,
        island_indices,
        primal_list,
        induced_ordering,
        removed,
        removed_indices,
        seed,
    }
}
