use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cnf::{satisfies_all, Clause, Formula, State};
use crate::extract::ExtractionResult;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Maximum number of search steps, restart-walk flips included.
    pub budget: u64,
    pub rng_seed: u64,
    /// Steps without a new best before restarting; `None` means `10 * n`.
    pub stagnation_window: Option<u64>,
    /// Random confined flips from the seed after a restart; `None` means `n`.
    pub restart_walk: Option<u64>,
    /// Probability of a uniformly random confined flip instead of the greedy one.
    pub noise: f64,
    /// Re-evaluate the island from scratch on every visited state.
    pub audit: bool,
    /// Keep every visited state in the outcome.
    pub record_states: bool,
}

impl SearchConfig {
    pub fn new(budget: u64, rng_seed: u64) -> Self {
        SearchConfig {
            budget,
            rng_seed,
            stagnation_window: None,
            restart_walk: None,
            noise: 0.0,
            audit: false,
            record_states: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub states_checked: u64,
    /// Visited states that falsified an island clause.
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub solved: bool,
    pub final_state: State,
    pub flips_used: u64,
    /// Unsatisfied non-island clauses for every visited state: the start,
    /// each step, and each restart back to the seed.
    pub unsat_trace: Vec<usize>,
    pub restarts: u64,
    pub audit: Option<AuditSummary>,
    pub visited: Option<Vec<State>>,
}

impl SearchOutcome {
    pub fn report(&self, instance: &str, config: &SearchConfig) -> SearchReport {
        SearchReport {
            instance: instance.to_string(),
            solved: self.solved,
            flips_used: self.flips_used,
            budget: config.budget,
            rng_seed: config.rng_seed,
            final_state: self.final_state.to_string(),
        }
    }
}

/// JSON summary of one search run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub instance: String,
    pub solved: bool,
    pub flips_used: u64,
    pub budget: u64,
    pub rng_seed: u64,
    pub final_state: String,
}

/// Incremental bookkeeping for one state: true-literal counts per clause,
/// the variables pinned by critically satisfied island clauses, and the
/// number of unsatisfied clauses outside the island.
struct Tracker<'a> {
    state: State,
    island: &'a [Clause],
    rest: &'a [Clause],
    /// Per variable: (clause index, literal polarity) occurrences.
    island_occ: Vec<Vec<(usize, bool)>>,
    rest_occ: Vec<Vec<(usize, bool)>>,
    island_true: Vec<u32>,
    /// Sum of the variables of true literals; names the sole one when the count is 1.
    island_var_sum: Vec<u64>,
    /// Island clauses for which the variable is the sole satisfier.
    pinned: Vec<u32>,
    rest_true: Vec<u32>,
    unsat: usize,
}

impl<'a> Tracker<'a> {
    fn new(island: &'a [Clause], rest: &'a [Clause], num_vars: usize, start: State) -> Self {
        let occ = |clauses: &[Clause]| {
            let mut occ = vec![Vec::new(); num_vars + 1];
            for (i, c) in clauses.iter().enumerate() {
                for l in c.literals() {
                    occ[l.var() as usize].push((i, l.is_positive()));
                }
            }
            occ
        };
        let mut t = Tracker {
            state: start,
            island,
            rest,
            island_occ: occ(island),
            rest_occ: occ(rest),
            island_true: vec![0; island.len()],
            island_var_sum: vec![0; island.len()],
            pinned: vec![0; num_vars + 1],
            rest_true: vec![0; rest.len()],
            unsat: 0,
        };
        t.recount();
        t
    }

    fn reset(&mut self, state: State) {
        self.state = state;
        self.recount();
    }

    fn recount(&mut self) {
        self.pinned.iter_mut().for_each(|p| *p = 0);
        for (i, c) in self.island.iter().enumerate() {
            let (mut n, mut sum) = (0u32, 0u64);
            for &l in c.literals() {
                if self.state.satisfies(l) {
                    n += 1;
                    sum += u64::from(l.var());
                }
            }
            self.island_true[i] = n;
            self.island_var_sum[i] = sum;
            if n == 1 {
                self.pinned[sum as usize] += 1;
            }
        }
        self.unsat = 0;
        for (i, c) in self.rest.iter().enumerate() {
            let n = c.true_count(&self.state) as u32;
            self.rest_true[i] = n;
            if n == 0 {
                self.unsat += 1;
            }
        }
    }

    fn flippable(&self) -> impl Iterator<Item = u32> + '_ {
        (1..self.pinned.len() as u32).filter(|&v| self.pinned[v as usize] == 0)
    }

    /// Change in unsatisfied non-island clauses if `var` were flipped.
    fn delta(&self, var: u32) -> i64 {
        let value = self.state.get(var);
        let mut delta = 0i64;
        for &(ci, positive) in &self.rest_occ[var as usize] {
            let lit_true = positive == value;
            match (lit_true, self.rest_true[ci]) {
                (true, 1) => delta += 1,
                (false, 0) => delta -= 1,
                _ => {}
            }
        }
        delta
    }

    fn flip(&mut self, var: u32) {
        let value = self.state.get(var);
        for &(ci, positive) in &self.island_occ[var as usize] {
            let was_true = positive == value;
            if self.island_true[ci] == 1 {
                self.pinned[self.island_var_sum[ci] as usize] -= 1;
            }
            if was_true {
                self.island_true[ci] -= 1;
                self.island_var_sum[ci] -= u64::from(var);
            } else {
                self.island_true[ci] += 1;
                self.island_var_sum[ci] += u64::from(var);
            }
            if self.island_true[ci] == 1 {
                self.pinned[self.island_var_sum[ci] as usize] += 1;
            }
        }
        for &(ci, positive) in &self.rest_occ[var as usize] {
            if positive == value {
                self.rest_true[ci] -= 1;
                if self.rest_true[ci] == 0 {
                    self.unsat += 1;
                }
            } else {
                if self.rest_true[ci] == 0 {
                    self.unsat -= 1;
                }
                self.rest_true[ci] += 1;
            }
        }
        self.state.flip(var);
    }
}

struct Run<'a> {
    tracker: Tracker<'a>,
    rng: ChaCha8Rng,
    flips: u64,
    trace: Vec<usize>,
    audit: Option<AuditSummary>,
    visited: Option<Vec<State>>,
}

impl Run<'_> {
    fn observe(&mut self) {
        self.trace.push(self.tracker.unsat);
        if let Some(a) = self.audit.as_mut() {
            a.states_checked += 1;
            if !satisfies_all(self.tracker.island, &self.tracker.state) {
                a.violations += 1;
            }
        }
        if let Some(v) = self.visited.as_mut() {
            v.push(self.tracker.state.clone());
        }
    }

    fn random_flippable(&mut self) -> Option<u32> {
        let candidates: Vec<u32> = self.tracker.flippable().collect();
        if candidates.is_empty() {
            None
        } else {
            Some(candidates[self.rng.gen_range(0..candidates.len())])
        }
    }

    fn greedy_flippable(&mut self) -> Option<u32> {
        let mut best = i64::MAX;
        let mut ties = Vec::new();
        for v in self.tracker.flippable() {
            let d = self.tracker.delta(v);
            if d < best {
                best = d;
                ties.clear();
            }
            if d == best {
                ties.push(v);
            }
        }
        if ties.is_empty() {
            None
        } else {
            Some(ties[self.rng.gen_range(0..ties.len())])
        }
    }

    /// One step; a state with no flippable variable spends the step in place.
    fn step(&mut self, var: Option<u32>) {
        if let Some(v) = var {
            self.tracker.flip(v);
        }
        self.flips += 1;
        self.observe();
    }
}

/// Best-improvement local search over the clauses outside the island,
/// starting from the extraction's seed and flipping only island-safe
/// variables. Deterministic for a given configuration.
pub fn confined_local_search(
    f: &Formula,
    res: &ExtractionResult,
    config: &SearchConfig,
) -> SearchOutcome {
    let n = f.num_vars() as u64;
    let window = config.stagnation_window.unwrap_or(10 * n).max(1);
    let walk = config.restart_walk.unwrap_or(n);
    let mut run = Run {
        tracker: Tracker::new(&res.island, &res.removed, f.num_vars(), res.seed.clone()),
        rng: ChaCha8Rng::seed_from_u64(config.rng_seed),
        flips: 0,
        trace: Vec::new(),
        audit: config.audit.then(AuditSummary::default),
        visited: config.record_states.then(Vec::new),
    };
    run.observe();

    let mut best = run.tracker.unsat;
    let mut since_best = 0u64;
    let mut restarts = 0u64;
    while run.tracker.unsat > 0 && run.flips < config.budget {
        let var = if config.noise > 0.0 && run.rng.gen_bool(config.noise.min(1.0)) {
            run.random_flippable()
        } else {
            run.greedy_flippable()
        };
        run.step(var);
        if run.tracker.unsat < best {
            best = run.tracker.unsat;
            since_best = 0;
        } else {
            since_best += 1;
        }
        if since_best >= window && run.tracker.unsat > 0 {
            restarts += 1;
            run.tracker.reset(res.seed.clone());
            run.observe();
            for _ in 0..walk {
                if run.flips >= config.budget || run.tracker.unsat == 0 {
                    break;
                }
                let var = run.random_flippable();
                run.step(var);
            }
            best = run.tracker.unsat;
            since_best = 0;
        }
    }

    let final_state = run.tracker.state.clone();
    let solved = run.tracker.unsat == 0;
    debug_assert!(!solved || f.is_satisfied_by(&final_state));
    SearchOutcome {
        solved,
        final_state,
        flips_used: run.flips,
        unsat_trace: run.trace,
        restarts,
        audit: run.audit,
        visited: run.visited,
    }
}
