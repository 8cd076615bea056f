//! Brute-force island checking and the primal-literal machinery.
//!
//! A clause set is an island when its solutions form one connected component
//! under single-variable flips. Everything here that decides island-ness does
//! so by enumerating all `2^n` states, so it is limited to small `n` by a
//! [`Guard`]. The primal-literal functions give the sufficient condition that
//! scales: a set whose primal literals contain no complementary pair under
//! some variable ordering is always an island.

mod compositional;
mod connectivity;
mod enumerate;
mod ordering;
mod primal;

use thiserror::Error;

pub use compositional::{
    is_compositional, is_compositional_with, CompositionalOptions, CompositionalityCheck,
};
pub use connectivity::{connectivity, is_island, is_island_clauses, IslandCheck};
pub use enumerate::{count_models, enumerate_clauses, enumerate_solutions, SolutionSpace};
pub use ordering::VariableOrdering;
pub use primal::{
    exists_primal_ordering, is_non_conflicting, is_primal_non_conflicting, primal_literal,
    primal_literal_set, primal_path, seed_solution, OrderingSearch, PrimalLiteralSet,
};

#[derive(Debug, Error)]
pub enum IslandError {
    #[error("enumeration needs {required} states, budget is {limit}")]
    StateBudget { required: u128, limit: u64 },
    #[error("ordering search needs {required} permutations, budget is {limit}")]
    PermutationBudget { required: u128, limit: u64 },
    #[error("variable {0} has no rank in the ordering")]
    Unranked(u32),
    #[error("variable {var} outside 1..={num_vars}")]
    VariableOutOfRange { var: u32, num_vars: usize },
    #[error("not a permutation of 1..=n (offending entry {0})")]
    NotAPermutation(u32),
    #[error("primal literal set contains both polarities of variable {0}")]
    PrimalConflict(u32),
    #[error("empty clause has no primal literal")]
    EmptyClause,
}

/// Upper bound on the number of states a brute-force enumeration may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub limit: u64,
}

impl Guard {
    pub const DEFAULT_STATES: u64 = 1 << 26;

    pub fn states(limit: u64) -> Self {
        Guard { limit }
    }

    /// `2^num_vars` if within budget.
    pub fn check_states(self, num_vars: usize) -> Result<u64, IslandError> {
        let required = if num_vars >= 128 {
            u128::MAX
        } else {
            1u128 << num_vars
        };
        if required > u128::from(self.limit) {
            return Err(IslandError::StateBudget {
                required,
                limit: self.limit,
            });
        }
        Ok(required as u64)
    }
}

impl Default for Guard {
    fn default() -> Self {
        Guard::states(Guard::DEFAULT_STATES)
    }
}

/// Upper bound on the number of variable orderings the ordering search tries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderingGuard {
    pub limit: u64,
}

impl OrderingGuard {
    /// 10!
    pub const DEFAULT: u64 = 3_628_800;

    pub fn new(limit: u64) -> Self {
        OrderingGuard { limit }
    }

    /// `k!` if within budget.
    pub fn check(self, k: usize) -> Result<u64, IslandError> {
        let mut required: u128 = 1;
        for i in 2..=k as u128 {
            required = required.saturating_mul(i);
        }
        if required > u128::from(self.limit) {
            return Err(IslandError::PermutationBudget {
                required,
                limit: self.limit,
            });
        }
        Ok(required as u64)
    }
}

impl Default for OrderingGuard {
    fn default() -> Self {
        OrderingGuard::new(OrderingGuard::DEFAULT)
    }
}
