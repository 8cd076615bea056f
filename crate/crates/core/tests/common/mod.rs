#![allow(dead_code)]

use std::collections::VecDeque;
use std::path::PathBuf;

use island_core::cnf::{standardize_clause, Clause, Formula, Literal, State};
use island_core::VariableOrdering;
use proptest::prelude::*;

/// Raw literal lists over `1..=num_vars`, standardized; tautologies skipped.
pub fn clause_list(num_vars: u32, max_clauses: usize, max_len: usize) -> BoxedStrategy<Vec<Clause>> {
    let lit = (1..=num_vars, any::<bool>()).prop_map(|(v, p)| Literal::new(v, p));
    let raw = prop::collection::vec(lit, 1..=max_len);
    prop::collection::vec(raw, 0..=max_clauses)
        .prop_map(|rows| {
            rows.into_iter()
                .filter_map(|r| standardize_clause(r).unwrap().clause())
                .collect()
        })
        .boxed()
}

pub fn formula(max_vars: u32, max_clauses: usize, max_len: usize) -> BoxedStrategy<Formula> {
    (1..=max_vars)
        .prop_flat_map(move |n| clause_list(n, max_clauses, max_len).prop_map(move |c| (n, c)))
        .prop_map(|(n, c)| Formula::new(n as usize, c).unwrap())
        .boxed()
}

pub fn state(width: usize) -> impl Strategy<Value = State> {
    prop::collection::vec(any::<bool>(), width).prop_map(|b| State::from_bools(&b))
}

pub fn ordering(num_vars: usize) -> impl Strategy<Value = VariableOrdering> {
    Just((1..=num_vars as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|seq| VariableOrdering::from_sequence(seq).unwrap())
}

/// Every satisfying state, found by evaluating each assignment through
/// `Formula::evaluate` on a freshly built `State`.
pub fn oracle_solutions(f: &Formula) -> Vec<State> {
    let n = f.num_vars();
    (0..1u64 << n)
        .map(|bits| {
            let values: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
            State::from_bools(&values)
        })
        .filter(|s| f.evaluate(s).unwrap())
        .collect()
}

/// Connectivity by breadth-first search over all solution pairs at Hamming
/// distance one.
pub fn oracle_is_island(f: &Formula) -> bool {
    let sols = oracle_solutions(f);
    if sols.len() <= 1 {
        return true;
    }
    let mut seen = vec![false; sols.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for j in 0..sols.len() {
            if !seen[j] && sols[i].hamming_distance(&sols[j]).unwrap() == 1 {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}
