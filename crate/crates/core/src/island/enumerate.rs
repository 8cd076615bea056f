use rayon::prelude::*;

use super::{Guard, IslandError};
use crate::cnf::{Clause, Formula, State};

/// States per parallel work unit.
const CHUNK: u64 = 1 << 14;

/// A clause as two bit masks over packed states: satisfied iff the state has
/// a 1 under `pos` or a 0 under `neg`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PackedClause {
    pos: u64,
    neg: u64,
}

impl PackedClause {
    pub(crate) fn new(c: &Clause) -> Self {
        let (mut pos, mut neg) = (0u64, 0u64);
        for l in c.literals() {
            let bit = 1u64 << (l.var() - 1);
            if l.is_positive() {
                pos |= bit;
            } else {
                neg |= bit;
            }
        }
        PackedClause { pos, neg }
    }

    #[inline]
    pub(crate) fn holds(self, state: u64) -> bool {
        (state & self.pos) | (!state & self.neg) != 0
    }
}

pub(crate) fn pack(clauses: &[Clause]) -> Vec<PackedClause> {
    clauses.iter().map(PackedClause::new).collect()
}

#[inline]
pub(crate) fn holds_all(packed: &[PackedClause], state: u64) -> bool {
    packed.iter().all(|c| c.holds(state))
}

/// Every satisfying assignment of a clause list, in ascending packed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    num_vars: usize,
    states: Vec<u64>,
}

impl SolutionSpace {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Packed states, bit `i` = variable `i + 1`, sorted ascending.
    pub fn packed(&self) -> &[u64] {
        &self.states
    }

    pub fn contains(&self, state: &State) -> bool {
        state.width() == self.num_vars
            && state
                .to_u64()
                .is_some_and(|s| self.states.binary_search(&s).is_ok())
    }

    pub fn iter(&self) -> impl Iterator<Item = State> + '_ {
        self.states
            .iter()
            .map(move |&s| State::from_u64(s, self.num_vars))
    }
}

/// Enumerates `sol(f)` by checking all `2^num_vars` states.
pub fn enumerate_solutions(f: &Formula, guard: Guard) -> Result<SolutionSpace, IslandError> {
    enumerate_clauses(f.clauses(), f.num_vars(), guard)
}

/// As [`enumerate_solutions`] for a bare clause list over `num_vars` variables.
pub fn enumerate_clauses(
    clauses: &[Clause],
    num_vars: usize,
    guard: Guard,
) -> Result<SolutionSpace, IslandError> {
    let total = guard.check_states(num_vars)?;
    check_range(clauses, num_vars)?;
    let packed = pack(clauses);
    let chunks = total.div_ceil(CHUNK);
    let parts: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let hi = ((k + 1) * CHUNK).min(total);
            (k * CHUNK..hi)
                .filter(|&s| holds_all(&packed, s))
                .collect()
        })
        .collect();
    Ok(SolutionSpace {
        num_vars,
        states: parts.concat(),
    })
}

/// `|sol|` for a clause list without materializing the solutions.
pub fn count_models(
    clauses: &[Clause],
    num_vars: usize,
    guard: Guard,
) -> Result<u64, IslandError> {
    let total = guard.check_states(num_vars)?;
    check_range(clauses, num_vars)?;
    let packed = pack(clauses);
    let chunks = total.div_ceil(CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .map(|k| {
            let hi = ((k + 1) * CHUNK).min(total);
            (k * CHUNK..hi).filter(|&s| holds_all(&packed, s)).count() as u64
        })
        .sum())
}

fn check_range(clauses: &[Clause], num_vars: usize) -> Result<(), IslandError> {
    match clauses.iter().map(Clause::max_var).max() {
        Some(v) if v as usize > num_vars => Err(IslandError::VariableOutOfRange {
            var: v,
            num_vars,
        }),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_binary_clause_has_three_models() {
        let f = Formula::from_dimacs_rows(2, &[&[1, 2]]);
        let sol = enumerate_solutions(&f, Guard::default()).unwrap();
        let mut got: Vec<String> = sol.iter().map(|s| s.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["01", "10", "11"]);
        assert_eq!(count_models(f.clauses(), 2, Guard::default()).unwrap(), 3);
    }

    #[test]
    fn guard_refuses_with_required_budget() {
        let f = Formula::from_dimacs_rows(10, &[&[1]]);
        match enumerate_solutions(&f, Guard::states(512)) {
            Err(IslandError::StateBudget { required, limit }) => {
                assert_eq!(required, 1024);
                assert_eq!(limit, 512);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn spans_several_chunks() {
        // x1 forced true over 16 variables: half of 2^16.
        let f = Formula::from_dimacs_rows(16, &[&[1]]);
        let sol = enumerate_solutions(&f, Guard::default()).unwrap();
        assert_eq!(sol.len(), 1 << 15);
        assert!(sol.packed().windows(2).all(|w| w[0] < w[1]));
        assert!(sol.packed().iter().all(|s| s & 1 == 1));
    }

    #[test]
    fn empty_formula_admits_everything() {
        assert_eq!(count_models(&[], 5, Guard::default()).unwrap(), 32);
    }
}
