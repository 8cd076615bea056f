use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{is_island_clauses, Guard, IslandError};
use crate::cnf::{Clause, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompositionalOptions {
    /// Up to this many clauses every nonempty subset is checked.
    pub exhaustive_limit: usize,
    /// Random subsets drawn above the limit.
    pub samples: usize,
    pub rng_seed: u64,
}

impl Default for CompositionalOptions {
    fn default() -> Self {
        CompositionalOptions {
            exhaustive_limit: 12,
            samples: 4096,
            rng_seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionalityCheck {
    /// In exhaustive mode, whether every subset is an island. In sampled
    /// mode only "no counterexample found".
    pub holds: bool,
    pub exhaustive: bool,
    pub subsets_checked: u64,
    /// Clause indices of a subset that is not an island.
    pub counterexample: Option<Vec<usize>>,
}

impl CompositionalityCheck {
    pub fn verdict(&self) -> &'static str {
        match (self.holds, self.exhaustive) {
            (true, true) => "compositional",
            (true, false) => "no counterexample found (sampled)",
            (false, _) => "not compositional",
        }
    }
}

/// Checks that every subset of `f`'s clauses is an island.
pub fn is_compositional(f: &Formula, guard: Guard) -> Result<CompositionalityCheck, IslandError> {
    is_compositional_with(f, guard, CompositionalOptions::default())
}

pub fn is_compositional_with(
    f: &Formula,
    guard: Guard,
    opts: CompositionalOptions,
) -> Result<CompositionalityCheck, IslandError> {
    let clauses = f.clauses();
    let m = clauses.len();
    guard.check_states(f.num_vars())?;
    let mut checked = 0u64;
    let mut check = |picked: Vec<usize>| -> Result<Option<Vec<usize>>, IslandError> {
        checked += 1;
        let subset: Vec<Clause> = picked.iter().map(|&i| clauses[i].clone()).collect();
        let res = is_island_clauses(&subset, f.num_vars(), guard)?;
        Ok((!res.is_island).then_some(picked))
    };

    let exhaustive = m <= opts.exhaustive_limit;
    let mut counterexample = None;
    if exhaustive {
        for mask in 1u64..(1u64 << m) {
            let picked = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            if let Some(bad) = check(picked)? {
                counterexample = Some(bad);
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
        if let Some(bad) = check((0..m).collect())? {
            counterexample = Some(bad);
        }
        for _ in 0..opts.samples {
            if counterexample.is_some() {
                break;
            }
            let picked: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
            if picked.is_empty() {
                continue;
            }
            counterexample = check(picked)?;
        }
    }
    Ok(CompositionalityCheck {
        holds: counterexample.is_none(),
        exhaustive,
        subsets_checked: checked,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_is_compositional() {
        let m = Formula::from_dimacs_rows(3, &[&[1, 2, -3], &[-1, -2, 3]]);
        let c = is_compositional(&m, Guard::default()).unwrap();
        assert!(c.holds && c.exhaustive);
        assert_eq!(c.subsets_checked, 3);
    }

    #[test]
    fn empty_formula_is_compositional() {
        let f = Formula::from_dimacs_rows(2, &[]);
        assert!(is_compositional(&f, Guard::default()).unwrap().holds);
    }

    #[test]
    fn disconnected_subset_is_reported() {
        // The full set is an island (single solution 000), but x1 <-> x2 alone
        // splits into {000, 001} and {110, 111}.
        let f = Formula::from_dimacs_rows(3, &[&[-1, 2], &[1, -2], &[-2, 3], &[2, -3], &[-1]]);
        let c = is_compositional(&f, Guard::default()).unwrap();
        assert!(!c.holds);
        assert_eq!(c.counterexample, Some(vec![0, 1]));
    }

    #[test]
    fn sampled_mode_is_labelled() {
        let rows: Vec<Vec<i64>> = (1..=14).map(|v| vec![v]).collect();
        let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let f = Formula::from_dimacs_rows(14, &rows);
        let opts = CompositionalOptions {
            samples: 50,
            ..Default::default()
        };
        let c = is_compositional_with(&f, Guard::default(), opts).unwrap();
        assert!(c.holds && !c.exhaustive);
        assert_eq!(c.verdict(), "no counterexample found (sampled)");
    }
}
