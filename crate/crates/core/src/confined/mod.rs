//! Local search restricted to an extracted island.
//!
//! A variable may be flipped only when no island clause depends on it alone,
//! so every state the search visits satisfies the island. The search itself
//! is a plain best-improvement walk over the clauses outside the island.

mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use search::{
    confined_local_search, AuditSummary, SearchConfig, SearchOutcome, SearchReport,
};

use crate::cnf::{Clause, State};
use crate::extract::ExtractionResult;

#[derive(Debug, Error)]
pub enum ConfinedError {
    #[error("state {state} falsifies island clause {clause}")]
    NotOnIsland { state: State, clause: usize },
    #[error("island mentions variable {var} but the state has width {width}")]
    Width { var: u32, width: usize },
}

/// The one-flip neighbours of `origin` that stay on the island.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfinedNeighborhood {
    pub origin: State,
    /// Variables whose flip keeps every island clause satisfied, ascending.
    pub flippable: Vec<u32>,
}

impl ConfinedNeighborhood {
    pub fn len(&self) -> usize {
        self.flippable.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flippable.is_empty()
    }

    pub fn states(&self) -> impl Iterator<Item = State> + '_ {
        self.flippable.iter().map(|&v| self.origin.flipped(v))
    }
}

/// Flippable variables of `s` with respect to `island`.
///
/// A variable is pinned exactly when some island clause has its literal on
/// that variable as the only true literal.
pub fn on_island_neighbors(
    s: &State,
    island: &[Clause],
) -> Result<ConfinedNeighborhood, ConfinedError> {
    let mut pinned = vec![false; s.width() + 1];
    for (ci, c) in island.iter().enumerate() {
        if c.max_var() as usize > s.width() {
            return Err(ConfinedError::Width {
                var: c.max_var(),
                width: s.width(),
            });
        }
        let mut sole = None;
        let mut true_count = 0;
        for &l in c.literals() {
            if s.satisfies(l) {
                true_count += 1;
                sole = Some(l.var());
            }
        }
        match true_count {
            0 => {
                return Err(ConfinedError::NotOnIsland {
                    state: s.clone(),
                    clause: ci,
                })
            }
            1 => pinned[sole.expect("one true literal") as usize] = true,
            _ => {}
        }
    }
    Ok(ConfinedNeighborhood {
        origin: s.clone(),
        flippable: (1..=s.width() as u32)
            .filter(|&v| !pinned[v as usize])
            .collect(),
    })
}

/// Size of the confined neighbourhood of an extraction's seed.
pub fn island_neighborhood_size(res: &ExtractionResult) -> usize {
    on_island_neighbors(&res.seed, &res.island)
        .expect("seed satisfies its island")
        .len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{satisfies_all, Formula};
    use crate::extract::{island_extract, Heuristic};

    #[test]
    fn binary_clause_examples() {
        let island = [Clause::from_dimacs(&[1, 2])];
        let n = on_island_neighbors(&"11".parse().unwrap(), &island).unwrap();
        assert_eq!(n.flippable, vec![1, 2]);
        let n = on_island_neighbors(&"10".parse().unwrap(), &island).unwrap();
        assert_eq!(n.flippable, vec![2]);
        assert!(n.states().all(|s| satisfies_all(&island, &s)));
    }

    #[test]
    fn off_island_state_is_rejected() {
        let island = [Clause::from_dimacs(&[1, 2])];
        assert!(matches!(
            on_island_neighbors(&"00".parse().unwrap(), &island),
            Err(ConfinedError::NotOnIsland { clause: 0, .. })
        ));
        assert!(matches!(
            on_island_neighbors(&"1".parse().unwrap(), &island),
            Err(ConfinedError::Width { .. })
        ));
    }

    #[test]
    fn empty_island_frees_every_variable() {
        let f = Formula::from_dimacs_rows(4, &[]);
        let r = island_extract(&f, Heuristic::Ratio);
        assert_eq!(island_neighborhood_size(&r), 4);
    }
}
