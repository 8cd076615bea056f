use serde::{Deserialize, Serialize};

use super::{enumerate_clauses, Guard, IslandError, SolutionSpace};
use crate::cnf::{Clause, Formula, State};

/// Disjoint-set forest with path halving and union by size.
struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
    components: usize,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        self.components -= 1;
    }
}

/// Result of a brute-force connectivity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IslandCheck {
    pub is_island: bool,
    pub solutions: u64,
    /// Connected components of the flip graph on the solutions.
    pub components: usize,
    /// Two solutions in different components when `is_island` is false.
    pub witness: Option<(State, State)>,
}

/// Decides whether the solutions of `f` are connected under single flips.
///
/// Zero or one solution counts as a (trivial) island.
pub fn is_island(f: &Formula, guard: Guard) -> Result<IslandCheck, IslandError> {
    is_island_clauses(f.clauses(), f.num_vars(), guard)
}

pub fn is_island_clauses(
    clauses: &[Clause],
    num_vars: usize,
    guard: Guard,
) -> Result<IslandCheck, IslandError> {
    let space = enumerate_clauses(clauses, num_vars, guard)?;
    Ok(connectivity(&space))
}

/// Components of the flip graph over an enumerated solution space.
///
/// Edges are found by probing each solution's `num_vars` neighbours against
/// the sorted solution list, so the work is `O(|sol| * n * log |sol|)`.
pub fn connectivity(space: &SolutionSpace) -> IslandCheck {
    let states = space.packed();
    let n = states.len();
    if n <= 1 {
        return IslandCheck {
            is_island: true,
            solutions: n as u64,
            components: n,
            witness: None,
        };
    }
    let mut dsu = DisjointSets::new(n);
    for (i, &s) in states.iter().enumerate() {
        for bit in 0..space.num_vars() {
            let t = s ^ (1u64 << bit);
            // Each edge is seen from both ends; take it from the smaller one.
            if t > s {
                if let Ok(j) = states.binary_search(&t) {
                    dsu.union(i as u32, j as u32);
                }
            }
        }
    }
    let witness = if dsu.components > 1 {
        let root0 = dsu.find(0);
        (1..n as u32).find(|&j| dsu.find(j) != root0).map(|j| {
            (
                State::from_u64(states[0], space.num_vars()),
                State::from_u64(states[j as usize], space.num_vars()),
            )
        })
    } else {
        None
    };
    IslandCheck {
        is_island: dsu.components == 1,
        solutions: n as u64,
        components: dsu.components,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_pair_is_an_island() {
        let m = Formula::from_dimacs_rows(3, &[&[1, 2, -3], &[-1, -2, 3]]);
        let check = is_island(&m, Guard::default()).unwrap();
        assert!(check.is_island);
        assert_eq!(check.solutions, 6);
    }

    #[test]
    fn all_equal_constraint_is_disconnected() {
        // x1 <-> x2 <-> x3: solutions 000 and 111 only.
        let f = Formula::from_dimacs_rows(3, &[&[-1, 2], &[1, -2], &[-2, 3], &[2, -3]]);
        let check = is_island(&f, Guard::default()).unwrap();
        assert!(!check.is_island);
        assert_eq!(check.components, 2);
        let (a, b) = check.witness.unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("000".into(), "111".into()));
    }

    #[test]
    fn trivial_islands() {
        let unsat = Formula::from_dimacs_rows(1, &[&[1], &[-1]]);
        let check = is_island(&unsat, Guard::default()).unwrap();
        assert!(check.is_island);
        assert_eq!(check.solutions, 0);
        let single = Formula::from_dimacs_rows(2, &[&[1], &[-2]]);
        assert!(is_island(&single, Guard::default()).unwrap().is_island);
    }
}
