use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{IslandError, OrderingGuard, VariableOrdering};
use crate::cnf::{Clause, Literal, State};

/// True iff no variable occurs in both polarities anywhere in `clauses`.
pub fn is_non_conflicting(clauses: &[Clause]) -> bool {
    let mut seen: BTreeSet<Literal> = BTreeSet::new();
    for l in clauses.iter().flat_map(|c| c.literals()) {
        if seen.contains(&l.complement()) {
            return false;
        }
        seen.insert(*l);
    }
    true
}

/// The literal of `c` whose variable ranks lowest under `ord`.
pub fn primal_literal(c: &Clause, ord: &VariableOrdering) -> Result<Literal, IslandError> {
    let mut best: Option<(usize, Literal)> = None;
    for &l in c.literals() {
        let r = ord.rank(l.var()).ok_or(IslandError::Unranked(l.var()))?;
        if best.is_none_or(|(br, _)| r < br) {
            best = Some((r, l));
        }
    }
    best.map(|(_, l)| l).ok_or(IslandError::EmptyClause)
}

/// The primal literals of a clause set under one ordering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalLiteralSet {
    pub literals: BTreeSet<Literal>,
    pub ordering: VariableOrdering,
}

impl PrimalLiteralSet {
    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn contains(&self, l: Literal) -> bool {
        self.literals.contains(&l)
    }

    /// Least variable (by ordering) present in both polarities, if any.
    pub fn conflict(&self) -> Option<u32> {
        self.literals
            .iter()
            .filter(|l| l.is_positive() && self.literals.contains(&l.complement()))
            .map(|l| l.var())
            .min_by_key(|&v| self.ordering.rank(v))
    }

    pub fn is_conflicting(&self) -> bool {
        self.conflict().is_some()
    }
}

pub fn primal_literal_set(
    clauses: &[Clause],
    ord: &VariableOrdering,
) -> Result<PrimalLiteralSet, IslandError> {
    let literals = clauses
        .iter()
        .map(|c| primal_literal(c, ord))
        .collect::<Result<BTreeSet<_>, _>>()?;
    Ok(PrimalLiteralSet {
        literals,
        ordering: ord.clone(),
    })
}

/// True iff the primal literal set under `ord` has no complementary pair.
pub fn is_primal_non_conflicting(
    clauses: &[Clause],
    ord: &VariableOrdering,
) -> Result<bool, IslandError> {
    Ok(!primal_literal_set(clauses, ord)?.is_conflicting())
}

/// A solution built from the primal literals: each primal literal is made
/// true, every other variable gets `default`.
pub fn seed_solution(
    clauses: &[Clause],
    ord: &VariableOrdering,
    num_vars: usize,
    default: bool,
) -> Result<State, IslandError> {
    let plit = primal_literal_set(clauses, ord)?;
    if let Some(var) = plit.conflict() {
        return Err(IslandError::PrimalConflict(var));
    }
    let mut s = State::filled(num_vars, default);
    for l in &plit.literals {
        if l.var() as usize > num_vars {
            return Err(IslandError::VariableOutOfRange {
                var: l.var(),
                num_vars,
            });
        }
        s.set(l.var(), l.is_positive());
    }
    Ok(s)
}

/// Walks from `start` towards a state containing every primal literal,
/// flipping at each step the lowest-ranked variable that disagrees with the
/// primal set. Returns the visited states, `start` first.
///
/// When the set is primal non-conflicting and `start` is a solution, every
/// state on the path is a solution and the path has at most `|pLit| + 1`
/// entries.
pub fn primal_path(
    clauses: &[Clause],
    ord: &VariableOrdering,
    start: &State,
) -> Result<Vec<State>, IslandError> {
    let plit = primal_literal_set(clauses, ord)?;
    if let Some(var) = plit.conflict() {
        return Err(IslandError::PrimalConflict(var));
    }
    let mut targets: Vec<Literal> = plit.literals.iter().copied().collect();
    targets.sort_by_key(|l| ord.rank(l.var()));
    let mut path = vec![start.clone()];
    let mut cur = start.clone();
    for l in targets {
        if l.var() as usize > cur.width() {
            return Err(IslandError::VariableOutOfRange {
                var: l.var(),
                num_vars: cur.width(),
            });
        }
        if !cur.satisfies(l) {
            cur.flip(l.var());
            path.push(cur.clone());
        }
    }
    Ok(path)
}

/// Outcome of the exhaustive search for a primal non-conflicting ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingSearch {
    pub ordering: Option<VariableOrdering>,
    /// Orderings of the occurring variables examined.
    pub checked: u64,
}

/// Tries every ordering of the variables that occur in `clauses` (others are
/// appended ascending) and returns the first under which the set is primal
/// non-conflicting.
pub fn exists_primal_ordering(
    clauses: &[Clause],
    num_vars: usize,
    guard: OrderingGuard,
) -> Result<OrderingSearch, IslandError> {
    let occurring: Vec<u32> = clauses
        .iter()
        .flat_map(|c| c.variables())
        .sorted_unstable()
        .dedup()
        .collect();
    if let Some(&v) = occurring.last() {
        if v as usize > num_vars {
            return Err(IslandError::VariableOutOfRange { var: v, num_vars });
        }
    }
    guard.check(occurring.len())?;

    // Rank table indexed by variable, reused across permutations.
    let mut rank = vec![usize::MAX; num_vars + 1];
    // Per variable: 1 = positive primal seen, 2 = negative primal seen.
    let mut polarity = vec![0u8; num_vars + 1];
    let mut checked = 0u64;
    for perm in occurring.iter().copied().permutations(occurring.len()) {
        checked += 1;
        for (pos, &v) in perm.iter().enumerate() {
            rank[v as usize] = pos;
        }
        polarity.iter_mut().for_each(|p| *p = 0);
        let mut conflict = false;
        for c in clauses {
            let p = c
                .literals()
                .iter()
                .min_by_key(|l| rank[l.var() as usize])
                .expect("clauses are nonempty");
            let mark = &mut polarity[p.var() as usize];
            *mark |= if p.is_positive() { 1 } else { 2 };
            if *mark == 3 {
                conflict = true;
                break;
            }
        }
        if !conflict {
            let ordering = VariableOrdering::with_prefix(&perm, num_vars)?;
            return Ok(OrderingSearch {
                ordering: Some(ordering),
                checked,
            });
        }
    }
    Ok(OrderingSearch {
        ordering: None,
        checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl(v: &[i64]) -> Clause {
        Clause::from_dimacs(v)
    }

    fn mirror() -> Vec<Clause> {
        vec![cl(&[1, 2, -3]), cl(&[-1, -2, 3])]
    }

    #[test]
    fn non_conflicting_examples() {
        assert!(is_non_conflicting(&[cl(&[1, 2]), cl(&[2, 3])]));
        assert!(!is_non_conflicting(&[cl(&[1, 2]), cl(&[-1, 3])]));
        assert!(is_non_conflicting(&[]));
    }

    #[test]
    fn primal_literal_examples() {
        let nat = VariableOrdering::natural(5);
        assert_eq!(primal_literal(&cl(&[2, -5, 4]), &nat).unwrap(), Literal::pos(2));
        assert_eq!(primal_literal(&cl(&[-3]), &nat).unwrap(), Literal::neg(3));
        let rev = VariableOrdering::from_sequence(vec![3, 2, 1]).unwrap();
        assert_eq!(primal_literal(&cl(&[1, 3]), &rev).unwrap(), Literal::pos(3));
        let short = VariableOrdering::natural(2);
        assert!(matches!(
            primal_literal(&cl(&[1, 3]), &short),
            Err(IslandError::Unranked(3))
        ));
    }

    #[test]
    fn mirror_primal_set_conflicts_under_natural_order() {
        let nat = VariableOrdering::natural(3);
        let plit = primal_literal_set(&mirror(), &nat).unwrap();
        assert_eq!(
            plit.literals.iter().copied().collect::<Vec<_>>(),
            vec![Literal::pos(1), Literal::neg(1)]
        );
        assert!(!is_primal_non_conflicting(&mirror(), &nat).unwrap());
        assert!(matches!(
            seed_solution(&mirror(), &nat, 3, true),
            Err(IslandError::PrimalConflict(1))
        ));
    }

    #[test]
    fn primal_non_conflicting_but_conflicting() {
        let set = [cl(&[1, 2]), cl(&[-2, 3])];
        let nat = VariableOrdering::natural(3);
        assert!(!is_non_conflicting(&set));
        assert!(is_primal_non_conflicting(&set, &nat).unwrap());
        let plit = primal_literal_set(&set, &nat).unwrap();
        assert_eq!(
            plit.literals.into_iter().collect::<Vec<_>>(),
            vec![Literal::pos(1), Literal::neg(2)]
        );
    }

    #[test]
    fn seed_for_unit_clause() {
        let s = seed_solution(&[cl(&[-2])], &VariableOrdering::natural(2), 2, false).unwrap();
        assert_eq!(s.to_string(), "00");
    }

    #[test]
    fn mirror_has_no_primal_ordering() {
        let search = exists_primal_ordering(&mirror(), 3, OrderingGuard::default()).unwrap();
        assert_eq!(search.ordering, None);
        assert_eq!(search.checked, 6);
    }

    #[test]
    fn conflicting_pair_has_an_ordering() {
        let set = [cl(&[1, 2]), cl(&[-1, 3])];
        let search = exists_primal_ordering(&set, 3, OrderingGuard::default()).unwrap();
        let ord = search.ordering.unwrap();
        assert!(is_primal_non_conflicting(&set, &ord).unwrap());
        assert!(!ord.less(1, 2) || !ord.less(1, 3));
    }

    #[test]
    fn permutation_guard() {
        let set = [cl(&[1, 2, 3, 4, 5])];
        assert!(matches!(
            exists_primal_ordering(&set, 5, OrderingGuard::new(100)),
            Err(IslandError::PermutationBudget { required: 120, .. })
        ));
    }

    #[test]
    fn primal_path_reaches_the_primal_set() {
        let set = [cl(&[1, 2]), cl(&[-2, 3])];
        let nat = VariableOrdering::natural(3);
        let start: State = "011".parse().unwrap();
        let path = primal_path(&set, &nat, &start).unwrap();
        let last = path.last().unwrap();
        assert!(last.satisfies(Literal::pos(1)) && last.satisfies(Literal::neg(2)));
        assert!(path.iter().all(|s| crate::cnf::satisfies_all(&set, s)));
    }
}
