use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CnfError, Literal, State};

/// A disjunction of literals in standard form: sorted, no repeated literal,
/// no variable in both polarities, never empty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Literal>", into = "Vec<Literal>")]
pub struct Clause {
    lits: Vec<Literal>,
}

/// Outcome of putting a raw literal list into standard form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Standardized {
    Clause(Clause),
    /// Some variable occurs in both polarities; the disjunction is always true.
    Tautology,
}

impl Standardized {
    pub fn clause(self) -> Option<Clause> {
        match self {
            Standardized::Clause(c) => Some(c),
            Standardized::Tautology => None,
        }
    }
}

/// Merges duplicate literals and detects complementary pairs.
pub fn standardize_clause<I>(raw: I) -> Result<Standardized, CnfError>
where
    I: IntoIterator<Item = Literal>,
{
    let mut lits: Vec<Literal> = raw.into_iter().collect();
    if lits.is_empty() {
        return Err(CnfError::EmptyClause);
    }
    lits.sort_unstable();
    lits.dedup();
    // After sorting, x and ~x are adjacent.
    if lits.windows(2).any(|w| w[0].var() == w[1].var()) {
        return Ok(Standardized::Tautology);
    }
    Ok(Standardized::Clause(Clause { lits }))
}

impl Clause {
    /// Standardizes `raw`, treating a tautology as an error.
    pub fn new<I>(raw: I) -> Result<Self, CnfError>
    where
        I: IntoIterator<Item = Literal>,
    {
        standardize_clause(raw)?
            .clause()
            .ok_or(CnfError::TautologicalClause)
    }

    /// Convenience constructor from DIMACS integers.
    ///
    /// # Panics
    ///
    /// On zero, empty input, or a tautology. Meant for tests and literals in code.
    pub fn from_dimacs(values: &[i64]) -> Self {
        let lits = values
            .iter()
            .map(|&v| Literal::from_dimacs(v).expect("zero is not a literal"));
        Clause::new(lits).expect("not a standard-form clause")
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    /// The clause's literal on `var`, if the variable occurs.
    pub fn literal_on(&self, var: u32) -> Option<Literal> {
        self.lits.iter().copied().find(|l| l.var() == var)
    }

    pub fn variables(&self) -> impl Iterator<Item = u32> + '_ {
        self.lits.iter().map(|l| l.var())
    }

    pub fn max_var(&self) -> u32 {
        self.lits.last().map_or(0, |l| l.var())
    }

    /// True iff some literal holds under `state`.
    pub fn evaluate(&self, state: &State) -> Result<bool, CnfError> {
        if self.max_var() as usize > state.width() {
            return Err(CnfError::WidthMismatch {
                expected: self.max_var() as usize,
                found: state.width(),
            });
        }
        Ok(self.is_satisfied_by(state))
    }

    /// Unchecked evaluation; the caller guarantees the state is wide enough.
    #[inline]
    pub fn is_satisfied_by(&self, state: &State) -> bool {
        self.lits.iter().any(|&l| state.satisfies(l))
    }

    /// Number of literals true under `state`.
    pub fn true_count(&self, state: &State) -> usize {
        self.lits.iter().filter(|&&l| state.satisfies(l)).count()
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.lits).finish()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lits {
            write!(f, "{l} ")?;
        }
        f.write_str("0")
    }
}

impl TryFrom<Vec<Literal>> for Clause {
    type Error = CnfError;

    fn try_from(lits: Vec<Literal>) -> Result<Self, Self::Error> {
        Clause::new(lits)
    }
}

impl From<Clause> for Vec<Literal> {
    fn from(c: Clause) -> Self {
        c.lits
    }
}

/// True iff every clause holds under `state` (unchecked width).
pub fn satisfies_all(clauses: &[Clause], state: &State) -> bool {
    clauses.iter().all(|c| c.is_satisfied_by(state))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lits(v: &[i64]) -> Vec<Literal> {
        v.iter().map(|&x| Literal::from_dimacs(x).unwrap()).collect()
    }

    #[test]
    fn duplicates_merge() {
        let c = standardize_clause(lits(&[1, 1, 2])).unwrap().clause().unwrap();
        assert_eq!(c.literals(), &lits(&[1, 2])[..]);
    }

    #[test]
    fn complementary_pair_is_tautology() {
        assert_eq!(
            standardize_clause(lits(&[1, -1])).unwrap(),
            Standardized::Tautology
        );
        assert!(matches!(
            Clause::new(lits(&[3, 2, -3])),
            Err(CnfError::TautologicalClause)
        ));
    }

    #[test]
    fn already_standard_is_sorted() {
        let c = standardize_clause(lits(&[-3, 2])).unwrap().clause().unwrap();
        assert_eq!(c.literals(), &lits(&[2, -3])[..]);
    }

    #[test]
    fn empty_raw_is_an_error() {
        assert!(matches!(
            standardize_clause(Vec::new()),
            Err(CnfError::EmptyClause)
        ));
    }

    #[test]
    fn evaluate_examples() {
        let c = Clause::from_dimacs(&[1, -2]);
        assert!(c.evaluate(&"10".parse().unwrap()).unwrap());
        assert!(!c.evaluate(&"01".parse().unwrap()).unwrap());
        assert!(c.evaluate(&"1".parse().unwrap()).is_err());
    }
}
