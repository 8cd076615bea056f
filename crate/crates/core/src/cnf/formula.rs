use serde::{Deserialize, Serialize};

use super::{CnfError, Clause, State};

/// An ordered list of standard-form clauses over `num_vars` variables.
///
/// Clause order is significant: extraction walks clauses in this order and
/// reports them back in it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formula {
    num_vars: usize,
    clauses: Vec<Clause>,
    name: Option<String>,
}

impl Formula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        if let Some(c) = clauses.iter().find(|c| c.max_var() as usize > num_vars) {
            return Err(CnfError::VariableOutOfRange {
                var: u64::from(c.max_var()),
                num_vars,
            });
        }
        Ok(Formula {
            num_vars,
            clauses,
            name: None,
        })
    }

    /// Builds a formula from rows of DIMACS integers.
    ///
    /// # Panics
    ///
    /// On any malformed clause. Intended for tests and literals in code.
    pub fn from_dimacs_rows(num_vars: usize, rows: &[&[i64]]) -> Self {
        let clauses = rows.iter().map(|r| Clause::from_dimacs(r)).collect();
        Formula::new(num_vars, clauses).expect("variable out of range")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Same variable count and name, different clause list.
    pub fn sub_formula(&self, clauses: Vec<Clause>) -> Formula {
        Formula {
            num_vars: self.num_vars,
            clauses,
            name: self.name.clone(),
        }
    }

    /// True iff every clause is satisfied.
    pub fn evaluate(&self, state: &State) -> Result<bool, CnfError> {
        state.check_width(self.num_vars)?;
        Ok(self.is_satisfied_by(state))
    }

    #[inline]
    pub fn is_satisfied_by(&self, state: &State) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied_by(state))
    }

    pub fn unsatisfied_count(&self, state: &State) -> usize {
        self.clauses
            .iter()
            .filter(|c| !c.is_satisfied_by(state))
            .count()
    }
}
