//! CNF data model: literals, standard-form clauses, formulas, total
//! assignments and their Hamming neighbourhoods, plus DIMACS I/O.

mod clause;
mod dimacs;
mod formula;
mod literal;
mod state;

use thiserror::Error;

pub use clause::{satisfies_all, standardize_clause, Clause, Standardized};
pub use dimacs::{parse_dimacs, read_dimacs, write_dimacs, Dimacs};
pub use formula::Formula;
pub use literal::Literal;
pub use state::{PartialValuation, State};

#[derive(Debug, Error)]
pub enum CnfError {
    #[error("empty clause")]
    EmptyClause,
    #[error("line {line}: empty clause, instance is trivially unsatisfiable")]
    EmptyClauseAt { line: usize },
    #[error("clause contains a complementary pair")]
    TautologicalClause,
    #[error("line {line}: {msg}")]
    Header { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: literal {literal} exceeds declared variable count {num_vars}")]
    LiteralOutOfRange {
        line: usize,
        literal: i64,
        num_vars: usize,
    },
    #[error("line {line}: clause not terminated by 0")]
    Unterminated { line: usize },
    #[error("variable {var} outside 1..={num_vars}")]
    VariableOutOfRange { var: u64, num_vars: usize },
    #[error("state width {found} does not match {expected} variables")]
    WidthMismatch { expected: usize, found: usize },
    #[error("invalid state character {0:?}, expected '0' or '1'")]
    BadStateChar(char),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
