//! Island extraction for CNF formulas.
//!
//! An *island* is a set of clauses whose solutions are connected under
//! single-variable flips. This crate decides island-ness by brute force on
//! small instances, implements the sufficient conditions (non-conflicting and
//! primal non-conflicting clause sets), greedily extracts a large primal
//! non-conflicting subset from an arbitrary formula, and runs a local search
//! that never leaves the extracted island.

pub mod cnf;
pub mod confined;
pub mod extract;
pub mod harness;
pub mod island;

pub use cnf::{Clause, CnfError, Formula, Literal, State};
pub use extract::{island_extract, ExtractionResult, Heuristic};
pub use island::{Guard, OrderingGuard, VariableOrdering};
