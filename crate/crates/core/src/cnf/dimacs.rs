//! DIMACS CNF reader and writer.
//!
//! The reader accepts comment lines (`c ...`), a single `p cnf <vars> <clauses>`
//! header, and clauses as whitespace-separated integers terminated by `0`. A
//! clause may span lines and a line may hold several clauses. Parsing stops
//! at a `%` line, which is how SATLIB files mark their footer.
//!
//! Every clause is put into standard form on the way in. Tautologies are
//! dropped and counted; an empty clause is an error since it makes the
//! instance trivially unsatisfiable.

use std::fmt::Write as _;
use std::path::Path;

use super::{standardize_clause, CnfError, Formula, Literal, Standardized};

/// Comment prefix the writer uses to carry the instance name.
const NAME_TAG: &str = "c name:";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dimacs {
    pub formula: Formula,
    /// Clauses dropped because they contained a complementary pair.
    pub tautologies_dropped: usize,
    /// Clause count from the `p cnf` header (advisory).
    pub declared_clauses: usize,
    /// Clauses read from the body, tautologies included.
    pub parsed_clauses: usize,
}

impl Dimacs {
    pub fn header_mismatch(&self) -> bool {
        self.declared_clauses != self.parsed_clauses
    }
}

pub fn parse_dimacs(text: &str) -> Result<Dimacs, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut name: Option<String> = None;
    let mut clauses = Vec::new();
    let mut tautologies = 0usize;
    let mut parsed = 0usize;
    let mut pending: Vec<Literal> = Vec::new();
    let mut pending_line = 0usize;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('c') {
            if name.is_none() {
                if let Some(rest) = line.strip_prefix(NAME_TAG) {
                    name = Some(rest.trim().to_string());
                }
            }
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(CnfError::Header {
                    line: line_no,
                    msg: "duplicate problem line".into(),
                });
            }
            header = Some(parse_header(line, line_no)?);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(CnfError::Header {
                line: line_no,
                msg: "clause data before `p cnf` line".into(),
            });
        };
        for tok in line.split_whitespace() {
            let value: i64 = tok.parse().map_err(|_| CnfError::Syntax {
                line: line_no,
                msg: format!("expected an integer, found `{tok}`"),
            })?;
            if value == 0 {
                parsed += 1;
                match standardize_clause(pending.drain(..)) {
                    Ok(Standardized::Clause(c)) => clauses.push(c),
                    Ok(Standardized::Tautology) => tautologies += 1,
                    Err(CnfError::EmptyClause) => {
                        return Err(CnfError::EmptyClauseAt { line: line_no })
                    }
                    Err(e) => return Err(e),
                }
                continue;
            }
            if value.unsigned_abs() > num_vars as u64 {
                return Err(CnfError::LiteralOutOfRange {
                    line: line_no,
                    literal: value,
                    num_vars,
                });
            }
            if pending.is_empty() {
                pending_line = line_no;
            }
            pending.push(Literal::from_dimacs(value).expect("nonzero"));
        }
    }

    let Some((num_vars, declared)) = header else {
        return Err(CnfError::Header {
            line: 0,
            msg: "missing `p cnf` line".into(),
        });
    };
    if !pending.is_empty() {
        return Err(CnfError::Unterminated { line: pending_line });
    }
    if declared != parsed {
        log::warn!("header declares {declared} clauses, found {parsed}");
    }
    let mut formula = Formula::new(num_vars, clauses)?;
    if let Some(n) = name {
        formula = formula.with_name(n);
    }
    Ok(Dimacs {
        formula,
        tautologies_dropped: tautologies,
        declared_clauses: declared,
        parsed_clauses: parsed,
    })
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize), CnfError> {
    let bad = |msg: &str| CnfError::Header {
        line: line_no,
        msg: msg.to_string(),
    };
    let mut it = line.split_whitespace();
    if it.next() != Some("p") || it.next() != Some("cnf") {
        return Err(bad("expected `p cnf <vars> <clauses>`"));
    }
    let vars = it
        .next()
        .and_then(|t| t.parse::<usize>().ok())
        .ok_or_else(|| bad("bad variable count"))?;
    let clauses = it
        .next()
        .and_then(|t| t.parse::<usize>().ok())
        .ok_or_else(|| bad("bad clause count"))?;
    if it.next().is_some() {
        return Err(bad("trailing tokens after clause count"));
    }
    if vars == 0 {
        return Err(bad("variable count must be positive"));
    }
    Ok((vars, clauses))
}

/// Reads a DIMACS file. The instance is named after the file stem unless the
/// file carries its own name comment.
pub fn read_dimacs(path: impl AsRef<Path>) -> Result<Dimacs, CnfError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CnfError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut parsed = parse_dimacs(&text)?;
    if parsed.formula.name().is_none() {
        if let Some(stem) = path.file_stem() {
            parsed.formula = parsed.formula.with_name(stem.to_string_lossy());
        }
    }
    Ok(parsed)
}

/// Serializes `formula`: optional name comment, header, one clause per line.
pub fn write_dimacs(formula: &Formula) -> String {
    let mut out = String::new();
    if let Some(name) = formula.name() {
        let _ = writeln!(out, "{NAME_TAG} {name}");
    }
    let _ = writeln!(out, "p cnf {} {}", formula.num_vars(), formula.len());
    for c in formula.clauses() {
        let _ = writeln!(out, "{c}");
    }
    out
}
