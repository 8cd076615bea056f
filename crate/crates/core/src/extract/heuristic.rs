use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ExtractError;
use crate::cnf::{Clause, Literal};

/// How the greedy extractor scores a candidate literal `l` from the number
/// of working clauses containing `l` and its complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Heuristic {
    /// `-#(~l)`
    #[serde(rename = "neg")]
    NegComplement,
    /// `#(l) - #(~l)`
    #[serde(rename = "diff")]
    Difference,
    /// `#(l) / #(~l)`
    #[serde(rename = "ratio")]
    Ratio,
    /// `#(l) / (#(l) + #(~l))`
    #[serde(rename = "nratio")]
    NormalizedRatio,
}

impl Heuristic {
    pub const ALL: [Heuristic; 4] = [
        Heuristic::NegComplement,
        Heuristic::Difference,
        Heuristic::Ratio,
        Heuristic::NormalizedRatio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Heuristic::NegComplement => "neg",
            Heuristic::Difference => "diff",
            Heuristic::Ratio => "ratio",
            Heuristic::NormalizedRatio => "nratio",
        }
    }

    /// Score of a literal occurring `pos` times whose complement occurs `neg`
    /// times. `pos` should be positive; only occurring literals are candidates.
    pub fn score(self, pos: u32, neg: u32) -> Score {
        let (p, n) = (i64::from(pos), i64::from(neg));
        match self {
            Heuristic::NegComplement => Score::Finite { num: -n, den: 1 },
            Heuristic::Difference => Score::Finite { num: p - n, den: 1 },
            // A zero complement count means the literal is pure: both ratio
            // forms put it above every finite score, larger counts first.
            Heuristic::Ratio | Heuristic::NormalizedRatio if neg == 0 => Score::Pure { count: pos },
            Heuristic::Ratio => Score::Finite {
                num: p,
                den: u64::from(neg),
            },
            Heuristic::NormalizedRatio => Score::Finite {
                num: p,
                den: u64::from(pos) + u64::from(neg),
            },
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Heuristic {
    type Err = ExtractError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "neg" | "neg-complement" => Ok(Heuristic::NegComplement),
            "diff" | "difference" => Ok(Heuristic::Difference),
            "ratio" => Ok(Heuristic::Ratio),
            "nratio" | "normalized-ratio" => Ok(Heuristic::NormalizedRatio),
            _ => Err(ExtractError::UnknownHeuristic(s.to_string())),
        }
    }
}

/// An exact heuristic score. Finite scores are fractions compared by
/// cross-multiplication; `Pure` ranks above every finite score.
#[derive(Clone, Copy, Debug)]
pub enum Score {
    /// `num / den` with `den > 0`.
    Finite { num: i64, den: u64 },
    /// Zero-complement tier of the ratio heuristics, ordered by `count`.
    Pure { count: u32 },
}

impl Ord for Score {
    fn cmp(&self, other: &Self) -> Ordering {
        match (*self, *other) {
            (Score::Pure { count: a }, Score::Pure { count: b }) => a.cmp(&b),
            (Score::Pure { .. }, Score::Finite { .. }) => Ordering::Greater,
            (Score::Finite { .. }, Score::Pure { .. }) => Ordering::Less,
            (Score::Finite { num: a, den: b }, Score::Finite { num: c, den: d }) => {
                (i128::from(a) * i128::from(d)).cmp(&(i128::from(c) * i128::from(b)))
            }
        }
    }
}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Score {
    fn eq(&self, other: &Score) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Score {}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Score::Finite { num, den: 1 } => write!(f, "{num}"),
            Score::Finite { num, den } => write!(f, "{num}/{den}"),
            Score::Pure { count } => write!(f, "inf({count})"),
        }
    }
}

/// `#(l)` for every literal: the number of clauses containing it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiteralCounts {
    /// Indexed by [`Literal::code`].
    counts: Vec<u32>,
}

impl LiteralCounts {
    pub fn from_clauses(clauses: &[Clause]) -> Self {
        let max_var = clauses.iter().map(Clause::max_var).max().unwrap_or(0);
        let mut counts = LiteralCounts {
            counts: vec![0; 2 * max_var as usize],
        };
        for l in clauses.iter().flat_map(|c| c.literals()) {
            counts.counts[l.code()] += 1;
        }
        counts
    }

    /// Builds counts directly, e.g. for property tests. `(literal, count)`
    /// pairs may come in any order; later pairs overwrite earlier ones.
    pub fn from_pairs<I: IntoIterator<Item = (Literal, u32)>>(pairs: I) -> Self {
        let mut counts = LiteralCounts::default();
        for (l, n) in pairs {
            counts.ensure(l.var());
            counts.counts[l.code()] = n;
        }
        counts
    }

    fn ensure(&mut self, var: u32) {
        let need = 2 * var as usize;
        if self.counts.len() < need {
            self.counts.resize(need, 0);
        }
    }

    #[inline]
    pub fn get(&self, l: Literal) -> u32 {
        self.counts.get(l.code()).copied().unwrap_or(0)
    }

    #[inline]
    pub(crate) fn decrement(&mut self, l: Literal) {
        self.counts[l.code()] -= 1;
    }

    /// Literals with a nonzero count, ascending.
    pub fn candidates(&self) -> impl Iterator<Item = Literal> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(code, _)| Literal::from_code(code))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&n| n == 0)
    }

    /// Score of `l`; errors when `l` does not occur.
    pub fn score(&self, l: Literal, h: Heuristic) -> Result<Score, ExtractError> {
        let pos = self.get(l);
        if pos == 0 {
            return Err(ExtractError::NotACandidate(l));
        }
        Ok(h.score(pos, self.get(l.complement())))
    }

    /// Highest-scoring occurring literal. Ties go to the smaller variable,
    /// then to the positive literal.
    pub fn best(&self, h: Heuristic) -> Option<Literal> {
        let mut best: Option<(Score, Literal)> = None;
        // Candidates arrive in tie-break order, so only a strict improvement wins.
        for l in self.candidates() {
            let s = h.score(self.get(l), self.get(l.complement()));
            if best.is_none_or(|(bs, _)| s > bs) {
                best = Some((s, l));
            }
        }
        best.map(|(_, l)| l)
    }
}

pub fn literal_counts(clauses: &[Clause]) -> LiteralCounts {
    LiteralCounts::from_clauses(clauses)
}

/// The literal the greedy loop would pick next from `clauses`.
pub fn best_literal(clauses: &[Clause], h: Heuristic) -> Result<Literal, ExtractError> {
    LiteralCounts::from_clauses(clauses)
        .best(h)
        .ok_or(ExtractError::NoClauses)
}

/// Score of `l` given `counts`.
pub fn heuristic_score(
    l: Literal,
    counts: &LiteralCounts,
    h: Heuristic,
) -> Result<Score, ExtractError> {
    counts.score(l, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl(v: &[i64]) -> Clause {
        Clause::from_dimacs(v)
    }

    fn sample() -> Vec<Clause> {
        vec![cl(&[1, 2]), cl(&[-1, 3]), cl(&[2, 3])]
    }

    #[test]
    fn counts_by_hand() {
        let c = literal_counts(&sample());
        assert_eq!(c.get(Literal::pos(1)), 1);
        assert_eq!(c.get(Literal::neg(1)), 1);
        assert_eq!(c.get(Literal::pos(2)), 2);
        assert_eq!(c.get(Literal::pos(3)), 2);
        assert_eq!(c.get(Literal::neg(2)), 0);
        assert_eq!(c.get(Literal::neg(3)), 0);
        assert_eq!(c.get(Literal::pos(40)), 0);
    }

    #[test]
    fn empty_and_duplicate_counts() {
        assert!(literal_counts(&[]).is_empty());
        assert_eq!(literal_counts(&[cl(&[1]), cl(&[1])]).get(Literal::pos(1)), 2);
    }

    #[test]
    fn best_literal_examples() {
        assert_eq!(best_literal(&sample(), Heuristic::Ratio).unwrap(), Literal::pos(2));
        for h in Heuristic::ALL {
            assert_eq!(best_literal(&[cl(&[1])], h).unwrap(), Literal::pos(1));
        }
        assert_eq!(
            best_literal(&[cl(&[1, 2]), cl(&[-1, 2])], Heuristic::Difference).unwrap(),
            Literal::pos(2)
        );
        assert!(matches!(
            best_literal(&[], Heuristic::Ratio),
            Err(ExtractError::NoClauses)
        ));
    }

    #[test]
    fn score_examples() {
        assert_eq!(Heuristic::Ratio.score(2, 0), Score::Pure { count: 2 });
        assert_eq!(Heuristic::Difference.score(3, 2), Score::Finite { num: 1, den: 1 });
        assert_eq!(Heuristic::NegComplement.score(3, 2), Score::Finite { num: -2, den: 1 });
        // l1: 4 vs 2, l2: 3 vs 1. 3*2 > 4*1 and 3*6 > 4*4.
        assert!(Heuristic::Ratio.score(3, 1) > Heuristic::Ratio.score(4, 2));
        assert!(Heuristic::NormalizedRatio.score(3, 1) > Heuristic::NormalizedRatio.score(4, 2));
        assert!(Score::Pure { count: 1 } > Heuristic::Ratio.score(1000, 1));
    }

    #[test]
    fn absent_literal_has_no_score() {
        let c = literal_counts(&sample());
        assert!(matches!(
            heuristic_score(Literal::neg(2), &c, Heuristic::Ratio),
            Err(ExtractError::NotACandidate(_))
        ));
    }

    #[test]
    fn heuristic_names_parse() {
        for h in Heuristic::ALL {
            assert_eq!(h.name().parse::<Heuristic>().unwrap(), h);
            let json = serde_json::to_string(&h).unwrap();
            assert_eq!(json, format!("\"{}\"", h.name()));
        }
        assert!("best".parse::<Heuristic>().is_err());
    }
}
