use std::cmp::Ordering;
use std::fmt;
use std::ops::Not;

use serde::{Deserialize, Serialize};

/// A variable (1-based) together with a polarity.
///
/// Literals order by variable first, positive before negative, which is the
/// order clauses store and print them in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    var: u32,
    positive: bool,
}

impl Literal {
    /// # Panics
    ///
    /// If `var` is zero.
    pub fn new(var: u32, positive: bool) -> Self {
        assert!(var >= 1, "variables are 1-based");
        Literal { var, positive }
    }

    pub fn pos(var: u32) -> Self {
        Literal::new(var, true)
    }

    pub fn neg(var: u32) -> Self {
        Literal::new(var, false)
    }

    /// Builds a literal from a nonzero DIMACS integer.
    pub fn from_dimacs(value: i64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        let var = u32::try_from(value.unsigned_abs()).ok()?;
        Some(Literal {
            var,
            positive: value > 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            i64::from(self.var)
        } else {
            -i64::from(self.var)
        }
    }

    #[inline]
    pub fn var(self) -> u32 {
        self.var
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.positive
    }

    #[inline]
    pub fn complement(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// Dense index: `2*(var-1)` for the positive literal, `+1` for the negative.
    #[inline]
    pub fn code(self) -> usize {
        ((self.var as usize - 1) << 1) | usize::from(!self.positive)
    }

    #[inline]
    pub fn from_code(code: usize) -> Self {
        Literal {
            var: (code >> 1) as u32 + 1,
            positive: code & 1 == 0,
        }
    }
}

impl Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        self.complement()
    }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code().cmp(&other.code())
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "~x{}", self.var)
        }
    }
}
