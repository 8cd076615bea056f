use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CnfError, Literal};

const WORD: usize = 64;

/// A total assignment over variables `1..=width`, stored as packed bits.
///
/// Bit `i` holds the value of variable `i + 1`. The text form is one `0`/`1`
/// character per variable, variable 1 first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct State {
    width: usize,
    words: Vec<u64>,
}

impl State {
    pub fn zeros(width: usize) -> Self {
        State {
            width,
            words: vec![0; width.div_ceil(WORD)],
        }
    }

    pub fn ones(width: usize) -> Self {
        let mut s = State {
            width,
            words: vec![u64::MAX; width.div_ceil(WORD)],
        };
        s.clear_tail();
        s
    }

    pub fn filled(width: usize, value: bool) -> Self {
        if value {
            State::ones(width)
        } else {
            State::zeros(width)
        }
    }

    /// Low `width` bits of `bits` become the assignment (bit 0 is variable 1).
    ///
    /// # Panics
    ///
    /// If `width > 64`.
    pub fn from_u64(bits: u64, width: usize) -> Self {
        assert!(width <= WORD, "packed width {width} exceeds 64");
        let mut s = State::zeros(width);
        if width > 0 {
            s.words[0] = bits;
            s.clear_tail();
        }
        s
    }

    /// Inverse of [`State::from_u64`]; `None` when wider than 64 variables.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn from_bools(values: &[bool]) -> Self {
        let mut s = State::zeros(values.len());
        for (i, &b) in values.iter().enumerate() {
            if b {
                s.words[i / WORD] |= 1 << (i % WORD);
            }
        }
        s
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    /// Value of the 1-based variable `var`.
    #[inline]
    pub fn get(&self, var: u32) -> bool {
        let i = var as usize - 1;
        debug_assert!(i < self.width);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, var: u32, value: bool) {
        let i = var as usize - 1;
        debug_assert!(i < self.width);
        if value {
            self.words[i / WORD] |= 1 << (i % WORD);
        } else {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    #[inline]
    pub fn flip(&mut self, var: u32) {
        let i = var as usize - 1;
        debug_assert!(i < self.width);
        self.words[i / WORD] ^= 1 << (i % WORD);
    }

    pub fn flipped(&self, var: u32) -> State {
        let mut s = self.clone();
        s.flip(var);
        s
    }

    #[inline]
    pub fn satisfies(&self, lit: Literal) -> bool {
        self.get(lit.var()) == lit.is_positive()
    }

    /// The literal of `var` that is true in this state.
    pub fn literal(&self, var: u32) -> Literal {
        Literal::new(var, self.get(var))
    }

    /// The literal-set view: one true literal per variable, ascending.
    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        (1..=self.width as u32).map(move |v| self.literal(v))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of variables on which the two states differ.
    pub fn hamming_distance(&self, other: &State) -> Result<usize, CnfError> {
        self.check_width(other.width)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    /// All states one flip away, the `i`-th differing at variable `i + 1`.
    pub fn neighbors(&self) -> impl Iterator<Item = State> + '_ {
        (1..=self.width as u32).map(move |v| self.flipped(v))
    }

    /// Restriction of the assignment to `vars`.
    pub fn project<I>(&self, vars: I) -> Result<PartialValuation, CnfError>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut out = BTreeMap::new();
        for v in vars {
            if v == 0 || v as usize > self.width {
                return Err(CnfError::VariableOutOfRange {
                    var: u64::from(v),
                    num_vars: self.width,
                });
            }
            out.insert(v, self.get(v));
        }
        Ok(PartialValuation(out))
    }

    pub(crate) fn check_width(&self, expected: usize) -> Result<(), CnfError> {
        if self.width == expected {
            Ok(())
        } else {
            Err(CnfError::WidthMismatch {
                expected,
                found: self.width,
            })
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.width % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (1..=self.width as u32)
            .map(|v| if self.get(v) { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "State({self})")
    }
}

impl FromStr for State {
    type Err = CnfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(CnfError::BadStateChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(State::from_bools(&values))
    }
}

impl Serialize for State {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for State {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Assignments to a subset of the variables, keyed by variable index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialValuation(pub BTreeMap<u32, bool>);

impl PartialValuation {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: u32) -> Option<bool> {
        self.0.get(&var).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> State {
        s.parse().unwrap()
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(st("101").hamming_distance(&st("101")).unwrap(), 0);
        assert_eq!(st("101").hamming_distance(&st("001")).unwrap(), 1);
        assert_eq!(st("1010").hamming_distance(&st("0101")).unwrap(), 4);
        assert!(st("10").hamming_distance(&st("101")).is_err());
    }

    #[test]
    fn neighbors_flip_in_variable_order() {
        let n: Vec<String> = st("00").neighbors().map(|s| s.to_string()).collect();
        assert_eq!(n, vec!["10", "01"]);
    }

    #[test]
    fn project_examples() {
        let p = st("101").project([1, 3]).unwrap();
        assert_eq!(p.get(1), Some(true));
        assert_eq!(p.get(3), Some(true));
        assert_eq!(p.len(), 2);
        assert!(st("101").project([]).unwrap().is_empty());
        assert_eq!(st("10").project([2]).unwrap().get(2), Some(false));
        assert!(st("10").project([3]).is_err());
    }

    #[test]
    fn wide_states_cross_word_boundaries() {
        let mut s = State::zeros(130);
        s.flip(64);
        s.flip(65);
        s.flip(130);
        assert_eq!(s.count_ones(), 3);
        assert!(s.get(65) && !s.get(66));
        assert_eq!(s.to_string().parse::<State>().unwrap(), s);
        assert_eq!(State::ones(130).count_ones(), 130);
    }

    #[test]
    fn packed_round_trip() {
        let s = State::from_u64(0b101, 3);
        assert_eq!(s.to_string(), "101");
        assert_eq!(s.to_u64(), Some(0b101));
        assert_eq!(State::from_u64(u64::MAX, 3).to_string(), "111");
    }
}
