use serde::{Deserialize, Serialize};

use super::IslandError;

/// A total order on variables `1..=n`, stored both ways round.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct VariableOrdering {
    /// Variables from least to greatest.
    sequence: Vec<u32>,
    /// `rank[v - 1]` is the position of `v` in `sequence`.
    rank: Vec<usize>,
}

impl VariableOrdering {
    /// `1 < 2 < ... < n`.
    pub fn natural(num_vars: usize) -> Self {
        VariableOrdering {
            sequence: (1..=num_vars as u32).collect(),
            rank: (0..num_vars).collect(),
        }
    }

    /// Builds an ordering from variables listed least first. Must be a
    /// permutation of `1..=n`.
    pub fn from_sequence(sequence: Vec<u32>) -> Result<Self, IslandError> {
        let n = sequence.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &v) in sequence.iter().enumerate() {
            let slot = (v as usize)
                .checked_sub(1)
                .filter(|&i| i < n)
                .ok_or(IslandError::NotAPermutation(v))?;
            if rank[slot] != usize::MAX {
                return Err(IslandError::NotAPermutation(v));
            }
            rank[slot] = pos;
        }
        Ok(VariableOrdering { sequence, rank })
    }

    /// Places `prefix` first, in the given order, then every other variable in
    /// `1..=num_vars` ascending.
    pub fn with_prefix(prefix: &[u32], num_vars: usize) -> Result<Self, IslandError> {
        let mut seen = vec![false; num_vars];
        let mut sequence = Vec::with_capacity(num_vars);
        for &v in prefix {
            let slot = (v as usize)
                .checked_sub(1)
                .filter(|&i| i < num_vars)
                .ok_or(IslandError::NotAPermutation(v))?;
            if std::mem::replace(&mut seen[slot], true) {
                return Err(IslandError::NotAPermutation(v));
            }
            sequence.push(v);
        }
        sequence.extend((1..=num_vars as u32).filter(|&v| !seen[v as usize - 1]));
        VariableOrdering::from_sequence(sequence)
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// Position of `var` (0 = least), or `None` if unranked.
    #[inline]
    pub fn rank(&self, var: u32) -> Option<usize> {
        self.rank.get((var as usize).checked_sub(1)?).copied()
    }

    pub fn sequence(&self) -> &[u32] {
        &self.sequence
    }

    pub fn less(&self, a: u32, b: u32) -> bool {
        self.rank(a) < self.rank(b)
    }
}

impl TryFrom<Vec<u32>> for VariableOrdering {
    type Error = IslandError;

    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        VariableOrdering::from_sequence(v)
    }
}

impl From<VariableOrdering> for Vec<u32> {
    fn from(o: VariableOrdering) -> Self {
        o.sequence
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_follow_sequence() {
        let o = VariableOrdering::from_sequence(vec![3, 1, 2]).unwrap();
        assert_eq!(o.rank(3), Some(0));
        assert_eq!(o.rank(2), Some(2));
        assert_eq!(o.rank(4), None);
        assert_eq!(o.rank(0), None);
        assert!(o.less(3, 1));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(VariableOrdering::from_sequence(vec![1, 1]).is_err());
        assert!(VariableOrdering::from_sequence(vec![1, 3]).is_err());
        assert!(VariableOrdering::from_sequence(vec![0]).is_err());
    }

    #[test]
    fn prefix_then_ascending() {
        let o = VariableOrdering::with_prefix(&[4, 2], 5).unwrap();
        assert_eq!(o.sequence(), &[4, 2, 1, 3, 5]);
        assert!(VariableOrdering::with_prefix(&[2, 2], 3).is_err());
    }
}
