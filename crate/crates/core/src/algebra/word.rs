use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

/// Position of a generator in its presentation's total order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct GeneratorId(pub u8);

impl GeneratorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite sequence of generators; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<GeneratorId>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(letters: Vec<GeneratorId>) -> Self {
        Self(letters)
    }

    pub fn from_indices(ix: &[u8]) -> Self {
        Self(ix.iter().map(|&i| GeneratorId(i)).collect())
    }

    pub fn letter(g: GeneratorId) -> Self {
        Self(vec![g])
    }

    pub fn power(g: GeneratorId, k: usize) -> Self {
        Self(vec![g; k])
    }

    pub fn letters(&self) -> &[GeneratorId] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<GeneratorId> {
        self.0
    }

    /// Ordered monomial: letters are non-decreasing.
    pub fn is_ordered(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Position `i` of the first descent `w[i] > w[i+1]`.
    pub fn first_descent(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[0] > w[1])
    }

    pub fn last_descent(&self) -> Option<usize> {
        self.0.windows(2).rposition(|w| w[0] > w[1])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Exponent vector over `n` generators.
    pub fn exponents(&self, n: usize) -> Vec<u32> {
        let mut e = vec![0u32; n];
        for g in &self.0 {
            e[g.index()] += 1;
        }
        e
    }

    /// Ordered monomial with the given exponents.
    pub fn from_exponents(e: &[u32]) -> Word {
        let mut v = Vec::new();
        for (i, &k) in e.iter().enumerate() {
            v.extend(std::iter::repeat_n(GeneratorId(i as u8), k as usize));
        }
        Word(v)
    }
}

impl Deref for Word {
    type Target = [GeneratorId];
    fn deref(&self) -> &[GeneratorId] {
        &self.0
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0.iter().map(|g| g.0).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descents() {
        let w = Word::from_indices(&[0, 2, 1, 1, 0]);
        assert_eq!(w.first_descent(), Some(1));
        assert_eq!(w.last_descent(), Some(3));
        assert!(!w.is_ordered());
        assert!(Word::from_indices(&[0, 0, 1]).is_ordered());
        assert!(Word::empty().is_ordered());
    }

    #[test]
    fn exponent_round_trip() {
        let w = Word::from_indices(&[0, 0, 2]);
        assert_eq!(Word::from_exponents(&w.exponents(3)), w);
    }
}
