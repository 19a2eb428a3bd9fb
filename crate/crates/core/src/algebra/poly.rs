use std::collections::BTreeMap;

use crate::arith::{Field, Scalar};

use super::word::{GeneratorId, Word};

/// Finitely supported map from words to field elements. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NcPoly<F> {
    terms: BTreeMap<Word, F>,
}

impl<F: Field> Default for NcPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> NcPoly<F> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, F::one())
    }

    pub fn generator(g: GeneratorId) -> Self {
        Self::word(Word::letter(g))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, F)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    /// Adds `c·w`, dropping the entry if it cancels.
    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a.clone() * c);
        }
    }

    pub fn pop_first(&mut self) -> Option<(Word, F)> {
        self.terms.pop_first()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &F::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-F::one());
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    /// Concatenation product, without normalization.
    pub fn concat_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.clone() * b);
            }
        }
        out
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(Word::is_ordered)
    }

    pub fn map_coeffs<G: Field>(&self, mut f: impl FnMut(&F) -> G) -> NcPoly<G> {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn try_map_coeffs<G: Field, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<NcPoly<G>, E> {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn to_scalar_terms(&self) -> Vec<(Word, Scalar)> {
        self.terms
            .iter()
            .map(|(w, c)| (w.clone(), c.to_scalar()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, BigRational};

    #[test]
    fn cancelling_terms_are_dropped() {
        let w = Word::from_indices(&[0, 1]);
        let mut p: NcPoly<BigRational> = NcPoly::term(w.clone(), rat(1, 2));
        p.add_term(w, rat(-1, 2));
        assert!(p.is_zero());
    }

    #[test]
    fn concat_mul_is_bilinear_on_words() {
        let a: NcPoly<BigRational> = NcPoly::generator(GeneratorId(0));
        let b = NcPoly::generator(GeneratorId(1));
        let ab = a.add(&b).concat_mul(&a.sub(&b));
        assert_eq!(ab.coefficient(&Word::from_indices(&[1, 0])), rat(1, 1));
        assert_eq!(ab.coefficient(&Word::from_indices(&[0, 1])), rat(-1, 1));
        assert_eq!(ab.len(), 4);
    }
}
