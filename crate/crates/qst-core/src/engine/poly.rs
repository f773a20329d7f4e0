//! Linear combinations of words with exact scalar coefficients.

use super::word::Word;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Element of the free module on words. Multiplication needs a presentation
/// (invertible symbols carry commutation factors), so it lives on
/// [`Algebra`](super::pres::Algebra), not here.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        Self::term(Word::one(), Scalar::one())
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut p = NCPoly::default();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Apply a scalar map to every coefficient (conjugation, specialization).
    pub fn map_scalars<F: Fn(&Scalar) -> Scalar>(&self, f: F) -> Self {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Largest word in the order, with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }
}

impl FromIterator<(Word, Scalar)> for NCPoly {
    fn from_iter<T: IntoIterator<Item = (Word, Scalar)>>(iter: T) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_cancel() {
        let w = Word::from_regs([0, 1]);
        let mut p = NCPoly::term(w.clone(), Scalar::q_pow(1));
        p.add_term(w.clone(), -&Scalar::q_pow(1));
        assert!(p.is_zero());
        p.add_term(w.clone(), Scalar::one());
        p.add_term(Word::one(), Scalar::int(2));
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.leading().unwrap().0, &w);
        assert_eq!(p.coeff(&Word::one()), Scalar::int(2));
    }
}
