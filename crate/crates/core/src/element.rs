//! Finitely supported linear combinations of basis elements.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Index of a basis element. Finite rings use `0..rank`; rule-based rings
/// assign their own integer codes.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct BasisId(pub i64);

impl BasisId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for BasisId {
    fn from(v: usize) -> Self {
        BasisId(v as i64)
    }
}

/// A sparse element in canonical form: no stored zero coefficients,
/// support ordered by basis index.
#[derive(Clone, PartialEq)]
pub struct Element<S = BigInt> {
    terms: BTreeMap<BasisId, S>,
}

impl<S: Scalar> Default for Element<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Element<S> {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn basis(id: BasisId) -> Self {
        Self::term(id, S::one())
    }

    pub fn term(id: BasisId, c: S) -> Self {
        let mut e = Self::zero();
        e.add_term(id, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisId, S)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (id, c) in terms {
            e.add_term(id, c);
        }
        e
    }

    /// Adds `c * x_id`, keeping the canonical form.
    pub fn add_term(&mut self, id: BasisId, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&id) {
            Some(v) => {
                let sum = v.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&id);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(id, c);
            }
        }
    }

    pub fn coeff(&self, id: BasisId) -> S {
        self.terms.get(&id).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (BasisId, &S)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = BasisId> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.iter().map(|(k, v)| (k, v.clone() * c.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_term(k, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_term(k, -v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Element { terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect() }
    }

    /// Keeps only the terms whose index satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(BasisId) -> bool) -> Self {
        Element { terms: self.terms.iter().filter(|(k, _)| keep(**k)).map(|(k, v)| (*k, v.clone())).collect() }
    }

    /// Coefficient-wise change of scalars.
    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> Element<T> {
        Element::from_terms(self.iter().map(|(k, v)| (k, f(v))))
    }
}

impl Element<BigInt> {
    /// Every coefficient is non-negative.
    pub fn is_non_negative(&self) -> bool {
        self.terms.values().all(|c| c.sign() != num_bigint::Sign::Minus)
    }

    pub fn from_ints<I: IntoIterator<Item = (usize, i64)>>(terms: I) -> Self {
        Self::from_terms(terms.into_iter().map(|(k, c)| (BasisId(k as i64), BigInt::from(c))))
    }

    pub fn to_scalars<T: Scalar>(&self) -> Element<T> {
        self.map(T::from_bigint)
    }
}

impl<S: Scalar> fmt::Debug for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, v)| format!("{v:?}*x{}", k.0)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `[x : x_i]`, the coefficient of a basis element.
pub fn multiplicity<S: Scalar>(x: &Element<S>, id: BasisId) -> S {
    x.coeff(id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_drops_zeros() {
        let mut e: Element = Element::from_ints([(1, 2), (3, 1)]);
        e.add_term(BasisId(1), BigInt::from(-2));
        assert_eq!(e, Element::from_ints([(3, 1)]));
        assert_eq!(e.len(), 1);
    }

    #[test]
    fn arithmetic() {
        let a: Element = Element::from_ints([(0, 1), (2, 3)]);
        let b: Element = Element::from_ints([(2, -3), (4, 5)]);
        assert_eq!(a.add(&b), Element::from_ints([(0, 1), (4, 5)]));
        assert_eq!(a.sub(&a), Element::zero());
        assert_eq!(a.scale(&BigInt::from(2)), Element::from_ints([(0, 2), (2, 6)]));
        assert!(a.is_non_negative());
        assert!(!b.is_non_negative());
    }
}
