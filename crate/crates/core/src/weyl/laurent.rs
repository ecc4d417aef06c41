use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{int, Rational};
use crate::upoly::UPoly;

/// Finite sum Σ c_k λ^k with k ∈ ℤ. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    pub fn lambda() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, &c);
        }
        p
    }

    pub fn from_upoly(p: &UPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (k as i64, c.clone())),
        )
    }

    pub(crate) fn add_term(&mut self, k: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Ascending (exponent, coefficient) pairs.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Lowest exponent present.
    pub fn order(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent present.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_polynomial(&self) -> bool {
        self.order().is_none_or(|o| o >= 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    /// Multiply by λ^s.
    pub fn shift(&self, s: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, a)| (k + s, a.clone())).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| **k != 0)
                .map(|(k, a)| (k - 1, a * int(*k))),
        )
    }

    /// λ ↦ λ⁻¹.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, a)| (-k, a.clone())).collect(),
        }
    }

    /// The ordinary polynomial λ^{-order}·p. Zero maps to zero.
    pub fn stripped(&self) -> UPoly {
        let o = self.order().unwrap_or(0);
        let Some(top) = self.degree() else {
            return UPoly::zero();
        };
        UPoly::from_coeffs((o..=top).map(|k| self.coeff(k)).collect())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn cancellation_leaves_no_zero_entries() {
        let a = LaurentPoly::from_terms([(1, int(2)), (-1, rat(1, 2))]);
        let b = LaurentPoly::from_terms([(1, int(2))]);
        let d = &a - &b;
        assert_eq!(d, LaurentPoly::monomial(rat(1, 2), -1));
        assert_eq!(d.order(), Some(-1));
        assert!((&d - &d).is_zero());
    }

    #[test]
    fn derivative_of_negative_power() {
        let a = LaurentPoly::monomial(int(3), -2);
        assert_eq!(a.derivative(), LaurentPoly::monomial(int(-6), -3));
        assert!(LaurentPoly::one().derivative().is_zero());
    }

    #[test]
    fn stripped_drops_power_of_lambda() {
        let a = LaurentPoly::from_terms([(2, int(1)), (3, int(-1))]);
        assert_eq!(a.stripped(), UPoly::from_i64(&[1, -1]));
    }
}
