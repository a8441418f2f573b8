//! Bivariate Laurent polynomials in (L, U).
//!
//! U stands for `L^{-d}` before the change of variables and for the series
//! variable T after it; its exponent is kept nonnegative in numerators.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::{JsonInt, LaurentPoly};

/// Exponent pair: power of L, power of U.
pub type Exp = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<Exp, BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(l: i64, u: i64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((l, u), coeff);
        }
        Self { terms }
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            out.add_term((e, 0), c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exp, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_u(&self) -> Option<i64> {
        self.terms.keys().map(|&(_, u)| u).min()
    }

    pub fn max_u(&self) -> Option<i64> {
        self.terms.keys().map(|&(_, u)| u).max()
    }

    pub(crate) fn add_term(&mut self, exp: Exp, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((l1, u1), c1) in self.terms() {
            for ((l2, u2), c2) in other.terms() {
                out.add_term((l1 + l2, u1 + u2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, l: i64, u: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(l0, u0), c)| ((l0 + l, u0 + u), c.clone()))
                .collect(),
        }
    }

    /// Replaces `U` by `L^shift * U`: the monomial `L^a U^b` becomes
    /// `L^{a + shift b} U^b`.
    pub fn reindex_u(&self, shift: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(l, u), c)| ((l + shift * u, u), c.clone()))
                .collect(),
        }
    }

    /// The coefficient of `U^u` as a Laurent polynomial in L.
    pub fn u_coeff(&self, u: i64) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, u0), _)| u0 == u)
                .map(|(&(l, _), c)| (l, c.clone())),
        )
    }

    /// All U-coefficients from exponent 0 through `order`.
    pub fn u_coeffs(&self, order: usize) -> Vec<LaurentPoly> {
        (0..=order as i64).map(|u| self.u_coeff(u)).collect()
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i64, i64, JsonInt)> = self
            .terms()
            .map(|((l, u), c)| (l, u, JsonInt::from(c)))
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<(i64, i64, JsonInt)>::deserialize(d)?;
        let mut out = BiPoly::zero();
        for (l, u, c) in v {
            out.add_term((l, u), BigInt::try_from(c).map_err(D::Error::custom)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reindex_examples() {
        // U with shift 3 becomes L^3 U.
        let p = BiPoly::monomial(0, 1, 1);
        assert_eq!(p.reindex_u(3), BiPoly::monomial(3, 1, 1));
        // Constants are unchanged.
        assert_eq!(BiPoly::one().reindex_u(5), BiPoly::one());
    }

    #[test]
    fn u_coeff_slicing() {
        let p = BiPoly::monomial(2, 0, 3).add(&BiPoly::monomial(-1, 2, 5));
        assert_eq!(p.u_coeff(0), LaurentPoly::monomial(2, 3));
        assert_eq!(p.u_coeff(1), LaurentPoly::zero());
        assert_eq!(p.u_coeff(2), LaurentPoly::monomial(-1, 5));
    }
}
