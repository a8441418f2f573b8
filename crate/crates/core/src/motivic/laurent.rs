//! Laurent polynomials in the class L of the affine line.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Integer-or-string JSON encoding for arbitrary-precision coefficients.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(v: &BigInt) -> Self {
        match i64::try_from(v) {
            Ok(n) => JsonInt::Small(n),
            Err(_) => JsonInt::Big(v.to_string()),
        }
    }
}

impl TryFrom<JsonInt> for BigInt {
    type Error = String;

    fn try_from(v: JsonInt) -> Result<Self, String> {
        match v {
            JsonInt::Small(n) => Ok(BigInt::from(n)),
            JsonInt::Big(s) => s.parse().map_err(|e| format!("bad integer: {e}")),
        }
    }
}

/// A Laurent polynomial in L with arbitrary-precision integer coefficients.
///
/// Stored as exponent -> coefficient with no zero coefficients; the map
/// ordering fixes the display and serialization order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// The class of projective n-space: `1 + L + ... + L^n`.
    pub fn projective(n: i64) -> Self {
        assert!(n >= 0);
        let mut terms = BTreeMap::new();
        for e in 0..=n {
            terms.insert(e, BigInt::one());
        }
        Self { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub(crate) fn add_term(&mut self, exp: i64, coeff: BigInt) {
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
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn shift(&self, by: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (e + by, c.clone())).collect() }
    }

    /// True when all exponents are nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().map_or(true, |e| e >= 0)
    }

    /// Exact quotient by `other`, or `None` when the division does not come
    /// out even. Requires `other` to have a unit leading coefficient.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = other.max_exp()?;
        let lead_coeff = other.terms.get(&lead).unwrap();
        if !lead_coeff.abs().is_one() {
            return None;
        }
        // An exact Laurent quotient has lowest exponent min(self) - min(other);
        // long division needing anything lower means the division fails.
        let q_min = self.min_exp().unwrap() - other.min_exp().unwrap();
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some(top) = rem.max_exp() {
            let shift = top - lead;
            if shift < q_min {
                return None;
            }
            let c = rem.coeff(top) / lead_coeff;
            quo.add_term(shift, c.clone());
            for (e, oc) in other.terms() {
                rem.add_term(e + shift, -(oc * &c));
            }
        }
        Some(quo)
    }

    /// Exact evaluation at a rational value of L.
    pub fn eval(&self, at: &BigRational) -> Result<BigRational, Error> {
        if at.is_zero() && self.min_exp().map_or(false, |e| e < 0) {
            return Err(Error::LimitAssertion(
                "evaluation at 0 with negative exponents".into(),
            ));
        }
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            let power = if e >= 0 {
                num_traits::pow::pow(at.clone(), e as usize)
            } else {
                num_traits::pow::pow(at.clone().recip(), (-e) as usize)
            };
            acc += BigRational::from(c.clone()) * power;
        }
        Ok(acc)
    }
}

/// Exact evaluation of a Laurent polynomial at a rational value of L.
pub fn eval_l(p: &LaurentPoly, at: &BigRational) -> Result<BigRational, Error> {
    p.eval(at)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "L")?,
                (1, false) => write!(f, "{a}*L")?,
                (_, true) => write!(f, "L^{e}")?,
                (_, false) => write!(f, "{a}*L^{e}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    e: i64,
    c: JsonInt,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> =
            self.terms().map(|(e, c)| TermRepr { e, c: JsonInt::from(c) }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<TermRepr>::deserialize(d)?;
        let mut out = LaurentPoly::zero();
        for t in v {
            out.add_term(t.e, BigInt::try_from(t.c).map_err(D::Error::custom)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn eval_examples() {
        // L^2 - 1 at 3 is 8.
        let p = LaurentPoly::monomial(2, 1).sub(&LaurentPoly::one());
        assert_eq!(p.eval(&rat(3)).unwrap(), rat(8));
        // L^{t+2} with t = 1 at 3 is 27.
        let p = LaurentPoly::monomial(3, 1);
        assert_eq!(p.eval(&rat(3)).unwrap(), rat(27));
        // The threefold image-class polynomial evaluates to 1 at L = 1.
        let p = LaurentPoly::from_terms(
            [(9, 1), (6, -1), (5, 3), (4, -6), (3, 10), (2, -9), (1, 3)]
                .map(|(e, c)| (e, BigInt::from(c))),
        );
        assert_eq!(p.eval(&rat(1)).unwrap(), rat(1));
    }

    #[test]
    fn exact_division() {
        // (L^2 - 1) / (L - 1) = L + 1.
        let num = LaurentPoly::monomial(2, 1).sub(&LaurentPoly::one());
        let den = LaurentPoly::monomial(1, 1).sub(&LaurentPoly::one());
        assert_eq!(num.exact_div(&den), Some(LaurentPoly::projective(1)));
        // (L + 2) / (L - 1) does not divide.
        let num = LaurentPoly::monomial(1, 1).add(&LaurentPoly::monomial(0, 2));
        assert_eq!(num.exact_div(&den), None);
    }

    #[test]
    fn serde_round_trip() {
        let p = LaurentPoly::from_terms(
            [(-3, 7), (0, -2), (11, 1)].map(|(e, c)| (e, BigInt::from(c))),
        );
        let json = serde_json::to_string(&p).unwrap();
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(p, back);
        assert_eq!(json, serde_json::to_string(&back).unwrap());
    }
}
